#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>

#include "ctr/wavelet/hu_tucker_wavelet_tree.hpp"
#include "ctr/wavelet/wavelet_matrix.hpp"

namespace ctr::wavelet {

enum class time_structure : std::uint8_t { wm = 1, wtht = 2 };

constexpr std::string_view to_string(time_structure s) noexcept { return s == time_structure::wm ? "wm" : "wtht"; }

inline std::optional<time_structure> parse_time_structure(std::string_view s) {
    if (s == "wm") return time_structure::wm;
    if (s == "wtht") return time_structure::wtht;
    return std::nullopt;
}

/// Runtime choice among the wavelet structures and bitvector flavors.
class temporal_index {
public:
    using variant_type =
        std::variant<wavelet_matrix<bits::plain_bitvector>, wavelet_matrix<bits::rrr32_bitvector>,
                     wavelet_matrix<bits::rrr64_bitvector>, wavelet_matrix<bits::rrr128_bitvector>,
                     hu_tucker_wavelet_tree<bits::plain_bitvector>, hu_tucker_wavelet_tree<bits::rrr32_bitvector>,
                     hu_tucker_wavelet_tree<bits::rrr64_bitvector>, hu_tucker_wavelet_tree<bits::rrr128_bitvector>>;

    temporal_index() = default;

    temporal_index(std::span<const std::uint64_t> seq, std::uint64_t sigma, time_structure s, bits::flavor f)
        : structure_(s), flavor_(f) {
        dispatch(s, f, [&]<class W>() { v_.emplace<W>(seq, sigma); });
    }

    time_structure structure() const noexcept { return structure_; }
    bits::flavor flavor() const noexcept { return flavor_; }

    std::uint64_t size() const {
        return std::visit([](const auto& w) { return w.size(); }, v_);
    }
    std::uint64_t sigma() const {
        return std::visit([](const auto& w) { return w.sigma(); }, v_);
    }
    std::uint64_t access(std::uint64_t i) const {
        return std::visit([&](const auto& w) { return w.access(i); }, v_);
    }
    std::uint64_t rank(std::uint64_t c, std::uint64_t i) const {
        return std::visit([&](const auto& w) { return w.rank(c, i); }, v_);
    }
    std::uint64_t select(std::uint64_t c, std::uint64_t k) const {
        return std::visit([&](const auto& w) { return w.select(c, k); }, v_);
    }
    std::uint64_t count(std::uint64_t i, std::uint64_t j, std::uint64_t lo, std::uint64_t hi) const {
        return std::visit([&](const auto& w) { return w.count(i, j, lo, hi); }, v_);
    }
    std::pair<std::uint64_t, std::uint64_t> count_lr(std::uint64_t a, std::uint64_t b, std::uint64_t t1,
                                                     std::uint64_t t2) const {
        return std::visit([&](const auto& w) { return w.count_lr(a, b, t1, t2); }, v_);
    }
    std::uint64_t payload_bits() const {
        return std::visit([](const auto& w) { return w.payload_bits(); }, v_);
    }

    const variant_type& get() const noexcept { return v_; }

    void save(io::binary_writer& w) const {
        w.u8(static_cast<std::uint8_t>(structure_));
        w.u8(static_cast<std::uint8_t>(flavor_));
        std::visit([&](const auto& x) { x.save(w); }, v_);
    }

    static temporal_index load(io::binary_reader& r) {
        temporal_index t;
        auto s = r.u8(), f = r.u8();
        if ((s != 1 && s != 2) || f > 3) fail(errc::corrupt_index, "temporal section tags");
        t.structure_ = static_cast<time_structure>(s);
        t.flavor_ = static_cast<bits::flavor>(f);
        dispatch(t.structure_, t.flavor_, [&]<class W>() { t.v_.emplace<W>(W::load(r)); });
        return t;
    }

private:
    template <class F>
    static void dispatch(time_structure s, bits::flavor f, F&& fn) {
        auto pick = [&]<template <class> class W>() {
            switch (f) {
                case bits::flavor::plain: fn.template operator()<W<bits::plain_bitvector>>(); break;
                case bits::flavor::rrr32: fn.template operator()<W<bits::rrr32_bitvector>>(); break;
                case bits::flavor::rrr64: fn.template operator()<W<bits::rrr64_bitvector>>(); break;
                case bits::flavor::rrr128: fn.template operator()<W<bits::rrr128_bitvector>>(); break;
            }
        };
        if (s == time_structure::wm) pick.template operator()<wavelet_matrix>();
        else pick.template operator()<hu_tucker_wavelet_tree>();
    }

    time_structure structure_ = time_structure::wtht;
    bits::flavor flavor_ = bits::flavor::plain;
    variant_type v_;
};

}  // namespace ctr::wavelet
