#pragma once

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctr/bits/plain_bitvector.hpp"
#include "ctr/bits/rrr_bitvector.hpp"
#include "ctr/bits/sparse_bitvector.hpp"

namespace ctr::bits {

template <class B>
concept rank_select_bitvector = requires(const B& b, std::uint64_t i, io::binary_writer& w, io::binary_reader& r) {
    B(std::vector<bool>{});
    { b.size() } -> std::convertible_to<std::uint64_t>;
    { b.ones() } -> std::convertible_to<std::uint64_t>;
    { b.access(i) } -> std::same_as<bool>;
    { b.get(i) } -> std::same_as<bool>;
    { b.rank1(i) } -> std::convertible_to<std::uint64_t>;
    { b.rank0(i) } -> std::convertible_to<std::uint64_t>;
    { b.rank1_raw(i) } -> std::convertible_to<std::uint64_t>;
    { b.select1(i) } -> std::convertible_to<std::uint64_t>;
    { b.select0(i) } -> std::convertible_to<std::uint64_t>;
    { b.size_in_bits() } -> std::convertible_to<std::uint64_t>;
    b.save(w);
    { B::load(r) } -> std::same_as<B>;
};

static_assert(rank_select_bitvector<plain_bitvector>);
static_assert(rank_select_bitvector<rrr32_bitvector>);
static_assert(rank_select_bitvector<rrr64_bitvector>);
static_assert(rank_select_bitvector<rrr128_bitvector>);
static_assert(rank_select_bitvector<sparse_bitvector>);

/// Bitvector choices offered for the temporal structures.
enum class flavor : std::uint8_t { plain = 0, rrr32 = 1, rrr64 = 2, rrr128 = 3 };

inline constexpr flavor all_flavors[] = {flavor::plain, flavor::rrr32, flavor::rrr64, flavor::rrr128};

constexpr std::string_view to_string(flavor f) noexcept {
    switch (f) {
        case flavor::plain: return "plain";
        case flavor::rrr32: return "rrr32";
        case flavor::rrr64: return "rrr64";
        case flavor::rrr128: return "rrr128";
    }
    return "?";
}

inline std::optional<flavor> parse_flavor(std::string_view s) {
    for (auto f : all_flavors)
        if (to_string(f) == s) return f;
    return std::nullopt;
}

}  // namespace ctr::bits
