#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ctr/bits/bit_ops.hpp"

namespace ctr::bits {

namespace detail {

/// Enumerative code tables for 15-bit blocks: a block is stored as its class
/// (popcount) plus the index of its bit pattern among all patterns of that class.
struct rrr15_tables {
    static constexpr unsigned block = 15;

    std::array<std::array<std::uint64_t, 16>, 16> binom{};
    std::array<unsigned, 16> offset_bits{};
    std::array<std::vector<std::uint16_t>, 16> patterns;  // by class, ascending
    std::vector<std::uint16_t> offset_of;                  // pattern -> index within class

    rrr15_tables() : offset_of(1u << block) {
        for (unsigned n = 0; n < 16; ++n) {
            binom[n][0] = 1;
            for (unsigned k = 1; k <= n; ++k) binom[n][k] = binom[n - 1][k - 1] + (k <= n - 1 ? binom[n - 1][k] : 0);
        }
        for (unsigned c = 0; c <= block; ++c) {
            auto count = binom[block][c];
            offset_bits[c] = count <= 1 ? 0 : width_of(count - 1);
        }
        for (std::uint32_t p = 0; p < (1u << block); ++p) {
            auto c = popcount(p);
            offset_of[p] = static_cast<std::uint16_t>(patterns[c].size());
            patterns[c].push_back(static_cast<std::uint16_t>(p));
        }
    }

    static const rrr15_tables& get() {
        static const rrr15_tables t;
        return t;
    }
};

}  // namespace detail

/// Compressed bit sequence in 15-bit blocks (class + offset), with one
/// absolute rank and stream-pointer sample every `Sample` blocks.
/// Same 1-based interface as plain_bitvector.
template <unsigned Sample>
class rrr_bitvector {
    static_assert(Sample >= 1);

public:
    static constexpr std::uint8_t tag = Sample == 32 ? 1 : Sample == 64 ? 2 : Sample == 128 ? 3 : 0x7f;
    static constexpr unsigned block = detail::rrr15_tables::block;
    static constexpr unsigned sample_rate = Sample;

    rrr_bitvector() : rrr_bitvector(std::vector<bool>{}) {}

    explicit rrr_bitvector(const std::vector<bool>& bits) : m_(bits.size()) {
        const auto& t = detail::rrr15_tables::get();
        auto nblocks = (m_ + block - 1) / block;
        classes_ = int_vector(nblocks, 4);
        std::vector<std::uint64_t> rank_s, ptr_s;
        bit_writer out;
        std::uint64_t r = 0;
        for (std::uint64_t b = 0; b < nblocks; ++b) {
            if (b % Sample == 0) {
                rank_s.push_back(r);
                ptr_s.push_back(out.size());
            }
            std::uint32_t pattern = 0;
            for (unsigned k = 0; k < block && b * block + k < m_; ++k)
                if (bits[b * block + k]) pattern |= 1u << k;
            auto c = popcount(pattern);
            classes_.set(b, c);
            out.put(t.offset_of[pattern], t.offset_bits[c]);
            r += c;
        }
        rank_s.push_back(r);
        ptr_s.push_back(out.size());
        ones_ = r;
        offsets_bits_ = out.size();
        offsets_ = out.release();
        rank_samples_ = int_vector::from(rank_s);
        ptr_samples_ = int_vector::from(ptr_s);
    }

    std::uint64_t size() const noexcept { return m_; }
    std::uint64_t ones() const noexcept { return ones_; }
    std::uint64_t zeros() const noexcept { return m_ - ones_; }

    bool access(std::uint64_t i) const {
        if (i < 1 || i > m_) fail(errc::position_out_of_range, "access position " + std::to_string(i));
        return get(i - 1);
    }

    bool get(std::uint64_t i) const noexcept {
        auto b = i / block;
        auto [r, ptr] = seek(b);
        (void)r;
        return (decode(b, ptr) >> (i % block)) & 1;
    }

    std::uint64_t rank1(std::uint64_t i) const {
        if (i > m_) fail(errc::position_out_of_range, "rank position " + std::to_string(i));
        return rank1_raw(i);
    }

    std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }

    std::uint64_t rank1_raw(std::uint64_t i) const noexcept {
        auto b = i / block;
        auto rem = static_cast<unsigned>(i % block);
        auto [r, ptr] = seek(b);
        if (rem) r += popcount(decode(b, ptr) & low_mask(rem));
        return r;
    }

    std::uint64_t select1(std::uint64_t k) const {
        if (k < 1 || k > ones_) fail(errc::rank_out_of_range, "select1 rank " + std::to_string(k));
        return select_raw<true>(k);
    }

    std::uint64_t select0(std::uint64_t k) const {
        if (k < 1 || k > zeros()) fail(errc::rank_out_of_range, "select0 rank " + std::to_string(k));
        return select_raw<false>(k);
    }

    std::uint64_t size_in_bits() const noexcept {
        return classes_.size_in_bits() + offsets_bits_ + rank_samples_.size_in_bits() + ptr_samples_.size_in_bits() + 64 * 3;
    }

    void save(io::binary_writer& w) const {
        w.u8(tag);
        w.u64(m_);
        w.u64(ones_);
        w.u64(offsets_bits_);
        classes_.save(w);
        w.words(offsets_);
        rank_samples_.save(w);
        ptr_samples_.save(w);
    }

    static rrr_bitvector load(io::binary_reader& r) {
        if (r.u8() != tag) fail(errc::corrupt_index, "bitvector flavor tag mismatch");
        rrr_bitvector v;
        v.m_ = r.u64();
        v.ones_ = r.u64();
        v.offsets_bits_ = r.u64();
        v.classes_ = int_vector::load(r);
        v.offsets_ = r.words();
        v.rank_samples_ = int_vector::load(r);
        v.ptr_samples_ = int_vector::load(r);
        auto nblocks = (v.m_ + block - 1) / block;
        if (v.classes_.size() != nblocks || v.offsets_.size() * 64 < v.offsets_bits_ + 64 ||
            v.rank_samples_.size() != nblocks / Sample + (nblocks % Sample ? 1 : 0) + 1 ||
            v.ptr_samples_.size() != v.rank_samples_.size() || v.ones_ > v.m_)
            fail(errc::corrupt_index, "rrr bitvector header");
        return v;
    }

private:
    // rank before block b and the offset-stream position of block b
    std::pair<std::uint64_t, std::uint64_t> seek(std::uint64_t b) const noexcept {
        const auto& t = detail::rrr15_tables::get();
        auto s = b / Sample;
        std::uint64_t r = rank_samples_[s];
        std::uint64_t ptr = ptr_samples_[s];
        for (auto k = s * Sample; k < b; ++k) {
            auto c = classes_[k];
            r += c;
            ptr += t.offset_bits[c];
        }
        return {r, ptr};
    }

    std::uint32_t decode(std::uint64_t b, std::uint64_t ptr) const noexcept {
        if (b >= classes_.size()) return 0;
        const auto& t = detail::rrr15_tables::get();
        auto c = classes_[b];
        auto off = read_bits(offsets_, ptr, t.offset_bits[c]);
        return t.patterns[c][off];
    }

    template <bool One>
    std::uint64_t count_before_sample(std::size_t s) const noexcept {
        if constexpr (One) return rank_samples_[s];
        else return std::uint64_t(s) * Sample * block - rank_samples_[s];
    }

    template <bool One>
    std::uint64_t select_raw(std::uint64_t k) const noexcept {
        const auto& t = detail::rrr15_tables::get();
        std::size_t lo = 0, hi = rank_samples_.size() - 1;
        while (hi - lo > 1) {
            auto mid = lo + (hi - lo) / 2;
            if (count_before_sample<One>(mid) < k) lo = mid;
            else hi = mid;
        }
        auto remaining = k - count_before_sample<One>(lo);
        std::uint64_t ptr = ptr_samples_[lo];
        for (std::uint64_t b = std::uint64_t(lo) * Sample;; ++b) {
            auto c = static_cast<unsigned>(classes_[b]);
            auto cnt = One ? c : block - c;
            if (remaining <= cnt) {
                auto off = read_bits(offsets_, ptr, t.offset_bits[c]);
                std::uint64_t pattern = t.patterns[c][off];
                if constexpr (!One) pattern = ~pattern & low_mask(block);
                return b * block + select_in_word(pattern, static_cast<unsigned>(remaining - 1)) + 1;
            }
            remaining -= cnt;
            ptr += t.offset_bits[c];
        }
    }

    std::uint64_t m_ = 0;
    std::uint64_t ones_ = 0;
    std::uint64_t offsets_bits_ = 0;
    int_vector classes_;
    std::vector<std::uint64_t> offsets_;
    int_vector rank_samples_;
    int_vector ptr_samples_;
};

using rrr32_bitvector = rrr_bitvector<32>;
using rrr64_bitvector = rrr_bitvector<64>;
using rrr128_bitvector = rrr_bitvector<128>;

}  // namespace ctr::bits
