#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ctr/bits/bitvector.hpp"

namespace ctr::wavelet {

/// Balanced wavelet matrix over symbols in [0, sigma).
///
/// Level l stores bit (L-1-l) of every symbol, in the order induced by
/// stably moving zeros before ones at each previous level. Positions are
/// 1-based; count() is inclusive on both the position and symbol ranges.
template <bits::rank_select_bitvector B>
class wavelet_matrix {
public:
    static constexpr std::uint8_t structure_tag = 1;

    wavelet_matrix() = default;

    wavelet_matrix(std::span<const std::uint64_t> seq, std::uint64_t sigma) : n_(seq.size()), sigma_(sigma) {
        if (sigma == 0) fail(errc::empty_alphabet, "wavelet matrix over an empty alphabet");
        levels_ = sigma <= 1 ? 1u : static_cast<unsigned>(std::bit_width(sigma - 1));
        std::vector<std::uint64_t> cur(seq.begin(), seq.end()), next(n_);
        for (auto s : cur)
            if (s >= sigma) fail(errc::symbol_out_of_range, "symbol " + std::to_string(s) + " >= sigma");
        for (unsigned l = 0; l < levels_; ++l) {
            const unsigned shift = levels_ - 1 - l;
            std::vector<bool> bits(n_);
            std::uint64_t zeros = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                bits[i] = (cur[i] >> shift) & 1;
                zeros += !bits[i];
            }
            std::size_t zi = 0, oi = zeros;
            for (std::size_t i = 0; i < n_; ++i) (bits[i] ? next[oi++] : next[zi++]) = cur[i];
            level_bits_.emplace_back(bits);
            zeros_.push_back(zeros);
            cur.swap(next);
        }
    }

    std::uint64_t size() const noexcept { return n_; }
    std::uint64_t sigma() const noexcept { return sigma_; }
    unsigned levels() const noexcept { return levels_; }
    std::uint64_t zeros_at(unsigned l) const noexcept { return zeros_[l]; }
    const B& level(unsigned l) const noexcept { return level_bits_[l]; }

    std::uint64_t access(std::uint64_t i) const {
        if (i < 1 || i > n_) fail(errc::position_out_of_range, "access position " + std::to_string(i));
        std::uint64_t pos = i - 1, sym = 0;
        for (unsigned l = 0; l < levels_; ++l) {
            const auto& b = level_bits_[l];
            auto r1 = b.rank1_raw(pos);
            if (b.get(pos)) {
                sym = (sym << 1) | 1;
                pos = zeros_[l] + r1;
            } else {
                sym <<= 1;
                pos -= r1;
            }
        }
        return sym;
    }

    std::uint64_t rank(std::uint64_t c, std::uint64_t i) const {
        if (c >= sigma_) fail(errc::symbol_out_of_range, "symbol " + std::to_string(c));
        if (i > n_) fail(errc::position_out_of_range, "rank position " + std::to_string(i));
        auto [start, end] = bucket(c, 0, i);
        return end - start;
    }

    std::uint64_t select(std::uint64_t c, std::uint64_t k) const {
        if (c >= sigma_) fail(errc::symbol_out_of_range, "symbol " + std::to_string(c));
        auto [start, end] = bucket(c, 0, n_);
        if (k < 1 || k > end - start) fail(errc::rank_out_of_range, "select rank " + std::to_string(k));
        std::uint64_t p = start + k;  // 1-based in the final arrangement
        for (unsigned l = levels_; l-- > 0;) {
            const unsigned shift = levels_ - 1 - l;
            if ((c >> shift) & 1) p = level_bits_[l].select1(p - zeros_[l]);
            else p = level_bits_[l].select0(p);
        }
        return p;
    }

    /// Occurrences in S[i..j] of symbols in [lo, hi].
    std::uint64_t count(std::uint64_t i, std::uint64_t j, std::uint64_t lo, std::uint64_t hi) const {
        check_range(i, j, lo, hi);
        return count_less(i - 1, j, hi + 1) - count_less(i - 1, j, lo);
    }

    /// For S[a..b] non-decreasing: maximal subrange with values in [t1, t2],
    /// as (first, last); empty when first > last. Two count calls.
    std::pair<std::uint64_t, std::uint64_t> count_lr(std::uint64_t a, std::uint64_t b, std::uint64_t t1,
                                                     std::uint64_t t2) const {
        check_range(a, b, t1, t2);
        auto below = count_less(a - 1, b, t1);
        auto inside = count(a, b, t1, t2);
        return {a + below, a + below + inside - 1};
    }

    std::uint64_t payload_bits() const noexcept {
        std::uint64_t total = 64 * zeros_.size();
        for (const auto& b : level_bits_) total += b.size_in_bits();
        return total;
    }

    void save(io::binary_writer& w) const {
        w.u8(structure_tag);
        w.u64(n_);
        w.u64(sigma_);
        w.u32(levels_);
        w.vec(zeros_);
        for (const auto& b : level_bits_) b.save(w);
    }

    static wavelet_matrix load(io::binary_reader& r) {
        if (r.u8() != structure_tag) fail(errc::corrupt_index, "temporal structure tag mismatch");
        wavelet_matrix wm;
        wm.n_ = r.u64();
        wm.sigma_ = r.u64();
        wm.levels_ = r.u32();
        wm.zeros_ = r.vec<std::uint64_t>();
        if (wm.sigma_ == 0 || wm.levels_ > 64 || wm.zeros_.size() != wm.levels_ ||
            wm.levels_ != (wm.sigma_ <= 1 ? 1u : static_cast<unsigned>(std::bit_width(wm.sigma_ - 1))))
            fail(errc::corrupt_index, "wavelet matrix header");
        for (unsigned l = 0; l < wm.levels_; ++l) {
            wm.level_bits_.push_back(B::load(r));
            if (wm.level_bits_.back().size() != wm.n_ || wm.level_bits_.back().size() - wm.level_bits_.back().ones() != wm.zeros_[l])
                fail(errc::corrupt_index, "wavelet matrix level size");
        }
        return wm;
    }

private:
    void check_range(std::uint64_t i, std::uint64_t j, std::uint64_t lo, std::uint64_t hi) const {
        if (i < 1 || i > j || j > n_ || lo > hi || hi >= sigma_)
            fail(errc::range_invalid, "count range [" + std::to_string(i) + "," + std::to_string(j) + "] x [" +
                                          std::to_string(lo) + "," + std::to_string(hi) + "]");
    }

    // [start, end) of positions in the last arrangement that hold symbol c and
    // came from [a, b) at level 0.
    std::pair<std::uint64_t, std::uint64_t> bucket(std::uint64_t c, std::uint64_t a, std::uint64_t b) const noexcept {
        for (unsigned l = 0; l < levels_; ++l) {
            const auto& bv = level_bits_[l];
            auto ra = bv.rank1_raw(a), rb = bv.rank1_raw(b);
            if ((c >> (levels_ - 1 - l)) & 1) {
                a = zeros_[l] + ra;
                b = zeros_[l] + rb;
            } else {
                a -= ra;
                b -= rb;
            }
        }
        return {a, b};
    }

    // occurrences of symbols < x among 0-based positions [a, b)
    std::uint64_t count_less(std::uint64_t a, std::uint64_t b, std::uint64_t x) const noexcept {
        if (x >= (std::uint64_t(1) << levels_)) return b - a;
        std::uint64_t res = 0;
        for (unsigned l = 0; l < levels_ && a < b; ++l) {
            const auto& bv = level_bits_[l];
            auto ra = bv.rank1_raw(a), rb = bv.rank1_raw(b);
            if ((x >> (levels_ - 1 - l)) & 1) {
                res += (b - a) - (rb - ra);
                a = zeros_[l] + ra;
                b = zeros_[l] + rb;
            } else {
                a -= ra;
                b -= rb;
            }
        }
        return res;
    }

    std::uint64_t n_ = 0;
    std::uint64_t sigma_ = 1;
    unsigned levels_ = 1;
    std::vector<std::uint64_t> zeros_;
    std::vector<B> level_bits_;
};

}  // namespace ctr::wavelet
