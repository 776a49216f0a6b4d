#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "ctr/bits/bit_ops.hpp"

namespace ctr::bits {

/// Uncompressed bit sequence with a sampled rank directory.
///
/// Positions are 1-based in the public interface: access(i) and select
/// return/accept positions in [1, size()], rank1(i) counts ones in the
/// first i bits. One absolute 64-bit count is kept every `factor` words,
/// so with the default factor of 32 the directory adds size()/32 bits.
/// Select binary-searches the directory; optional select hints (one entry
/// per 1024 ones and zeros) bound that search to a small window.
class plain_bitvector {
public:
    static constexpr std::uint8_t tag = 0;
    static constexpr unsigned default_factor = 32;
    static constexpr std::uint64_t hint_step = 1024;

    plain_bitvector() { build_directory(); }

    explicit plain_bitvector(const std::vector<bool>& bits, unsigned factor = default_factor, bool select_hints = false)
        : m_(bits.size()), factor_(factor), words_(bits.size() / 64 + 1, 0) {
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) words_[i >> 6] |= std::uint64_t(1) << (i & 63);
        build_directory();
        if (select_hints) build_hints();
    }

    /// Takes ownership of raw LSB-first words holding `m` bits.
    plain_bitvector(std::vector<std::uint64_t> words, std::uint64_t m, unsigned factor = default_factor,
                    bool select_hints = false)
        : m_(m), factor_(factor), words_(std::move(words)) {
        words_.resize(m / 64 + 1, 0);
        if (m & 63) words_[m >> 6] &= low_mask(static_cast<unsigned>(m & 63));
        else words_[m >> 6] = 0;
        build_directory();
        if (select_hints) build_hints();
    }

    std::uint64_t size() const noexcept { return m_; }
    std::uint64_t ones() const noexcept { return ones_; }
    std::uint64_t zeros() const noexcept { return m_ - ones_; }

    bool access(std::uint64_t i) const {
        if (i < 1 || i > m_) fail(errc::position_out_of_range, "access position " + std::to_string(i));
        return get(i - 1);
    }

    std::uint64_t rank1(std::uint64_t i) const {
        if (i > m_) fail(errc::position_out_of_range, "rank position " + std::to_string(i));
        return rank1_raw(i);
    }

    std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }

    std::uint64_t select1(std::uint64_t k) const {
        if (k < 1 || k > ones_) fail(errc::rank_out_of_range, "select1 rank " + std::to_string(k));
        return select_raw<true>(k);
    }

    std::uint64_t select0(std::uint64_t k) const {
        if (k < 1 || k > zeros()) fail(errc::rank_out_of_range, "select0 rank " + std::to_string(k));
        return select_raw<false>(k);
    }

    /// 0-based unchecked bit read.
    bool get(std::uint64_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }

    /// Unchecked rank over the first i bits.
    std::uint64_t rank1_raw(std::uint64_t i) const noexcept {
        auto w = i >> 6;
        auto s = w / factor_;
        std::uint64_t r = samples_[s];
        for (auto k = s * factor_; k < w; ++k) r += popcount(words_[k]);
        if (i & 63) r += popcount(words_[w] & low_mask(static_cast<unsigned>(i & 63)));
        return r;
    }

    std::uint64_t size_in_bits() const noexcept {
        return 64 * (words_.size() + samples_.size() + hints1_.size() + hints0_.size()) + 64 * 3;
    }

    unsigned factor() const noexcept { return factor_; }

    void save(io::binary_writer& w) const {
        w.u8(tag);
        w.u64(m_);
        w.u32(factor_);
        w.u8(hints1_.empty() && hints0_.empty() ? 0 : 1);
        w.words(words_);
    }

    static plain_bitvector load(io::binary_reader& r) {
        if (r.u8() != tag) fail(errc::corrupt_index, "bitvector flavor tag mismatch");
        auto m = r.u64();
        auto factor = r.u32();
        bool hints = r.u8() != 0;
        auto words = r.words();
        if (factor == 0 || words.size() != m / 64 + 1) fail(errc::corrupt_index, "plain bitvector header");
        return plain_bitvector(std::move(words), m, factor, hints);
    }

    friend bool operator==(const plain_bitvector& a, const plain_bitvector& b) {
        return a.m_ == b.m_ && a.words_ == b.words_;
    }

private:
    void build_directory() {
        if (factor_ == 0) factor_ = default_factor;
        auto nsamples = words_.size() / factor_ + 1;
        samples_.assign(nsamples + 1, 0);
        std::uint64_t r = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) {
            if (k % factor_ == 0) samples_[k / factor_] = r;
            r += popcount(words_[k]);
        }
        for (auto s = (words_.size() + factor_ - 1) / factor_; s < samples_.size(); ++s) samples_[s] = r;
        ones_ = r;
    }

    // hints[j] = directory block holding the (j*hint_step + 1)-th one (resp. zero)
    void build_hints() {
        std::vector<std::uint64_t> h1, h0;
        hints1_.clear();
        hints0_.clear();
        for (std::uint64_t k = 1; k <= ones_; k += hint_step) h1.push_back((select_raw<true>(k) - 1) / 64 / factor_);
        for (std::uint64_t k = 1; k <= zeros(); k += hint_step) h0.push_back((select_raw<false>(k) - 1) / 64 / factor_);
        hints1_ = std::move(h1);
        hints0_ = std::move(h0);
    }

    template <bool One>
    std::uint64_t ones_before_block(std::size_t s) const noexcept {
        if constexpr (One) return samples_[s];
        else return std::uint64_t(s) * factor_ * 64 - samples_[s];
    }

    template <bool One>
    std::uint64_t select_raw(std::uint64_t k) const noexcept {
        const auto& hints = One ? hints1_ : hints0_;
        std::size_t lo = 0, hi = samples_.size() - 1;  // find last block s with count_before(s) < k
        if (!hints.empty()) {
            auto j = (k - 1) / hint_step;
            lo = hints[j];
            if (j + 1 < hints.size()) hi = std::min<std::size_t>(hi, hints[j + 1] + 1);
        }
        while (hi - lo > 1) {
            auto mid = lo + (hi - lo) / 2;
            if (ones_before_block<One>(mid) < k) lo = mid;
            else hi = mid;
        }
        auto remaining = k - ones_before_block<One>(lo);
        for (auto w = lo * factor_;; ++w) {
            auto word = One ? words_[w] : ~words_[w];
            auto c = popcount(word);
            if (remaining <= c) return w * 64 + select_in_word(word, static_cast<unsigned>(remaining - 1)) + 1;
            remaining -= c;
        }
    }

    std::uint64_t m_ = 0;
    unsigned factor_ = default_factor;
    std::vector<std::uint64_t> words_{0};
    std::vector<std::uint64_t> samples_;
    std::vector<std::uint64_t> hints1_, hints0_;
    std::uint64_t ones_ = 0;
};

}  // namespace ctr::bits
