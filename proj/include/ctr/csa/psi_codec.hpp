#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ctr/bits/bit_ops.hpp"
#include "ctr/io/binary.hpp"

namespace ctr::csa {

/// Ψ stored as absolute samples every `sample` entries plus a bit stream of
/// gap tokens per block.
///
/// Token 1 opens a run of +1 gaps whose length follows as a delta code.
/// Any other token t encodes v = t - 2: even v is the gap v/2 + 2, odd v is
/// the gap -(v+1)/2. Tokens are Elias-delta coded. A gap of 0 cannot occur in
/// a permutation.
class compressed_psi {
public:
    compressed_psi() = default;

    /// `psi` holds 1-based values for positions 1..n (index 0 is position 1).
    compressed_psi(std::span<const std::uint64_t> psi, std::uint32_t sample) : n_(psi.size()), t_(sample) {
        if (sample == 0) fail(errc::configuration_unsupported, "psi sample interval must be positive");
        const auto blocks = (n_ + t_ - 1) / t_;
        std::vector<std::uint64_t> samples(blocks), offsets(blocks);
        bits::bit_writer w;
        for (std::uint64_t b = 0; b < blocks; ++b) {
            auto lo = b * t_, hi = std::min<std::uint64_t>(n_, lo + t_);
            samples[b] = psi[lo];
            offsets[b] = w.size();
            for (auto i = lo + 1; i < hi;) {
                auto gap = static_cast<std::int64_t>(psi[i]) - static_cast<std::int64_t>(psi[i - 1]);
                if (gap == 1) {
                    auto run = 1;
                    while (i + run < hi && psi[i + run] == psi[i + run - 1] + 1) ++run;
                    w.delta(1);
                    w.delta(static_cast<std::uint64_t>(run));
                    i += static_cast<std::uint64_t>(run);
                    continue;
                }
                if (gap == 0) fail(errc::precondition_violated, "psi is not a permutation");
                auto v = gap >= 2 ? 2 * static_cast<std::uint64_t>(gap - 2) : 2 * static_cast<std::uint64_t>(-gap) - 1;
                w.delta(v + 2);
                ++i;
            }
        }
        stream_bits_ = w.size();
        stream_ = w.release();
        samples_ = bits::int_vector::from(samples);
        offsets_ = bits::int_vector::from(offsets);
    }

    std::uint64_t size() const noexcept { return n_; }
    std::uint32_t sample_interval() const noexcept { return t_; }

    /// Sequential decoder starting at a block boundary.
    class cursor {
    public:
        cursor(const compressed_psi& p, std::uint64_t block)
            : p_(&p), reader_(p.stream_, p.offsets_[block]), pos_(block * p.t_ + 1), value_(p.samples_[block]),
              block_end_(std::min<std::uint64_t>(p.n_, (block + 1) * p.t_)) {}

        std::uint64_t position() const noexcept { return pos_; }
        std::uint64_t value() const noexcept { return value_; }

        /// Moves to the next position; returns false at the end of Ψ.
        bool next() {
            if (pos_ >= p_->n_) return false;
            if (pos_ == block_end_) {
                *this = cursor(*p_, pos_ / p_->t_);
                return true;
            }
            ++pos_;
            if (run_ > 0) {
                --run_;
                ++value_;
                return true;
            }
            auto tok = reader_.delta();
            if (tok == 1) {
                run_ = reader_.delta() - 1;
                ++value_;
            } else {
                auto v = tok - 2;
                if (v & 1) value_ -= (v + 1) / 2;
                else value_ += v / 2 + 2;
            }
            return true;
        }

    private:
        const compressed_psi* p_;
        bits::bit_reader reader_;
        std::uint64_t pos_, value_, block_end_;
        std::uint64_t run_ = 0;
    };

    cursor at_block(std::uint64_t block) const { return cursor(*this, block); }

    /// Ψ[i] for 1 <= i <= n; at most sample-1 decode steps.
    std::uint64_t operator[](std::uint64_t i) const {
        if (i < 1 || i > n_) fail(errc::position_out_of_range, "psi position " + std::to_string(i));
        cursor c(*this, (i - 1) / t_);
        while (c.position() < i) c.next();
        return c.value();
    }

    std::uint64_t sample(std::uint64_t block) const noexcept { return samples_[block]; }
    std::uint64_t blocks() const noexcept { return samples_.size(); }

    std::vector<std::uint64_t> decode_all() const {
        std::vector<std::uint64_t> out;
        out.reserve(n_);
        if (n_ == 0) return out;
        cursor c(*this, 0);
        out.push_back(c.value());
        while (c.next()) out.push_back(c.value());
        return out;
    }

    std::uint64_t payload_bits() const noexcept {
        return stream_bits_ + samples_.size_in_bits() + offsets_.size_in_bits() + 64 * 2;
    }

    void save(io::binary_writer& w) const {
        w.u64(n_);
        w.u32(t_);
        w.u64(stream_bits_);
        w.words(stream_);
        samples_.save(w);
        offsets_.save(w);
    }

    static compressed_psi load(io::binary_reader& r) {
        compressed_psi p;
        p.n_ = r.u64();
        p.t_ = r.u32();
        p.stream_bits_ = r.u64();
        p.stream_ = r.words();
        p.samples_ = bits::int_vector::load(r);
        p.offsets_ = bits::int_vector::load(r);
        if (p.t_ == 0 || p.samples_.size() != (p.n_ + p.t_ - 1) / p.t_ || p.offsets_.size() != p.samples_.size() ||
            p.stream_.size() < (p.stream_bits_ + 63) / 64 + 1)
            fail(errc::corrupt_index, "psi section");
        for (std::size_t b = 0; b < p.offsets_.size(); ++b)
            if (p.offsets_[b] > p.stream_bits_ || p.samples_[b] < 1 || p.samples_[b] > p.n_)
                fail(errc::corrupt_index, "psi sample");
        return p;
    }

private:
    std::uint64_t n_ = 0;
    std::uint32_t t_ = 32;
    std::uint64_t stream_bits_ = 0;
    std::vector<std::uint64_t> stream_{0};
    bits::int_vector samples_;
    bits::int_vector offsets_;
};

}  // namespace ctr::csa
