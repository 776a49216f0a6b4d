#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "ctr/bits/plain_bitvector.hpp"

namespace ctr::bits {

/// Elias-Fano encoded bit sequence for sparse contents: the positions of the
/// ones are split into `low_width` explicit low bits and a unary-coded high
/// part. select1 is one select on the high part (hint-bounded) plus one array
/// read; rank1 walks the single bucket containing the position.
class sparse_bitvector {
public:
    static constexpr std::uint8_t tag = 4;

    sparse_bitvector() : sparse_bitvector(std::vector<std::uint64_t>{}, 0) {}

    explicit sparse_bitvector(const std::vector<bool>& bits) : sparse_bitvector(positions_of(bits), bits.size()) {}

    /// `ones` are 0-based strictly increasing positions below m.
    sparse_bitvector(const std::vector<std::uint64_t>& ones, std::uint64_t m) : m_(m), count_(ones.size()) {
        for (std::size_t k = 0; k < ones.size(); ++k) {
            if (ones[k] >= m || (k > 0 && ones[k] <= ones[k - 1]))
                fail(errc::position_out_of_range, "sparse bitvector positions must be increasing and below size");
        }
        low_width_ = (count_ == 0 || m_ <= count_) ? 0 : static_cast<unsigned>(std::bit_width(m_ / count_) - 1);
        low_ = int_vector(count_, low_width_);
        auto high_len = count_ + (m_ >> low_width_) + 1;
        std::vector<std::uint64_t> high((high_len + 63) / 64 + 1, 0);
        for (std::size_t k = 0; k < count_; ++k) {
            low_.set(k, ones[k] & low_mask(low_width_));
            auto hp = (ones[k] >> low_width_) + k;
            high[hp >> 6] |= std::uint64_t(1) << (hp & 63);
        }
        high_ = plain_bitvector(std::move(high), high_len, plain_bitvector::default_factor, true);
    }

    std::uint64_t size() const noexcept { return m_; }
    std::uint64_t ones() const noexcept { return count_; }
    std::uint64_t zeros() const noexcept { return m_ - count_; }

    std::uint64_t select1(std::uint64_t k) const {
        if (k < 1 || k > count_) fail(errc::rank_out_of_range, "select1 rank " + std::to_string(k));
        return select1_raw(k);
    }

    std::uint64_t select1_raw(std::uint64_t k) const noexcept {
        auto hp = high_.select1(k) - 1;
        auto high = hp - (k - 1);
        return ((high << low_width_) | low_[k - 1]) + 1;
    }

    std::uint64_t rank1(std::uint64_t i) const {
        if (i > m_) fail(errc::position_out_of_range, "rank position " + std::to_string(i));
        return rank1_raw(i);
    }

    /// Ones among the first i bits (positions < i, 0-based).
    std::uint64_t rank1_raw(std::uint64_t i) const noexcept {
        if (count_ == 0) return 0;
        auto h = i >> low_width_;
        auto low = i & low_mask(low_width_);
        std::uint64_t hp = 0;  // high-part index of the first slot of bucket h
        if (h > 0) {
            if (h > high_.zeros()) return count_;
            hp = high_.select0(h);
        }
        auto r = hp - h;  // ones in buckets < h
        while (hp < high_.size() && high_.get(hp)) {
            if ((low_width_ ? low_[r] : 0) >= low) break;
            ++r;
            ++hp;
        }
        return r;
    }

    std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }

    std::uint64_t select0(std::uint64_t k) const {
        if (k < 1 || k > zeros()) fail(errc::rank_out_of_range, "select0 rank " + std::to_string(k));
        // binary search over the ones: find largest j with select1(j) - j < k
        std::uint64_t lo = 0, hi = count_;
        while (lo < hi) {
            auto mid = lo + (hi - lo + 1) / 2;
            if (select1_raw(mid) - mid < k) lo = mid;
            else hi = mid - 1;
        }
        return k + lo;
    }

    bool access(std::uint64_t i) const {
        if (i < 1 || i > m_) fail(errc::position_out_of_range, "access position " + std::to_string(i));
        return rank1_raw(i) - rank1_raw(i - 1) == 1;
    }

    bool get(std::uint64_t i) const noexcept { return rank1_raw(i + 1) - rank1_raw(i) == 1; }

    std::uint64_t size_in_bits() const noexcept { return low_.size_in_bits() + high_.size_in_bits() + 64 * 3; }

    void save(io::binary_writer& w) const {
        w.u8(tag);
        w.u64(m_);
        w.u64(count_);
        w.u8(static_cast<std::uint8_t>(low_width_));
        low_.save(w);
        high_.save(w);
    }

    static sparse_bitvector load(io::binary_reader& r) {
        if (r.u8() != tag) fail(errc::corrupt_index, "bitvector flavor tag mismatch");
        sparse_bitvector v;
        v.m_ = r.u64();
        v.count_ = r.u64();
        v.low_width_ = r.u8();
        v.low_ = int_vector::load(r);
        v.high_ = plain_bitvector::load(r);
        if (v.low_.size() != v.count_ || v.high_.ones() != v.count_ || v.low_width_ > 63 ||
            v.high_.size() != v.count_ + (v.m_ >> v.low_width_) + 1)
            fail(errc::corrupt_index, "sparse bitvector header");
        return v;
    }

private:
    static std::vector<std::uint64_t> positions_of(const std::vector<bool>& bits) {
        std::vector<std::uint64_t> p;
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i]) p.push_back(i);
        return p;
    }

    std::uint64_t m_ = 0;
    std::uint64_t count_ = 0;
    unsigned low_width_ = 0;
    int_vector low_;
    plain_bitvector high_;
};

}  // namespace ctr::bits
