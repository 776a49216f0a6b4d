#pragma once

#include <bit>
#include <cassert>
#include <cstdint>
#include <vector>

#include "ctr/error.hpp"
#include "ctr/io/binary.hpp"

namespace ctr::bits {

inline constexpr unsigned popcount(std::uint64_t w) noexcept { return static_cast<unsigned>(std::popcount(w)); }

/// Position (0..63) of the k-th set bit of w, k 0-based. Requires popcount(w) > k.
inline unsigned select_in_word(std::uint64_t w, unsigned k) noexcept {
    unsigned base = 0;
    for (;;) {
        auto byte = static_cast<unsigned>(w & 0xffu);
        auto c = popcount(byte);
        if (k < c) break;
        k -= c;
        w >>= 8;
        base += 8;
    }
    auto byte = static_cast<unsigned>(w & 0xffu);
    for (unsigned i = 0;; ++i) {
        if (byte & (1u << i)) {
            if (k == 0) return base + i;
            --k;
        }
    }
}

/// Number of bits needed to write v (at least 1).
inline constexpr unsigned width_of(std::uint64_t v) noexcept {
    return v == 0 ? 1u : static_cast<unsigned>(std::bit_width(v));
}

inline constexpr std::uint64_t low_mask(unsigned w) noexcept {
    return w >= 64 ? ~std::uint64_t(0) : ((std::uint64_t(1) << w) - 1);
}

/// Read `width` bits starting at bit offset `pos` (LSB-first layout).
inline std::uint64_t read_bits(const std::vector<std::uint64_t>& words, std::uint64_t pos, unsigned width) noexcept {
    if (width == 0) return 0;
    auto wi = pos >> 6;
    auto off = static_cast<unsigned>(pos & 63);
    std::uint64_t v = words[wi] >> off;
    if (off + width > 64) v |= words[wi + 1] << (64 - off);
    return v & low_mask(width);
}

inline void write_bits(std::vector<std::uint64_t>& words, std::uint64_t pos, unsigned width, std::uint64_t value) noexcept {
    if (width == 0) return;
    value &= low_mask(width);
    auto wi = pos >> 6;
    auto off = static_cast<unsigned>(pos & 63);
    words[wi] &= ~(low_mask(width) << off);
    words[wi] |= value << off;
    if (off + width > 64) {
        auto spill = off + width - 64;
        words[wi + 1] &= ~low_mask(spill);
        words[wi + 1] |= value >> (64 - off);
    }
}

/// Growable LSB-first bit stream used by the variable-length codecs.
class bit_writer {
public:
    void put(std::uint64_t value, unsigned width) {
        if (width == 0) return;
        while (((size_ + width + 63) >> 6) > words_.size()) words_.push_back(0);
        write_bits(words_, size_, width, value);
        size_ += width;
    }

    void put_bit(bool b) { put(b ? 1 : 0, 1); }

    /// Elias-gamma code of v >= 1.
    void gamma(std::uint64_t v) {
        assert(v >= 1);
        auto n = width_of(v) - 1;
        put(0, n);
        put_bit(true);
        put(v, n);  // low n bits, top bit implied
    }

    /// Elias-delta code of v >= 1.
    void delta(std::uint64_t v) {
        assert(v >= 1);
        auto n = width_of(v);
        gamma(n);
        put(v, n - 1);
    }

    std::uint64_t size() const noexcept { return size_; }
    /// Hands out the words plus one zero padding word so readers may look one word ahead.
    std::vector<std::uint64_t> release() {
        words_.push_back(0);
        return std::move(words_);
    }

private:
    std::vector<std::uint64_t> words_;
    std::uint64_t size_ = 0;
};

class bit_reader {
public:
    bit_reader(const std::vector<std::uint64_t>& words, std::uint64_t pos) noexcept : words_(&words), pos_(pos) {}

    std::uint64_t get(unsigned width) noexcept {
        auto v = read_bits(*words_, pos_, width);
        pos_ += width;
        return v;
    }

    bool get_bit() noexcept { return get(1) != 0; }

    std::uint64_t gamma() noexcept {
        unsigned n = 0;
        for (;;) {
            auto off = static_cast<unsigned>(pos_ & 63);
            auto chunk = (*words_)[pos_ >> 6] >> off;
            if (chunk != 0) {
                auto z = static_cast<unsigned>(std::countr_zero(chunk));
                n += z;
                pos_ += z + 1;
                break;
            }
            n += 64 - off;
            pos_ += 64 - off;
        }
        return (std::uint64_t(1) << n) | get(n);
    }

    std::uint64_t delta() noexcept {
        auto n = static_cast<unsigned>(gamma());
        return (std::uint64_t(1) << (n - 1)) | get(n - 1);
    }

    std::uint64_t position() const noexcept { return pos_; }

private:
    const std::vector<std::uint64_t>* words_;
    std::uint64_t pos_;
};

/// Fixed-width packed integer array.
class int_vector {
public:
    int_vector() = default;

    int_vector(std::size_t n, unsigned width) : n_(n), width_(width), words_((n * width + 63) / 64 + 1, 0) {}

    template <class It>
    static int_vector from(It first, It last) {
        std::uint64_t mx = 0;
        std::size_t n = 0;
        for (auto it = first; it != last; ++it, ++n) mx = std::max<std::uint64_t>(mx, static_cast<std::uint64_t>(*it));
        int_vector v(n, width_of(mx));
        std::size_t i = 0;
        for (auto it = first; it != last; ++it) v.set(i++, static_cast<std::uint64_t>(*it));
        return v;
    }

    template <class C>
    static int_vector from(const C& c) { return from(std::begin(c), std::end(c)); }

    std::uint64_t operator[](std::size_t i) const noexcept { return read_bits(words_, std::uint64_t(i) * width_, width_); }
    void set(std::size_t i, std::uint64_t v) noexcept { write_bits(words_, std::uint64_t(i) * width_, width_, v); }

    std::size_t size() const noexcept { return n_; }
    unsigned width() const noexcept { return width_; }
    std::uint64_t size_in_bits() const noexcept { return std::uint64_t(n_) * width_; }

    void save(io::binary_writer& w) const {
        w.u64(n_);
        w.u8(static_cast<std::uint8_t>(width_));
        w.words(words_);
    }

    static int_vector load(io::binary_reader& r) {
        int_vector v;
        v.n_ = r.u64();
        v.width_ = r.u8();
        v.words_ = r.words();
        if (v.width_ > 64 || v.words_.size() < (v.n_ * v.width_ + 63) / 64 + 1)
            fail(errc::corrupt_index, "packed integer array size mismatch");
        return v;
    }

    friend bool operator==(const int_vector&, const int_vector&) = default;

private:
    std::size_t n_ = 0;
    unsigned width_ = 1;
    std::vector<std::uint64_t> words_{0};
};

}  // namespace ctr::bits
