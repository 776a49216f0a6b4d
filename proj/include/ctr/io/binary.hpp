#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "ctr/error.hpp"

namespace ctr::io {

/// Append-only little-endian byte sink. All multi-byte values are written
/// least significant byte first regardless of host order.
class binary_writer {
public:
    void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }

    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }

    void f64(double v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        u64(bits);
    }

    void bytes(std::string_view s) { buf_.append(s); }

    void words(std::span<const std::uint64_t> ws) {
        u64(ws.size());
        for (auto w : ws) u64(w);
    }

    template <class T>
        requires std::is_unsigned_v<T>
    void vec(const std::vector<T>& v) {
        u64(v.size());
        for (auto x : v) {
            if constexpr (sizeof(T) == 1) u8(x);
            else if constexpr (sizeof(T) <= 4) u32(static_cast<std::uint32_t>(x));
            else u64(static_cast<std::uint64_t>(x));
        }
    }

    const std::string& data() const noexcept { return buf_; }
    std::string take() noexcept { return std::move(buf_); }
    std::size_t size() const noexcept { return buf_.size(); }

private:
    std::string buf_;
};

/// Bounds-checked reader matching binary_writer. Truncation raises corrupt_index.
class binary_reader {
public:
    explicit binary_reader(std::string_view data) : data_(data) {}

    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }

    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(u8()) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(u8()) << (8 * i);
        return v;
    }

    double f64() {
        auto bits = u64();
        double v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }

    std::string_view bytes(std::size_t n) {
        need(n);
        auto s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }

    std::vector<std::uint64_t> words() {
        auto n = length(8);
        std::vector<std::uint64_t> ws(n);
        for (auto& w : ws) w = u64();
        return ws;
    }

    template <class T>
        requires std::is_unsigned_v<T>
    std::vector<T> vec() {
        constexpr std::size_t width = sizeof(T) == 1 ? 1 : (sizeof(T) <= 4 ? 4 : 8);
        auto n = length(width);
        std::vector<T> v(n);
        for (auto& x : v) {
            if constexpr (sizeof(T) == 1) x = u8();
            else if constexpr (sizeof(T) <= 4) x = static_cast<T>(u32());
            else x = static_cast<T>(u64());
        }
        return v;
    }

    std::size_t remaining() const noexcept { return data_.size() - pos_; }
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t length(std::size_t elem_bytes) {
        auto n = u64();
        if (n > remaining() / elem_bytes) fail(errc::corrupt_index, "length field exceeds payload");
        return static_cast<std::size_t>(n);
    }

    void need(std::size_t n) const {
        if (remaining() < n) fail(errc::corrupt_index, "unexpected end of data");
    }

    std::string_view data_;
    std::size_t pos_ = 0;
};

}  // namespace ctr::io
