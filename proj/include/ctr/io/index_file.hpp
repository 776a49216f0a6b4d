#pragma once

#include <cstdint>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>

#include <zlib.h>

#include "ctr/query/ctr_index.hpp"

namespace ctr::io {

inline constexpr std::string_view index_magic = "CTR1";
inline constexpr std::uint32_t index_version = 1;

inline std::uint32_t crc32_of(std::string_view bytes) {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    while (!bytes.empty()) {
        auto chunk = static_cast<uInt>(std::min<std::size_t>(bytes.size(), 1u << 30));
        crc = ::crc32(crc, reinterpret_cast<const Bytef*>(bytes.data()), chunk);
        bytes.remove_prefix(chunk);
    }
    return static_cast<std::uint32_t>(crc);
}

/// Layout: magic, version, then config / spatial / temporal sections each
/// prefixed by a 64-bit length, then a CRC-32 of everything before it.
inline std::string serialize(const query::ctr_index& idx) {
    binary_writer out;
    out.bytes(index_magic);
    out.u32(index_version);
    auto section = [&](auto&& write) {
        binary_writer s;
        write(s);
        out.u64(s.size());
        out.bytes(s.data());
    };
    section([&](binary_writer& w) { idx.save_config(w); });
    section([&](binary_writer& w) { idx.spatial().save(w); });
    section([&](binary_writer& w) { idx.temporal().save(w); });
    out.u32(crc32_of(out.data()));
    return out.take();
}

inline query::ctr_index deserialize(std::string_view bytes) {
    if (bytes.size() < index_magic.size() + 8 || bytes.substr(0, 4) != index_magic)
        fail(errc::corrupt_index, "not an index file");
    auto body = bytes.substr(0, bytes.size() - 4);
    binary_reader tail(bytes.substr(bytes.size() - 4));
    if (tail.u32() != crc32_of(body)) fail(errc::corrupt_index, "checksum mismatch");
    binary_reader r(body);
    r.bytes(4);
    if (auto v = r.u32(); v != index_version) fail(errc::corrupt_index, "unsupported version " + std::to_string(v));
    auto section = [&]() {
        auto len = r.u64();
        if (len > r.remaining()) fail(errc::corrupt_index, "section length");
        return r.bytes(static_cast<std::size_t>(len));
    };
    auto whole = [](std::string_view s, auto&& load) {
        binary_reader sr(s);
        auto v = load(sr);
        if (sr.remaining() != 0) fail(errc::corrupt_index, "trailing bytes in section");
        return v;
    };
    auto cfg = whole(section(), [](binary_reader& x) { return query::ctr_index::load_config(x); });
    auto sp = whole(section(), [](binary_reader& x) { return csa::spatial_index::load(x); });
    auto tm = whole(section(), [](binary_reader& x) { return wavelet::temporal_index::load(x); });
    if (r.remaining() != 0) fail(errc::corrupt_index, "trailing bytes");
    return query::ctr_index::assemble(std::move(cfg), std::move(sp), std::move(tm));
}

inline void save_index(const query::ctr_index& idx, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail(errc::io_failure, "cannot open " + path + " for writing");
    auto bytes = serialize(idx);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) fail(errc::io_failure, "write to " + path + " failed");
}

inline query::ctr_index load_index(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail(errc::io_failure, "cannot open " + path);
    std::string bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

}  // namespace ctr::io
