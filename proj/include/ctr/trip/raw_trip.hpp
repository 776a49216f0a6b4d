#pragma once

#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ctr/error.hpp"

namespace ctr::trip {

/// A trip as read from input: node ids (>= 1) with epoch-second timestamps.
struct raw_trip {
    std::vector<std::uint64_t> nodes;
    std::vector<std::uint64_t> timestamps;

    bool operator==(const raw_trip&) const = default;
};

inline void validate(const raw_trip& t) {
    if (t.nodes.size() != t.timestamps.size()) fail(errc::length_mismatch, "nodes and timestamps differ in length");
    if (t.nodes.size() < 2) fail(errc::trip_too_short, "a trip needs at least 2 nodes");
    for (auto v : t.nodes)
        if (v == 0) fail(errc::malformed_line, "node ids start at 1");
    for (std::size_t j = 1; j < t.timestamps.size(); ++j)
        if (t.timestamps[j] < t.timestamps[j - 1])
            fail(errc::non_monotone_timestamps, "timestamp " + std::to_string(t.timestamps[j]) + " after " +
                                                    std::to_string(t.timestamps[j - 1]));
}

namespace detail {

inline std::uint64_t parse_u64(std::string_view s, std::size_t line_no) {
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || p != s.data() + s.size())
        fail(errc::malformed_line, "line " + std::to_string(line_no) + ": bad integer '" + std::string(s) + "'");
    return v;
}

}  // namespace detail

/// Parses one `node:timestamp node:timestamp ...` line.
inline raw_trip parse_trip_line(std::string_view line, std::size_t line_no = 0) {
    raw_trip t;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i == line.size()) break;
        auto j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        auto tok = line.substr(i, j - i);
        auto colon = tok.find(':');
        if (colon == std::string_view::npos)
            fail(errc::malformed_line, "line " + std::to_string(line_no) + ": token '" + std::string(tok) + "' lacks ':'");
        t.nodes.push_back(detail::parse_u64(tok.substr(0, colon), line_no));
        t.timestamps.push_back(detail::parse_u64(tok.substr(colon + 1), line_no));
        i = j;
    }
    try {
        validate(t);
    } catch (const error& e) {
        fail(e.code(), "line " + std::to_string(line_no) + ": " + e.what());
    }
    return t;
}

/// One trip per non-empty line; lines starting with '#' are skipped.
inline std::vector<raw_trip> parse_trips(std::istream& in) {
    std::vector<raw_trip> trips;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        trips.push_back(parse_trip_line(line, line_no));
    }
    return trips;
}

inline void write_trips(std::ostream& out, std::span<const raw_trip> trips) {
    for (const auto& t : trips) {
        for (std::size_t j = 0; j < t.nodes.size(); ++j) {
            if (j) out << ' ';
            out << t.nodes[j] << ':' << t.timestamps[j];
        }
        out << '\n';
    }
}

}  // namespace ctr::trip
