#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ctr/error.hpp"
#include "ctr/trip/raw_trip.hpp"

namespace ctr::gen {

/// Lines as node-id sequences; nodes shared by several lines are the
/// switching points.
struct network_model {
    std::vector<std::vector<std::uint64_t>> lines;
    std::array<double, 4> switch_prob{0.5, 0.1, 0.05, 0.02};

    std::uint64_t sigma_s() const {
        std::uint64_t m = 0;
        for (const auto& l : lines)
            for (auto v : l) m = std::max(m, v);
        return m;
    }

    std::size_t distinct_nodes() const {
        std::set<std::uint64_t> s;
        for (const auto& l : lines) s.insert(l.begin(), l.end());
        return s.size();
    }

    /// (line, position) pairs of every node.
    std::map<std::uint64_t, std::vector<std::pair<std::size_t, std::size_t>>> stops() const {
        std::map<std::uint64_t, std::vector<std::pair<std::size_t, std::size_t>>> m;
        for (std::size_t l = 0; l < lines.size(); ++l)
            for (std::size_t p = 0; p < lines[l].size(); ++p) m[lines[l][p]].emplace_back(l, p);
        return m;
    }

    void validate() const {
        if (lines.empty()) fail(errc::model_invalid, "network has no lines");
        for (const auto& l : lines) {
            if (l.size() < 2) fail(errc::model_invalid, "a line needs at least 2 nodes");
            std::set<std::uint64_t> seen;
            for (auto v : l) {
                if (v == 0) fail(errc::model_invalid, "node ids start at 1");
                if (!seen.insert(v).second) fail(errc::model_invalid, "a line visits node " + std::to_string(v) + " twice");
            }
        }
        for (auto p : switch_prob)
            if (p < 0 || p > 1) fail(errc::model_invalid, "switch probability outside [0,1]");
    }
};

/// Text form: `switch p1 p2 p3 p4` (optional) and one `line n1 n2 ...` per line.
inline network_model parse_network(std::istream& in) {
    network_model m;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string key;
        if (!(ss >> key) || key[0] == '#') continue;
        if (key == "switch") {
            for (auto& p : m.switch_prob)
                if (!(ss >> p)) fail(errc::malformed_line, "network line " + std::to_string(line_no));
        } else if (key == "line") {
            std::vector<std::uint64_t> nodes;
            std::string tok;
            while (ss >> tok) nodes.push_back(trip::detail::parse_u64(tok, line_no));
            m.lines.push_back(std::move(nodes));
        } else {
            fail(errc::malformed_line, "network line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    m.validate();
    return m;
}

inline void write_network(std::ostream& out, const network_model& m) {
    out << "switch";
    for (auto p : m.switch_prob) out << ' ' << p;
    out << '\n';
    for (const auto& l : m.lines) {
        out << "line";
        for (auto v : l) out << ' ' << v;
        out << '\n';
    }
}

/// Synthetic metro-like network: 23 lines over 313 stations. Both terminals
/// and three or four inner stations of every later line are shared with
/// earlier lines.
inline network_model default_network() {
    constexpr std::array<std::size_t, 23> lengths{26, 21, 19, 24, 16, 27, 14, 20, 17, 22, 15, 25,
                                                  18, 16, 22, 14, 17, 21, 15, 19, 16, 14, 16};
    std::mt19937_64 rng(20240601);
    std::vector<std::vector<std::uint64_t>> lines;
    std::uint64_t next_id = 1;
    std::vector<std::uint64_t> pool;
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        std::vector<std::uint64_t> l(lengths[k], 0);
        if (k > 0) {
            std::size_t merges = k <= 11 ? 6 : 5;
            std::set<std::size_t> positions{0, l.size() - 1};
            while (positions.size() < merges) positions.insert(1 + rng() % (l.size() - 2));
            std::set<std::uint64_t> used;
            for (auto p : positions) {
                std::uint64_t v;
                do v = pool[rng() % pool.size()];
                while (used.count(v));
                used.insert(v);
                l[p] = v;
            }
        }
        for (auto& v : l)
            if (v == 0) {
                v = next_id++;
                pool.push_back(v);
            }
        lines.push_back(std::move(l));
    }
    network_model m;
    m.lines = std::move(lines);
    return m;
}

}  // namespace ctr::gen
