#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "ctr/trip/discretizer.hpp"
#include "ctr/trip/raw_trip.hpp"

namespace ctr::trip {

/// A trip with its timestamps already mapped to time codes.
struct coded_trip {
    std::vector<std::uint64_t> nodes;
    std::vector<std::uint64_t> codes;

    bool operator==(const coded_trip&) const = default;
};

/// Sort key: first node, last node, first time code, then nodes 2, 3, ...
inline bool trip_less(const coded_trip& a, const coded_trip& b) noexcept {
    if (a.nodes.front() != b.nodes.front()) return a.nodes.front() < b.nodes.front();
    if (a.nodes.back() != b.nodes.back()) return a.nodes.back() < b.nodes.back();
    if (a.codes.front() != b.codes.front()) return a.codes.front() < b.codes.front();
    return std::lexicographical_compare(a.nodes.begin() + 1, a.nodes.end(), b.nodes.begin() + 1, b.nodes.end());
}

/// Sorted trips plus the concatenations the indexes are built from.
///
/// S holds node ids with 0 at terminator positions: trip 1, $, trip 2, $, ...,
/// trip z, $, trailing $. icode[p] is the time code aligned to S[p]; a
/// terminator carries its trip's first code and the trailing one carries 0.
/// Both vectors are 0-based; position p in the 1-based notation is index p-1.
struct trip_store {
    std::vector<coded_trip> trips;
    std::uint64_t sigma_s = 0;
    std::uint64_t sigma_t = 0;
    std::vector<std::uint64_t> S;
    std::vector<std::uint64_t> icode;

    std::uint64_t z() const noexcept { return trips.size(); }
    std::uint64_t n() const noexcept { return S.size(); }
    std::uint64_t node_entries() const noexcept { return S.size() - trips.size() - 1; }

    double mean_length() const noexcept {
        return trips.empty() ? 0.0 : static_cast<double>(node_entries()) / static_cast<double>(trips.size());
    }
};

/// Sorts (stably) and concatenates already-coded trips. sigma_s = 0 takes the
/// largest node id seen.
inline trip_store make_store(std::vector<coded_trip> trips, std::uint64_t sigma_s, std::uint64_t sigma_t) {
    if (trips.empty()) fail(errc::empty_dataset, "no trips");
    if (sigma_t == 0) fail(errc::empty_alphabet, "time alphabet is empty");
    std::uint64_t max_node = 0;
    for (const auto& t : trips) {
        if (t.nodes.size() != t.codes.size()) fail(errc::length_mismatch, "nodes and codes differ in length");
        if (t.nodes.size() < 2) fail(errc::trip_too_short, "a trip needs at least 2 nodes");
        for (std::size_t j = 0; j < t.nodes.size(); ++j) {
            if (t.nodes[j] == 0) fail(errc::malformed_line, "node ids start at 1");
            if (t.codes[j] >= sigma_t) fail(errc::timestamp_out_of_range, "time code " + std::to_string(t.codes[j]));
            if (j && t.codes[j] < t.codes[j - 1]) fail(errc::non_monotone_timestamps, "time codes decrease");
            max_node = std::max(max_node, t.nodes[j]);
        }
    }
    if (sigma_s == 0) sigma_s = max_node;
    if (max_node > sigma_s) fail(errc::symbol_out_of_range, "node " + std::to_string(max_node) + " exceeds sigma_s");

    std::stable_sort(trips.begin(), trips.end(), trip_less);

    trip_store st;
    st.sigma_s = sigma_s;
    st.sigma_t = sigma_t;
    std::size_t total = 1;
    for (const auto& t : trips) total += t.nodes.size() + 1;
    st.S.reserve(total);
    st.icode.reserve(total);
    for (const auto& t : trips) {
        st.S.insert(st.S.end(), t.nodes.begin(), t.nodes.end());
        st.icode.insert(st.icode.end(), t.codes.begin(), t.codes.end());
        st.S.push_back(0);
        st.icode.push_back(t.codes.front());
    }
    st.S.push_back(0);
    st.icode.push_back(0);
    st.trips = std::move(trips);
    return st;
}

inline coded_trip discretize(const raw_trip& t, const time_discretizer& d) {
    validate(t);
    coded_trip c{t.nodes, {}};
    c.codes.reserve(t.timestamps.size());
    for (auto ts : t.timestamps) c.codes.push_back(d.code(ts));
    // cyclic modes wrap at midnight; a trip must stay monotone in code space
    for (std::size_t j = 1; j < c.codes.size(); ++j)
        if (c.codes[j] < c.codes[j - 1])
            fail(errc::timestamp_out_of_range, "trip crosses a day boundary of the time encoding");
    return c;
}

/// Discretizes and stores raw trips. `d` must already be resolved (see
/// time_discretizer::resolved).
inline trip_store build_store(std::span<const raw_trip> trips, const time_discretizer& d, std::uint64_t sigma_s = 0) {
    std::vector<coded_trip> coded;
    coded.reserve(trips.size());
    for (const auto& t : trips) coded.push_back(discretize(t, d));
    return make_store(std::move(coded), sigma_s, d.sigma());
}

}  // namespace ctr::trip
