#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "ctr/trip/trip_store.hpp"

namespace fixtures {

inline constexpr std::uint64_t eight_am = 8 * 3600;

// Example network: six trips, times given as 5-minute codes from 08:00.
inline std::vector<ctr::trip::raw_trip> example1_trips() {
    auto at = [](std::initializer_list<std::uint64_t> codes) {
        std::vector<std::uint64_t> ts;
        for (auto c : codes) ts.push_back(eight_am + c * 300 + 45);
        return ts;
    };
    return {
        {{1, 2, 3}, at({5, 7, 8})},
        {{2, 3, 10, 6}, at({10, 13, 14, 15})},
        {{1, 2, 3}, at({0, 3, 5})},
        {{2, 3, 10, 4, 7}, at({2, 4, 6, 8, 10})},
        {{3, 10, 5}, at({9, 11, 12})},
        {{9, 8, 7}, at({12, 14, 15})},
    };
}

inline ctr::trip::time_discretizer example1_discretizer() {
    ctr::trip::time_discretizer d;
    d.interval_minutes = 5;
    d.mode = ctr::trip::time_mode::linear;
    d.origin = eight_am;
    d.horizon = 16;
    return d;
}

inline ctr::trip::trip_store example1_store() {
    return ctr::trip::build_store(example1_trips(), example1_discretizer());
}

struct random_dataset {
    std::vector<ctr::trip::coded_trip> trips;
    std::uint64_t sigma_s, sigma_t;
};

// Small random datasets; nodes may repeat inside a trip.
inline random_dataset make_random_dataset(std::mt19937_64& rng, std::uint64_t max_z = 50, std::uint64_t max_sigma_s = 20,
                                          std::uint64_t max_sigma_t = 32, std::size_t max_len = 8) {
    random_dataset d;
    d.sigma_s = 1 + rng() % max_sigma_s;
    d.sigma_t = 1 + rng() % max_sigma_t;
    auto z = 1 + rng() % max_z;
    for (std::uint64_t i = 0; i < z; ++i) {
        ctr::trip::coded_trip t;
        auto len = 2 + rng() % (max_len - 1);
        std::uint64_t code = rng() % d.sigma_t;
        for (std::size_t j = 0; j < len; ++j) {
            t.nodes.push_back(1 + rng() % d.sigma_s);
            t.codes.push_back(code);
            if (rng() % 2) code = std::min(d.sigma_t - 1, code + rng() % 4);
        }
        d.trips.push_back(std::move(t));
    }
    // duplicate a few trips outright
    for (std::size_t k = 0; k < d.trips.size() / 5; ++k) d.trips.push_back(d.trips[rng() % d.trips.size()]);
    return d;
}

}  // namespace fixtures
