#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ctr/gen/network.hpp"
#include "ctr/trip/raw_trip.hpp"

namespace ctr::gen {

/// Trip lengths are 2 + Binomial(trials, p).
struct length_distribution {
    unsigned trials = 29;
    double p = 9.81 / 29;

    double mean() const { return 2 + trials * p; }
};

namespace detail {

// Walk state: current line, position on it and direction (+1 / -1).
struct walk {
    std::size_t line, pos;
    int dir;
};

inline bool can_step(const network_model& m, const walk& w, const std::set<std::uint64_t>& seen) {
    const auto& l = m.lines[w.line];
    if (w.dir > 0 ? w.pos + 1 >= l.size() : w.pos == 0) return false;
    return !seen.count(l[w.dir > 0 ? w.pos + 1 : w.pos - 1]);
}

}  // namespace detail

/// Random walks along lines. At a shared node the walk changes line with
/// the probability of its next switch ordinal; at the end of a line or in
/// front of an already visited node it changes line if one is available and
/// switches remain, otherwise the trip stops early.
template <class Rng>
std::vector<std::vector<std::uint64_t>> generate_trips(const network_model& m, std::size_t count, Rng& rng,
                                                       const length_distribution& len = {}) {
    m.validate();
    auto stops = m.stops();
    std::vector<std::pair<std::size_t, std::size_t>> starts;
    for (std::size_t l = 0; l < m.lines.size(); ++l)
        for (std::size_t p = 0; p < m.lines[l].size(); ++p) starts.emplace_back(l, p);

    std::binomial_distribution<unsigned> target_dist(len.trials, len.p);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::vector<std::vector<std::uint64_t>> out;
    out.reserve(count);

    for (std::size_t t = 0; t < count; ++t) {
        auto target = 2 + target_dist(rng);
        auto [l0, p0] = starts[rng() % starts.size()];
        detail::walk w{l0, p0, rng() % 2 ? 1 : -1};
        std::set<std::uint64_t> seen{m.lines[l0][p0]};
        if (!detail::can_step(m, w, seen)) w.dir = -w.dir;
        std::vector<std::uint64_t> trip{m.lines[l0][p0]};
        unsigned switches = 0;

        // alternatives at the current node on other lines with a free next step
        auto options = [&](const detail::walk& cur) {
            std::vector<detail::walk> opts;
            for (auto [l, p] : stops.at(trip.back())) {
                if (l == cur.line) continue;
                for (int d : {1, -1}) {
                    detail::walk cand{l, p, d};
                    if (detail::can_step(m, cand, seen)) opts.push_back(cand);
                }
            }
            return opts;
        };

        while (trip.size() < target) {
            bool blocked = !detail::can_step(m, w, seen);
            if (switches < m.switch_prob.size() && trip.size() > 1) {
                bool want = blocked || coin(rng) < m.switch_prob[switches];
                if (want) {
                    auto opts = options(w);
                    if (!opts.empty()) {
                        w = opts[rng() % opts.size()];
                        ++switches;
                        blocked = false;
                    }
                }
            }
            if (blocked) break;
            w.pos = w.dir > 0 ? w.pos + 1 : w.pos - 1;
            trip.push_back(m.lines[w.line][w.pos]);
            seen.insert(trip.back());
        }
        out.push_back(std::move(trip));
    }
    return out;
}

enum class time_kind { uniform, skewed, very_skewed };

inline time_kind parse_time_kind(std::string_view s) {
    if (s == "uniform") return time_kind::uniform;
    if (s == "skewed") return time_kind::skewed;
    if (s == "very-skewed") return time_kind::very_skewed;
    fail(errc::configuration_unsupported, "unknown time distribution '" + std::string(s) + "'");
}

/// Start-time classes: morning rush, evening rush, lunch, random. Windows
/// are [begin, end) in seconds of the day. Random starts cover the service
/// window.
struct time_distribution {
    struct window {
        std::uint32_t begin, end;
    };
    window morning{7 * 3600, 9 * 3600 + 1800};
    window evening{17 * 3600 + 1800, 20 * 3600};
    window lunch{13 * 3600, 14 * 3600 + 1800};
    window service{5 * 3600, 22 * 3600 + 1800};
    std::array<double, 4> probs{0, 0, 0, 1};  // morning, evening, lunch, random

    static time_distribution of(time_kind k) {
        time_distribution d;
        if (k == time_kind::skewed) d.probs = {0.30, 0.45, 0.05, 0.20};
        if (k == time_kind::very_skewed) d.probs = {0.40, 0.50, 0.08, 0.02};
        return d;
    }

    bool in_rush(std::uint32_t sec) const {
        for (auto w : {morning, evening, lunch})
            if (sec >= w.begin && sec < w.end) return true;
        return false;
    }
};

/// Days covered by the generated timestamps (days since 1970-01-01, UTC).
struct day_model {
    std::int64_t first_day = 19359;  // 2023-01-02, a Monday
    std::uint32_t days = 1;
};

/// Per-node increments between stops, in seconds.
struct hop_times {
    std::uint32_t min = 60, max = 180;
};

template <class Rng>
std::vector<trip::raw_trip> generate_times(const std::vector<std::vector<std::uint64_t>>& trips,
                                           const time_distribution& dist, Rng& rng, const day_model& days = {},
                                           const hop_times& hop = {}) {
    std::discrete_distribution<int> cls(dist.probs.begin(), dist.probs.end());
    std::uniform_int_distribution<std::uint32_t> step(hop.min, hop.max);
    std::vector<trip::raw_trip> out;
    out.reserve(trips.size());
    for (const auto& nodes : trips) {
        time_distribution::window w = dist.service;
        switch (cls(rng)) {
            case 0: w = dist.morning; break;
            case 1: w = dist.evening; break;
            case 2: w = dist.lunch; break;
            default: break;
        }
        std::uint64_t day = days.first_day + rng() % days.days;
        std::uint64_t t = day * 86400 + w.begin + rng() % (w.end - w.begin);
        trip::raw_trip r;
        r.nodes = nodes;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (i) t += step(rng);
            r.timestamps.push_back(t);
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace ctr::gen
