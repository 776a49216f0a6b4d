#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "ctr/query/protocol.hpp"
#include "ctr/trip/trip_store.hpp"

namespace ctr::gen {

using query::build_config;
using query::query_kind;
using query::query_line;
using query::time_window;
using query::topk_strategy;

struct bench_dataset {
    std::string name;
    std::vector<trip::raw_trip> trips;
    trip::time_discretizer discretizer;
};

struct bench_options {
    std::size_t queries = 10000;  // per spatial and temporal class
    std::size_t topk_runs = 100;  // per (k, strategy)
    std::vector<std::uint64_t> topk_k{10, 100};
    std::size_t warmup = 100;
    std::uint32_t min_window_minutes = 5, max_window_minutes = 120;
    std::uint64_t seed = 1;
};

/// A named batch of queries timed together.
struct query_class {
    std::string name;
    std::vector<query_line> queries;
};

struct bench_row {
    std::string dataset;
    build_config cfg;
    std::uint32_t interval_minutes = 0;
    std::uint64_t n = 0, z = 0, sigma_s = 0, sigma_t = 0;
    std::uint64_t spatial_bits = 0, temporal_bits = 0;
    std::uint64_t spatial_baseline = 0, temporal_baseline = 0;
    std::vector<std::pair<std::string, double>> latency_us;  // mean per class

    double spatial_ratio() const { return double(spatial_bits) / double(spatial_baseline); }
    double temporal_ratio() const { return double(temporal_bits) / double(temporal_baseline); }
};

inline std::uint64_t ceil_log2(std::uint64_t x) {
    std::uint64_t b = 0;
    while ((std::uint64_t{1} << b) < x) ++b;
    return b;
}

/// n·⌈log2(σs+1)⌉ for the node sequence with separators.
inline std::uint64_t spatial_baseline_bits(std::uint64_t n, std::uint64_t sigma_s) { return n * ceil_log2(sigma_s + 1); }

inline std::uint64_t temporal_baseline_bits(std::uint64_t n, std::uint64_t sigma_t) {
    return n * std::max<std::uint64_t>(1, ceil_log2(sigma_t));
}

/// Query batches: random present nodes, (X, Y) from real trip endpoints,
/// windows between the configured widths.
template <class Rng>
std::vector<query_class> make_query_classes(const trip::trip_store& st, std::uint32_t interval_minutes, Rng& rng,
                                            const bench_options& o) {
    std::vector<std::uint64_t> nodes;
    {
        std::vector<bool> seen(st.sigma_s + 1);
        for (const auto& t : st.trips)
            for (auto v : t.nodes) seen[v] = true;
        for (std::uint64_t v = 1; v <= st.sigma_s; ++v)
            if (seen[v]) nodes.push_back(v);
    }
    auto node = [&] { return nodes[rng() % nodes.size()]; };
    auto ends = [&] {
        const auto& t = st.trips[rng() % st.trips.size()];
        return std::vector<std::uint64_t>{t.nodes.front(), t.nodes.back()};
    };
    auto wmin = std::max<std::uint64_t>(1, (o.min_window_minutes + interval_minutes - 1) / interval_minutes);
    auto wmax = std::max<std::uint64_t>(wmin, o.max_window_minutes / interval_minutes);
    auto window = [&] {
        auto width = std::min<std::uint64_t>(st.sigma_t, wmin + rng() % (wmax - wmin + 1));
        auto t1 = rng() % (st.sigma_t - width + 1);
        return time_window{t1, t1 + width - 1};
    };
    auto batch = [&](std::string name, std::size_t count, auto make) {
        query_class c{std::move(name), {}};
        for (std::size_t i = 0; i < count + o.warmup; ++i) c.queries.push_back(make());
        return c;
    };
    auto q = [](query_kind k, std::vector<std::uint64_t> a, std::optional<time_window> w = std::nullopt,
                topk_strategy s = topk_strategy::seq) { return query_line{k, std::move(a), w, s}; };

    std::vector<query_class> out;
    out.push_back(batch("starts-with-x", o.queries, [&] { return q(query_kind::starts_with_x, {node()}); }));
    out.push_back(batch("ends-with-x", o.queries, [&] { return q(query_kind::ends_with_x, {node()}); }));
    out.push_back(batch("from-x-to-y", o.queries, [&] { return q(query_kind::from_x_to_y, ends()); }));
    out.push_back(batch("uses-x", o.queries, [&] { return q(query_kind::uses_x, {node()}); }));
    out.push_back(batch("starts-with-x-w", o.queries, [&] { return q(query_kind::starts_with_x, {node()}, window()); }));
    out.push_back(batch("ends-with-x-w", o.queries, [&] { return q(query_kind::ends_with_x, {node()}, window()); }));
    out.push_back(batch("uses-x-w", o.queries, [&] { return q(query_kind::uses_x, {node()}, window()); }));
    out.push_back(batch("from-x-to-y-strong", o.queries, [&] { return q(query_kind::from_x_to_y_strong, ends(), window()); }));
    out.push_back(batch("from-x-to-y-weak", o.queries, [&] { return q(query_kind::from_x_to_y_weak, ends(), window()); }));
    out.push_back(batch("starts-t", o.queries, [&] { return q(query_kind::starts_t, {}, window()); }));
    out.push_back(batch("uses-t", o.queries, [&] { return q(query_kind::uses_t, {}, window()); }));
    out.push_back(batch("trips-t", o.queries, [&] { return q(query_kind::trips_t, {}, window()); }));
    for (auto kind : {query_kind::top_k, query_kind::top_k_starts})
        for (auto k : o.topk_k)
            for (auto s : {topk_strategy::seq, topk_strategy::bin}) {
                std::string name = std::string(query::to_string(kind)) + '-' + std::to_string(k) +
                                   (s == topk_strategy::seq ? "-seq" : "-bin");
                out.push_back(batch(name, o.topk_runs, [&] { return q(kind, {k}, std::nullopt, s); }));
                out.push_back(batch(name + "-w", o.topk_runs, [&] { return q(kind, {k}, window(), s); }));
            }
    return out;
}

/// Answer folded to one number so timing excludes formatting.
template <class Engine>
std::uint64_t evaluate(const Engine& e, const query_line& q) {
    const auto& a = q.args;
    auto sum = [](const query::topk_result& r) {
        std::uint64_t s = 0;
        for (const auto& [v, c] : r) s += v * 31 + c;
        return s;
    };
    switch (q.kind) {
        case query_kind::starts_with_x: return q.window ? e.starts_with_x(a[0], *q.window) : e.starts_with_x(a[0]);
        case query_kind::ends_with_x: return q.window ? e.ends_with_x(a[0], *q.window) : e.ends_with_x(a[0]);
        case query_kind::uses_x: return q.window ? e.uses_x(a[0], *q.window) : e.uses_x(a[0]);
        case query_kind::from_x_to_y: return e.from_x_to_y(a[0], a[1]);
        case query_kind::from_x_to_y_strong: return e.from_x_to_y_strong(a[0], a[1], *q.window);
        case query_kind::from_x_to_y_weak: return e.from_x_to_y_weak(a[0], a[1], *q.window);
        case query_kind::starts_t: return e.starts_t(*q.window);
        case query_kind::uses_t: return e.uses_t(*q.window);
        case query_kind::trips_t: {
            auto est = e.trips_t_estimate(*q.window);
            return est.starts_based + static_cast<std::uint64_t>(est.usage_based);
        }
        case query_kind::top_k: return sum(e.top_k(a[0], q.strategy, q.window));
        case query_kind::top_k_starts: return sum(e.top_k_starts(a[0], q.strategy, q.window));
    }
    return 0;
}

/// Mean microseconds per query after the warm-up prefix.
template <class Engine>
double mean_latency_us(const Engine& e, const query_class& c, std::size_t warmup, std::uint64_t& sink) {
    std::size_t i = 0;
    for (; i < std::min(warmup, c.queries.size()); ++i) sink += evaluate(e, c.queries[i]);
    if (i == c.queries.size()) return 0.0;
    auto t0 = std::chrono::steady_clock::now();
    for (; i < c.queries.size(); ++i) sink += evaluate(e, c.queries[i]);
    std::chrono::duration<double, std::micro> dt = std::chrono::steady_clock::now() - t0;
    return dt.count() / double(c.queries.size() - std::min(warmup, c.queries.size()));
}

inline bench_row measure(const std::string& dataset, const query::ctr_index& idx,
                         const std::vector<query_class>& classes, const bench_options& o) {
    bench_row row;
    row.dataset = dataset;
    row.cfg = idx.config();
    row.interval_minutes = idx.discretizer().interval_minutes;
    row.n = idx.n();
    row.z = idx.z();
    row.sigma_s = idx.sigma_s();
    row.sigma_t = idx.sigma_t();
    row.spatial_bits = idx.spatial().payload_bits();
    row.temporal_bits = idx.temporal().payload_bits();
    row.spatial_baseline = spatial_baseline_bits(row.n, row.sigma_s);
    row.temporal_baseline = temporal_baseline_bits(row.n, row.sigma_t);
    std::uint64_t sink = 0;
    for (const auto& c : classes) row.latency_us.emplace_back(c.name, mean_latency_us(idx, c, o.warmup, sink));
    // keeps the answers observable to the optimizer
    if (sink == 0xFFFFFFFFFFFFFFFFull) std::fputs("", stderr);
    return row;
}

/// Every configuration on every dataset. Query sets are drawn once per
/// dataset from the option seed.
inline std::vector<bench_row> run_bench(const std::vector<bench_dataset>& datasets,
                                        const std::vector<build_config>& configs, const bench_options& o) {
    std::vector<bench_row> rows;
    for (const auto& ds : datasets) {
        auto d = ds.discretizer.resolved(ds.trips);
        auto st = trip::build_store(ds.trips, d);
        std::mt19937_64 rng(o.seed);
        auto classes = make_query_classes(st, d.interval_minutes, rng, o);
        for (const auto& cfg : configs) {
            if (cfg.psi_sample == 0) fail(errc::configuration_unsupported, "psi sample interval must be positive");
            query::ctr_index idx(st, cfg, d);
            rows.push_back(measure(ds.name, idx, classes, o));
        }
    }
    return rows;
}

inline void write_csv(std::ostream& out, const std::vector<bench_row>& rows) {
    out << "dataset,structure,bitvector,psi_sample,interval_minutes,n,z,sigma_s,sigma_t,spatial_bits,temporal_bits,"
           "spatial_baseline_bits,temporal_baseline_bits,spatial_ratio,temporal_ratio";
    if (!rows.empty())
        for (const auto& [name, _] : rows.front().latency_us) out << ",us_" << name;
    out << '\n';
    char buf[32];
    for (const auto& r : rows) {
        out << r.dataset << ',' << wavelet::to_string(r.cfg.structure) << ',' << bits::to_string(r.cfg.bitvector) << ','
            << r.cfg.psi_sample << ',' << r.interval_minutes << ',' << r.n << ',' << r.z << ',' << r.sigma_s << ','
            << r.sigma_t << ',' << r.spatial_bits << ',' << r.temporal_bits << ',' << r.spatial_baseline << ','
            << r.temporal_baseline;
        std::snprintf(buf, sizeof buf, ",%.4f", r.spatial_ratio());
        out << buf;
        std::snprintf(buf, sizeof buf, ",%.4f", r.temporal_ratio());
        out << buf;
        for (const auto& [_, us] : r.latency_us) {
            std::snprintf(buf, sizeof buf, ",%.3f", us);
            out << buf;
        }
        out << '\n';
    }
}

}  // namespace ctr::gen
