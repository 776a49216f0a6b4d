// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>

#include "ctr/gen/bench.hpp"
#include "ctr/gen/generator.hpp"
#include "ctr/io/index_file.hpp"
#include "ctr/oracle/oracle.hpp"
#include "ctr/oracle/query_sampler.hpp"
#include "ctr/wavelet/hu_tucker.hpp"
#include "fixtures.hpp"
#include "optimal_alphabetic.hpp"

using namespace ctr;

namespace {

// pinned thresholds
constexpr double budget_1_s = 1, budget_2_s = 1, budget_3_s = 600, budget_4_s = 120, budget_5_s = 300,
                 budget_6_s = 120;
constexpr int oracle_datasets = 1000, oracle_per_class = 20;
constexpr int hu_tucker_vectors = 500, hu_tucker_max_sigma = 16, entropy_vectors = 200, entropy_max_sigma = 1024;
constexpr std::size_t big_trips = 100000;
constexpr double spatial_ratio_max = 0.70, uniform_temporal_ratio_max = 1.05;
constexpr double slow_latency_us = 100, fast_latency_us = 10;
constexpr std::size_t latency_queries = 10000;
constexpr int bit_flips_per_config = 300;

struct outcome {
    bool ok = true;
    std::string detail;

    void check(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

int failures = 0;

void report(int id, const char* title, double budget_s, const std::function<outcome()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget_s > 0 && secs >= budget_s) o.check(false, "runtime over budget");
    std::printf("criterion %d %s  %s  (%.2f s%s)%s%s\n", id, o.ok ? "PASS" : "FAIL", title, secs,
                budget_s > 0 ? (", budget " + std::to_string(int(budget_s)) + " s").c_str() : "",
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
    failures += !o.ok;
}

std::vector<query::build_config> all_configs() {
    std::vector<query::build_config> out;
    for (auto s : {wavelet::time_structure::wm, wavelet::time_structure::wtht})
        for (auto f : bits::all_flavors)
            for (std::uint32_t t : {32u, 128u, 512u}) out.push_back({t, s, f});
    return out;
}

// The 100k-trip datasets shared by criteria 5 to 7.
struct big_data {
    trip::time_discretizer d;
    trip::trip_store skewed, uniform;
};

const big_data& big() {
    static const big_data data = [] {
        big_data b;
        b.d.mode = trip::time_mode::cyclic_day;
        std::mt19937_64 rng(2024);
        auto paths = gen::generate_trips(gen::default_network(), big_trips, rng);
        std::mt19937_64 r1(1), r2(2);
        b.skewed = trip::build_store(gen::generate_times(paths, gen::time_distribution::of(gen::time_kind::skewed), r1), b.d);
        b.uniform = trip::build_store(gen::generate_times(paths, gen::time_distribution::of(gen::time_kind::uniform), r2), b.d);
        return b;
    }();
    return data;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", x);
    return buf;
}

}  // namespace

int main() {
    report(1, "worked example: Psi, D, V and aligned times", budget_1_s, [] {
        outcome o;
        auto st = fixtures::example1_store();
        query::ctr_index idx(st, {}, fixtures::example1_discretizer());
        const auto& sp = idx.spatial();
        for (auto [i, v] : std::vector<std::pair<int, int>>{{8, 10}, {10, 14}, {14, 2}, {2, 8}, {5, 12}, {12, 16}})
            o.check(sp.psi_at(i) == std::uint64_t(v), "Psi[" + std::to_string(i) + "]");
        o.check(sp.D().rank1(12) == 3 && sp.V(3) == 2, "rank1(D,12) / V[3]");
        o.check(sp.D().rank1(16) == 4 && sp.V(4) == 3, "rank1(D,16) / V[4]");
        auto a = align::align_times(st, csa::suffix_order(st));
        o.check(a.icode_psi[3] == 10 && a.icode_psi[14] == 8, "Icode^Psi[4] / [15]");
        o.check(idx.n() == 28 && idx.z() == 6, "n / z");
        return o;
    });

    report(2, "wavelet examples on all structures and flavors", budget_2_s, [] {
        outcome o;
        std::vector<std::uint64_t> s{3, 2, 7, 7, 0, 1, 4, 3, 7, 6, 3, 2, 5, 5, 3};
        for (auto st : {wavelet::time_structure::wtht, wavelet::time_structure::wm})
            for (auto f : bits::all_flavors) {
                wavelet::temporal_index w(s, 8, st, f);
                auto name = std::string(wavelet::to_string(st)) + "/" + std::string(bits::to_string(f));
                o.check(w.access(8) == 3, name + " access(8)");
                o.check(w.count(5, 10, 3, 7) == 4, name + " count(5,10,3,7)");
            }
        return o;
    });

    report(3, "oracle equivalence on random datasets", budget_3_s, [] {
        outcome o;
        std::mt19937_64 rng(3);
        auto configs = all_configs();
        std::size_t total = 0;
        for (int d = 0; d < oracle_datasets && o.ok; ++d) {
            auto ds = fixtures::make_random_dataset(rng);
            auto st = trip::make_store(ds.trips, ds.sigma_s, ds.sigma_t);
            query::ctr_index idx(st, configs[d % configs.size()]);
            oracle::oracle_store ora(st);
            for (const auto& q : oracle::random_queries(rng, ds.sigma_s, ds.sigma_t, oracle_per_class)) {
                ++total;
                auto got = query::run_query(idx, q), want = query::run_query(ora, q);
                if (got != want) {
                    o.check(false, "dataset " + std::to_string(d) + ": " + query::to_text(q) + " got " + got + " want " + want);
                    break;
                }
            }
        }
        if (o.ok) o.detail = std::to_string(total) + " queries";
        return o;
    });

    report(4, "Hu-Tucker optimality and entropy bounds", budget_4_s, [] {
        outcome o;
        std::mt19937_64 rng(4);
        for (int v = 0; v < hu_tucker_vectors; ++v) {
            std::vector<std::uint64_t> f(1 + rng() % hu_tucker_max_sigma);
            for (auto& x : f) x = 1 + rng() % (rng() % 2 ? 10 : 1000);
            auto c = wavelet::build_hu_tucker(f);
            o.check(c.weighted_length(f) == optimal_alphabetic_cost(f), "weighted length vs DP, vector " + std::to_string(v));
            for (std::size_t s = 0; s + 1 < f.size(); ++s) {
                // order-preserving and prefix-free: compare codewords as bit strings
                std::string a, b;
                for (unsigned i = 0; i < c.length[s]; ++i) a += c.bit(s, i) ? '1' : '0';
                for (unsigned i = 0; i < c.length[s + 1]; ++i) b += c.bit(s + 1, i) ? '1' : '0';
                o.check(a < b && b.rfind(a, 0) != 0, "code order or prefix, vector " + std::to_string(v));
            }
        }
        for (int v = 0; v < entropy_vectors; ++v) {
            std::vector<std::uint64_t> f(2 + rng() % (entropy_max_sigma - 1));
            for (auto& x : f) x = 1 + rng() % 5000;
            double total = 0;
            for (auto x : f) total += double(x);
            auto c = wavelet::build_hu_tucker(f);
            double avg = double(c.weighted_length(f)) / total, h = wavelet::entropy0(f);
            o.check(h <= avg + 1e-9 && avg <= h + 2, "entropy bound, sigma " + std::to_string(f.size()));
        }
        return o;
    });

    report(5, "compression on 100k generated trips", budget_5_s, [] {
        outcome o;
        const auto& b = big();
        std::vector<double> ratios;
        std::uint64_t wtht_skewed = 0, wm_skewed = 0;
        for (std::uint32_t t : {32u, 128u, 512u}) {
            query::ctr_index idx(b.skewed, {t, wavelet::time_structure::wtht, bits::flavor::plain}, b.d);
            ratios.push_back(double(idx.spatial().payload_bits()) / double(gen::spatial_baseline_bits(idx.n(), idx.sigma_s())));
            if (t == 32) wtht_skewed = idx.temporal().payload_bits();
        }
        wm_skewed = query::ctr_index(b.skewed, {32, wavelet::time_structure::wm, bits::flavor::plain}, b.d).temporal().payload_bits();
        query::ctr_index uni(b.uniform, {32, wavelet::time_structure::wtht, bits::flavor::plain}, b.d);
        double uni_ratio = double(uni.temporal().payload_bits()) / double(gen::temporal_baseline_bits(uni.n(), uni.sigma_t()));
        o.check(ratios[0] <= spatial_ratio_max, "(a) spatial ratio at t=32 is " + fmt(ratios[0]));
        o.check(ratios[0] > ratios[1] && ratios[1] > ratios[2], "(a) spatial ratio not decreasing in t_psi");
        o.check(wtht_skewed < wm_skewed, "(b) WTHT not smaller than WM on skewed times");
        o.check(uni_ratio <= uniform_temporal_ratio_max, "(c) WTHT uniform ratio " + fmt(uni_ratio));
        if (o.ok)
            o.detail = "spatial " + fmt(ratios[0]) + " > " + fmt(ratios[1]) + " > " + fmt(ratios[2]) + "; temporal skewed wtht " +
                       std::to_string(wtht_skewed) + " < wm " + std::to_string(wm_skewed) + " bits; uniform wtht ratio " + fmt(uni_ratio);
        return o;
    });

    report(6, "top-k strategies agree on 100k trips", budget_6_s, [] {
        outcome o;
        const auto& b = big();
        query::ctr_index idx(b.skewed, {}, b.d);
        std::mt19937_64 rng(6);
        std::vector<std::optional<query::time_window>> windows{std::nullopt};
        for (int i = 0; i < 10; ++i) {
            auto t1 = rng() % b.d.sigma(), width = 1 + rng() % 24;
            windows.push_back(query::time_window{t1, std::min<std::uint64_t>(b.d.sigma() - 1, t1 + width - 1)});
        }
        std::size_t checks = 0;
        for (std::uint64_t k : {1, 10, 100})
            for (const auto& w : windows) {
                auto seq = idx.top_k(k, query::topk_strategy::seq, w), bin = idx.top_k(k, query::topk_strategy::bin, w);
                o.check(seq == bin, "top-k k=" + std::to_string(k));
                auto seq_s = idx.top_k_starts(k, query::topk_strategy::seq, w);
                auto bin_s = idx.top_k_starts(k, query::topk_strategy::bin, w);
                o.check(seq_s == bin_s, "top-k-starts k=" + std::to_string(k));
                checks += 2;
            }
        if (o.ok) o.detail = std::to_string(checks) + " comparisons";
        return o;
    });

    report(7, "query latency on 100k trips at t_psi=32", 0, [] {
        outcome o;
        const auto& b = big();
        query::ctr_index idx(b.skewed, {}, b.d);
        gen::bench_options opt;
        opt.queries = latency_queries;
        opt.topk_runs = 0;
        opt.topk_k.clear();
        std::mt19937_64 rng(7);
        auto classes = gen::make_query_classes(b.skewed, b.d.interval_minutes, rng, opt);
        auto row = gen::measure("skewed", idx, classes, opt);
        std::set<std::string> slow{"starts-with-x", "ends-with-x", "from-x-to-y"};
        std::set<std::string> fast{"uses-x", "starts-t", "uses-t", "trips-t"};
        std::string detail;
        for (const auto& [name, us] : row.latency_us) {
            if (slow.count(name)) o.check(us < slow_latency_us, name + " " + fmt(us) + " us");
            if (fast.count(name)) o.check(us < fast_latency_us, name + " " + fmt(us) + " us");
            if (slow.count(name) || fast.count(name)) detail += (detail.empty() ? "" : " ") + name + "=" + fmt(us) + "us";
        }
        if (o.ok) o.detail = detail;
        return o;
    });

    report(8, "serialization round trip and corruption detection", 0, [] {
        outcome o;
        std::mt19937_64 rng(8);
        auto configs = all_configs();
        std::size_t flips = 0;
        for (std::size_t c = 0; c < configs.size(); ++c) {
            auto ds = fixtures::make_random_dataset(rng);
            auto st = trip::make_store(ds.trips, ds.sigma_s, ds.sigma_t);
            query::ctr_index idx(st, configs[c]);
            auto bytes = io::serialize(idx);
            auto back = io::deserialize(bytes);
            o.check(io::serialize(back) == bytes, "re-serialization differs");
            oracle::oracle_store ora(st);
            for (const auto& q : oracle::random_queries(rng, ds.sigma_s, ds.sigma_t, oracle_per_class)) {
                auto got = query::run_query(back, q);
                o.check(got == query::run_query(idx, q) && got == query::run_query(ora, q), "loaded index answer " + query::to_text(q));
            }
            for (int f = 0; f < bit_flips_per_config; ++f) {
                auto copy = bytes;
                auto pos = rng() % copy.size();
                copy[pos] = static_cast<char>(copy[pos] ^ (1 << (rng() % 8)));
                bool detected = false;
                try {
                    io::deserialize(copy);
                } catch (const error&) {
                    detected = true;
                }
                o.check(detected, "undetected flip at byte " + std::to_string(pos));
                ++flips;
            }
        }
        // every bit of the worked-example index
        auto bytes = io::serialize(query::ctr_index(fixtures::example1_store(), {}, fixtures::example1_discretizer()));
        for (std::size_t bit = 0; bit < bytes.size() * 8; ++bit) {
            auto copy = bytes;
            copy[bit / 8] = static_cast<char>(copy[bit / 8] ^ (1 << (bit % 8)));
            bool detected = false;
            try {
                io::deserialize(copy);
            } catch (const error&) {
                detected = true;
            }
            o.check(detected, "undetected flip of example bit " + std::to_string(bit));
            ++flips;
        }
        if (o.ok) o.detail = std::to_string(configs.size()) + " configs, " + std::to_string(flips) + " flips detected";
        return o;
    });

    std::printf("%s: %d of 8 criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
