#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ctr/gen/bench.hpp"
#include "ctr/gen/generator.hpp"
#include "ctr/io/index_file.hpp"
#include "ctr/oracle/oracle.hpp"
#include "ctr/oracle/query_sampler.hpp"

using namespace ctr;

namespace {

struct time_flags {
    std::uint32_t interval = 5;
    std::string mode = "linear";
    std::uint64_t origin = 0, horizon = 0;
    std::string day_table;

    void add(CLI::App* app) {
        app->add_option("--interval", interval, "Minutes per time code")->check(CLI::Range(1u, 1440u));
        app->add_option("--mode", mode, "Time encoding")
            ->check(CLI::IsMember({"linear", "cyclic-day", "cyclic-week", "day-types"}));
        app->add_option("--origin", origin, "Linear mode: first timestamp of code 0");
        app->add_option("--horizon", horizon, "Linear mode: number of codes (0 = from data)");
        app->add_option("--day-table", day_table, "Day-types mode: YYYY-MM-DD class lines")->check(CLI::ExistingFile);
    }

    trip::time_discretizer discretizer() const {
        trip::time_discretizer d;
        d.interval_minutes = interval;
        d.mode = *trip::parse_time_mode(mode);
        d.origin = origin;
        d.horizon = horizon;
        if (!day_table.empty()) {
            std::ifstream in(day_table);
            d.day_table = trip::parse_day_table(in);
        }
        return d;
    }
};

struct config_flags {
    std::uint32_t psi_sample = 32;
    std::string structure = "wtht", bitvector = "plain";

    void add(CLI::App* app) {
        app->add_option("--psi-sample", psi_sample, "Psi sampling interval")->check(CLI::IsMember({32u, 128u, 512u}));
        app->add_option("--time-struct", structure, "Temporal structure")->check(CLI::IsMember({"wtht", "wm"}));
        app->add_option("--bitvector", bitvector, "Bitvector flavor")
            ->check(CLI::IsMember({"plain", "rrr32", "rrr64", "rrr128"}));
    }

    query::build_config config() const {
        return {psi_sample, *wavelet::parse_time_structure(structure), *bits::parse_flavor(bitvector)};
    }
};

std::uint64_t seed_or_env(std::optional<std::uint64_t> flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CTR_SEED")) return trip::detail::parse_u64(env, 0);
    return 1;
}

std::vector<trip::raw_trip> read_trips(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io_failure, "cannot read " + path);
    return trip::parse_trips(in);
}

void print_stats(const query::ctr_index& idx, std::size_t file_bytes) {
    auto sp = idx.spatial().payload_bits(), tm = idx.temporal().payload_bits();
    auto sb = gen::spatial_baseline_bits(idx.n(), idx.sigma_s()), tb = gen::temporal_baseline_bits(idx.n(), idx.sigma_t());
    std::printf("n=%llu z=%llu sigma_s=%llu sigma_t=%llu\n", (unsigned long long)idx.n(), (unsigned long long)idx.z(),
                (unsigned long long)idx.sigma_s(), (unsigned long long)idx.sigma_t());
    std::printf("time=%s psi_sample=%u time_struct=%s bitvector=%s\n", idx.discretizer().describe().c_str(),
                idx.config().psi_sample, std::string(wavelet::to_string(idx.config().structure)).c_str(),
                std::string(bits::to_string(idx.config().bitvector)).c_str());
    std::printf("spatial_bits=%llu baseline=%llu ratio=%.4f\n", (unsigned long long)sp, (unsigned long long)sb, double(sp) / double(sb));
    std::printf("temporal_bits=%llu baseline=%llu ratio=%.4f\n", (unsigned long long)tm, (unsigned long long)tb, double(tm) / double(tb));
    std::printf("file_bytes=%zu\n", file_bytes);
}

int cmd_build(const std::string& input, const time_flags& tf, const config_flags& cf, const std::string& output) {
    auto idx = query::ctr_index::build(read_trips(input), tf.discretizer(), cf.config());
    auto bytes = io::serialize(idx);
    std::ofstream out(output, std::ios::binary);
    if (!out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()))) fail(errc::io_failure, "cannot write " + output);
    print_stats(idx, bytes.size());
    return 0;
}

int cmd_query(const std::string& index, const std::string& file) {
    auto idx = io::load_index(index);
    std::ifstream fin;
    if (!file.empty()) {
        fin.open(file);
        if (!fin) fail(errc::io_failure, "cannot read " + file);
    }
    std::istream& in = file.empty() ? std::cin : fin;
    std::string line;
    std::size_t line_no = 0;
    int status = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            std::cout << query::run_query(idx, query::parse_query(line)) << '\n';
        } catch (const error& e) {
            std::cerr << "line " << line_no << ": " << e.what() << '\n';
            status = 1;
        }
    }
    return status;
}

int cmd_generate(const std::string& network, const std::string& dump_network, std::size_t count,
                 const std::string& times, std::uint32_t days, std::uint64_t seed, const std::string& output) {
    gen::network_model m = gen::default_network();
    if (!network.empty()) {
        std::ifstream in(network);
        if (!in) fail(errc::io_failure, "cannot read " + network);
        m = gen::parse_network(in);
    }
    if (!dump_network.empty()) {
        std::ofstream out(dump_network);
        gen::write_network(out, m);
    }
    if (count == 0) return 0;
    std::mt19937_64 rng(seed);
    auto paths = gen::generate_trips(m, count, rng);
    gen::day_model dm;
    dm.days = days;
    auto trips = gen::generate_times(paths, gen::time_distribution::of(gen::parse_time_kind(times)), rng, dm);
    if (output.empty() || output == "-") {
        trip::write_trips(std::cout, trips);
    } else {
        std::ofstream out(output);
        trip::write_trips(out, trips);
        if (!out) fail(errc::io_failure, "cannot write " + output);
    }
    return 0;
}

int cmd_bench(const std::vector<std::string>& inputs, const time_flags& tf, const std::vector<std::uint32_t>& samples,
              const std::vector<std::string>& structures, const std::vector<std::string>& flavors,
              gen::bench_options o, const std::string& output) {
    std::vector<gen::bench_dataset> datasets;
    for (const auto& path : inputs)
        datasets.push_back({std::filesystem::path(path).stem().string(), read_trips(path), tf.discretizer()});
    std::vector<query::build_config> configs;
    for (const auto& s : structures)
        for (const auto& f : flavors)
            for (auto t : samples) configs.push_back({t, *wavelet::parse_time_structure(s), *bits::parse_flavor(f)});
    auto rows = gen::run_bench(datasets, configs, o);
    if (output.empty() || output == "-") {
        gen::write_csv(std::cout, rows);
    } else {
        std::ofstream out(output);
        gen::write_csv(out, rows);
    }
    return 0;
}

int cmd_verify(const std::string& input, const std::string& index, const time_flags& tf, const config_flags& cf,
               std::size_t per_class, std::uint64_t seed) {
    auto trips = read_trips(input);
    auto d = tf.discretizer().resolved(trips);
    auto st = trip::build_store(trips, d);
    auto idx = index.empty() ? io::deserialize(io::serialize(query::ctr_index(st, cf.config(), d))) : io::load_index(index);
    oracle::oracle_store ora(st);
    std::mt19937_64 rng(seed);
    auto queries = oracle::random_queries(rng, st.sigma_s, st.sigma_t, per_class);
    for (const auto& q : queries) {
        std::string expected, got;
        try {
            expected = query::run_query(ora, q);
        } catch (const error& e) {
            expected = std::string("error ") + std::string(to_string(e.code()));
        }
        try {
            got = query::run_query(idx, q);
        } catch (const error& e) {
            got = std::string("error ") + std::string(to_string(e.code()));
        }
        if (expected != got) {
            std::cout << "FAIL query: " << query::to_text(q) << "\n  expected: " << expected << "\n  got: " << got << '\n';
            std::cout << "  reproduce: ctr verify --input " << input << (index.empty() ? "" : " --index " + index)
                      << " --queries " << per_class << " --seed " << seed << '\n';
            return 1;
        }
    }
    std::cout << "PASS " << queries.size() << " queries (" << per_class << " per class, seed " << seed << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compressed trip representation: build, query, generate, bench, verify"};
    app.require_subcommand(1);

    std::string input, output, index, file, network, dump_network, times = "skewed";
    time_flags tf;
    config_flags cf;
    std::optional<std::uint64_t> seed;
    std::size_t count = 10000, per_class = 100;
    std::uint32_t days = 1;

    auto* build = app.add_subcommand("build", "Build an index file from a trips file");
    build->add_option("--input", input, "Trips file")->required()->check(CLI::ExistingFile);
    build->add_option("--output", output, "Index file to write")->required();
    tf.add(build);
    cf.add(build);

    auto* query_cmd = app.add_subcommand("query", "Answer query lines from stdin or --file");
    query_cmd->add_option("--index", index, "Index file")->required()->check(CLI::ExistingFile);
    query_cmd->add_option("--file", file, "Query file")->check(CLI::ExistingFile);

    auto* generate = app.add_subcommand("generate", "Generate synthetic trips over a line network");
    generate->add_option("--network", network, "Network file (default: built-in 23-line model)")->check(CLI::ExistingFile);
    generate->add_option("--dump-network", dump_network, "Write the network model to this file");
    generate->add_option("--trips", count, "Number of trips");
    generate->add_option("--times", times, "Start-time distribution")
        ->check(CLI::IsMember({"uniform", "skewed", "very-skewed"}));
    generate->add_option("--days", days, "Number of consecutive days from 2023-01-02")->check(CLI::Range(1u, 3650u));
    generate->add_option("--seed", seed, "Random seed (default: CTR_SEED or 1)");
    generate->add_option("--output", output, "Trips file (default: stdout)");

    auto* bench = app.add_subcommand("bench", "Space and latency report as CSV");
    std::vector<std::string> bench_inputs, structures{"wtht", "wm"}, flavors{"plain", "rrr32", "rrr64", "rrr128"};
    std::vector<std::uint32_t> samples{32, 128, 512};
    gen::bench_options bo;
    bench->add_option("--input", bench_inputs, "Trips files, one dataset each")->required()->check(CLI::ExistingFile);
    tf.add(bench);
    bench->add_option("--psi-sample", samples, "Psi sampling intervals")->check(CLI::IsMember({32u, 128u, 512u}));
    bench->add_option("--time-struct", structures, "Temporal structures")->check(CLI::IsMember({"wtht", "wm"}));
    bench->add_option("--bitvector", flavors, "Bitvector flavors")->check(CLI::IsMember({"plain", "rrr32", "rrr64", "rrr128"}));
    bench->add_option("--queries", bo.queries, "Queries per class");
    bench->add_option("--topk-runs", bo.topk_runs, "Runs per top-k class");
    bench->add_option("--seed", seed, "Random seed (default: CTR_SEED or 1)");
    bench->add_option("--output", output, "CSV file (default: stdout)");

    auto* verify = app.add_subcommand("verify", "Cross-check the index against brute force");
    verify->add_option("--input", input, "Trips file")->required()->check(CLI::ExistingFile);
    verify->add_option("--index", index, "Check this index file instead of a fresh build")->check(CLI::ExistingFile);
    verify->add_option("--queries", per_class, "Random queries per class");
    verify->add_option("--seed", seed, "Random seed (default: CTR_SEED or 1)");
    tf.add(verify);
    cf.add(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        auto code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*build) return cmd_build(input, tf, cf, output);
        if (*query_cmd) return cmd_query(index, file);
        if (*generate) return cmd_generate(network, dump_network, count, times, days, seed_or_env(seed), output);
        if (*bench) {
            bo.seed = seed_or_env(seed);
            return cmd_bench(bench_inputs, tf, samples, structures, flavors, bo, output);
        }
        if (*verify) return cmd_verify(input, index, tf, cf, per_class, seed_or_env(seed));
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
