#pragma once

#include <array>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctr/query/ctr_index.hpp"
#include "ctr/trip/raw_trip.hpp"

namespace ctr::query {

enum class query_kind {
    starts_with_x,
    ends_with_x,
    from_x_to_y,
    from_x_to_y_strong,
    from_x_to_y_weak,
    uses_x,
    starts_t,
    uses_t,
    trips_t,
    top_k,
    top_k_starts,
};

inline constexpr std::array<std::string_view, 11> query_names{
    "starts-with-x", "ends-with-x", "from-x-to-y", "from-x-to-y-strong", "from-x-to-y-weak", "uses-x",
    "starts-t",      "uses-t",      "trips-t",     "top-k",              "top-k-starts"};

constexpr std::string_view to_string(query_kind k) noexcept { return query_names[static_cast<std::size_t>(k)]; }

/// One parsed protocol line, e.g. `from-x-to-y-strong 2 7 2 10` or `top-k 10 bin 0 15`.
struct query_line {
    query_kind kind{};
    std::vector<std::uint64_t> args;  // node ids, or k for top-k
    std::optional<time_window> window;
    topk_strategy strategy = topk_strategy::seq;
};

inline std::string to_text(const query_line& q) {
    std::string s(to_string(q.kind));
    for (std::size_t i = 0; i < q.args.size(); ++i) {
        s += ' ' + std::to_string(q.args[i]);
        if (i == 0 && (q.kind == query_kind::top_k || q.kind == query_kind::top_k_starts))
            s += q.strategy == topk_strategy::seq ? " seq" : " bin";
    }
    if (q.window) s += ' ' + std::to_string(q.window->t1) + ' ' + std::to_string(q.window->t2);
    return s;
}

inline query_line parse_query(std::string_view line) {
    std::vector<std::string_view> tok;
    for (std::size_t i = 0; i < line.size();) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        auto j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) tok.push_back(line.substr(i, j - i));
        i = j;
    }
    auto bad = [&](const std::string& why) -> query_line {
        fail(errc::malformed_line, "query '" + std::string(line) + "': " + why);
    };
    if (tok.empty()) return bad("empty");
    query_line q;
    std::size_t kind = 0;
    while (kind < query_names.size() && query_names[kind] != tok[0]) ++kind;
    if (kind == query_names.size()) return bad("unknown query");
    q.kind = static_cast<query_kind>(kind);
    auto num = [&](std::size_t i) { return trip::detail::parse_u64(tok[i], 0); };

    std::size_t nodes = 0;
    bool window_optional = false, window_required = false, topk = false;
    switch (q.kind) {
        case query_kind::starts_with_x:
        case query_kind::ends_with_x:
        case query_kind::uses_x: nodes = 1; window_optional = true; break;
        case query_kind::from_x_to_y: nodes = 2; break;
        case query_kind::from_x_to_y_strong:
        case query_kind::from_x_to_y_weak: nodes = 2; window_required = true; break;
        case query_kind::starts_t:
        case query_kind::uses_t:
        case query_kind::trips_t: window_required = true; break;
        case query_kind::top_k:
        case query_kind::top_k_starts: topk = true; window_optional = true; break;
    }
    std::size_t pos = 1;
    if (topk) {
        if (tok.size() < 3) return bad("expected k and seq|bin");
        q.args.push_back(num(1));
        if (tok[2] == "seq") q.strategy = topk_strategy::seq;
        else if (tok[2] == "bin") q.strategy = topk_strategy::bin;
        else return bad("strategy must be seq or bin");
        pos = 3;
    } else {
        if (tok.size() < 1 + nodes) return bad("missing node argument");
        for (std::size_t i = 0; i < nodes; ++i) q.args.push_back(num(1 + i));
        pos = 1 + nodes;
    }
    auto rest = tok.size() - pos;
    if (rest == 2 && (window_optional || window_required)) {
        q.window = time_window{num(pos), num(pos + 1)};
    } else if (rest != 0 || window_required) {
        return bad("wrong number of arguments");
    }
    return q;
}

inline std::string format_topk(const topk_result& r) {
    std::string s;
    for (const auto& [node, c] : r) {
        if (!s.empty()) s += ' ';
        s += std::to_string(node) + ':' + std::to_string(c);
    }
    return s;
}

inline std::string format_estimate(const trips_estimate& e) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4f", e.usage_based);
    return std::to_string(e.starts_based) + ' ' + buf;
}

/// Runs a parsed query against anything exposing the ctr_index query methods.
template <class Engine>
std::string run_query(const Engine& e, const query_line& q) {
    const auto& a = q.args;
    switch (q.kind) {
        case query_kind::starts_with_x:
            return std::to_string(q.window ? e.starts_with_x(a[0], *q.window) : e.starts_with_x(a[0]));
        case query_kind::ends_with_x:
            return std::to_string(q.window ? e.ends_with_x(a[0], *q.window) : e.ends_with_x(a[0]));
        case query_kind::uses_x: return std::to_string(q.window ? e.uses_x(a[0], *q.window) : e.uses_x(a[0]));
        case query_kind::from_x_to_y: return std::to_string(e.from_x_to_y(a[0], a[1]));
        case query_kind::from_x_to_y_strong: return std::to_string(e.from_x_to_y_strong(a[0], a[1], *q.window));
        case query_kind::from_x_to_y_weak: return std::to_string(e.from_x_to_y_weak(a[0], a[1], *q.window));
        case query_kind::starts_t: return std::to_string(e.starts_t(*q.window));
        case query_kind::uses_t: return std::to_string(e.uses_t(*q.window));
        case query_kind::trips_t: return format_estimate(e.trips_t_estimate(*q.window));
        case query_kind::top_k: return format_topk(e.top_k(a[0], q.strategy, q.window));
        case query_kind::top_k_starts: return format_topk(e.top_k_starts(a[0], q.strategy, q.window));
    }
    return {};
}

}  // namespace ctr::query
