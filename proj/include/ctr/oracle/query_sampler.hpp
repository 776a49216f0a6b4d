#pragma once

#include <cstdint>
#include <vector>

#include "ctr/query/protocol.hpp"

namespace ctr::oracle {

/// `per_class` random queries of every kind. Node ids reach σs+2 so unseen
/// nodes are exercised; top-k sizes reach σs+3.
template <class Rng>
std::vector<query::query_line> random_queries(Rng& rng, std::uint64_t sigma_s, std::uint64_t sigma_t, std::size_t per_class) {
    using query::query_kind;
    std::vector<query::query_line> out;
    auto node = [&] { return 1 + rng() % (sigma_s + 2); };
    auto window = [&] {
        auto a = rng() % sigma_t, b = rng() % sigma_t;
        if (a > b) std::swap(a, b);
        return query::time_window{a, b};
    };
    for (std::size_t i = 0; i < per_class; ++i) {
        for (std::size_t k = 0; k < query::query_names.size(); ++k) {
            query::query_line q;
            q.kind = static_cast<query_kind>(k);
            switch (q.kind) {
                case query_kind::starts_with_x:
                case query_kind::ends_with_x:
                case query_kind::uses_x:
                    q.args = {node()};
                    if (rng() % 2) q.window = window();
                    break;
                case query_kind::from_x_to_y: q.args = {node(), node()}; break;
                case query_kind::from_x_to_y_strong:
                case query_kind::from_x_to_y_weak:
                    q.args = {node(), node()};
                    q.window = window();
                    break;
                case query_kind::starts_t:
                case query_kind::uses_t:
                case query_kind::trips_t: q.window = window(); break;
                case query_kind::top_k:
                case query_kind::top_k_starts:
                    q.args = {1 + rng() % (sigma_s + 3)};
                    q.strategy = rng() % 2 ? query::topk_strategy::seq : query::topk_strategy::bin;
                    if (rng() % 2) q.window = window();
                    break;
            }
            out.push_back(q);
        }
    }
    return out;
}

}  // namespace ctr::oracle
