#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "ctr/query/ctr_index.hpp"
#include "ctr/trip/trip_store.hpp"

namespace ctr::oracle {

using query::time_window;
using query::topk_result;
using query::topk_strategy;
using query::trips_estimate;

/// Reference answers by scanning every trip. Mirrors ctr_index's queries.
class oracle_store {
public:
    oracle_store(std::vector<trip::coded_trip> trips, std::uint64_t sigma_s, std::uint64_t sigma_t)
        : trips_(std::move(trips)), sigma_s_(sigma_s), sigma_t_(sigma_t) {
        if (trips_.empty()) fail(errc::empty_dataset, "no trips");
        if (sigma_s_ == 0)
            for (const auto& t : trips_) sigma_s_ = std::max(sigma_s_, *std::max_element(t.nodes.begin(), t.nodes.end()));
    }

    explicit oracle_store(const trip::trip_store& st) : oracle_store(st.trips, st.sigma_s, st.sigma_t) {}

    std::uint64_t sigma_s() const noexcept { return sigma_s_; }
    std::uint64_t sigma_t() const noexcept { return sigma_t_; }
    std::uint64_t z() const noexcept { return trips_.size(); }

    std::uint64_t starts_with_x(std::uint64_t x) const { return tally([&](const auto& t) { return t.nodes.front() == x; }); }
    std::uint64_t ends_with_x(std::uint64_t x) const { return tally([&](const auto& t) { return t.nodes.back() == x; }); }

    std::uint64_t from_x_to_y(std::uint64_t x, std::uint64_t y) const {
        return tally([&](const auto& t) { return t.nodes.front() == x && t.nodes.back() == y; });
    }

    std::uint64_t uses_x(std::uint64_t x) const {
        std::uint64_t c = 0;
        for (const auto& t : trips_) c += static_cast<std::uint64_t>(std::count(t.nodes.begin(), t.nodes.end(), x));
        return c;
    }

    std::uint64_t starts_with_x(std::uint64_t x, time_window w) const {
        check(w);
        return tally([&](const auto& t) { return t.nodes.front() == x && in(t.codes.front(), w); });
    }

    std::uint64_t ends_with_x(std::uint64_t x, time_window w) const {
        check(w);
        return tally([&](const auto& t) { return t.nodes.back() == x && in(t.codes.back(), w); });
    }

    std::uint64_t uses_x(std::uint64_t x, time_window w) const {
        check(w);
        std::uint64_t c = 0;
        for (const auto& t : trips_)
            for (std::size_t j = 0; j < t.nodes.size(); ++j) c += t.nodes[j] == x && in(t.codes[j], w);
        return c;
    }

    std::uint64_t from_x_to_y_strong(std::uint64_t x, std::uint64_t y, time_window w) const {
        check(w);
        return tally([&](const auto& t) {
            return t.nodes.front() == x && t.nodes.back() == y && in(t.codes.front(), w) && in(t.codes.back(), w);
        });
    }

    std::uint64_t from_x_to_y_weak(std::uint64_t x, std::uint64_t y, time_window w) const {
        check(w);
        return tally([&](const auto& t) {
            return t.nodes.front() == x && t.nodes.back() == y && t.codes.front() <= w.t2 && t.codes.back() >= w.t1;
        });
    }

    std::uint64_t starts_t(time_window w) const {
        check(w);
        return tally([&](const auto& t) { return in(t.codes.front(), w); });
    }

    std::uint64_t uses_t(time_window w) const {
        check(w);
        std::uint64_t c = 0;
        for (const auto& t : trips_)
            for (auto code : t.codes) c += in(code, w);
        return c;
    }

    trips_estimate trips_t_estimate(time_window w) const {
        std::uint64_t entries = 0;
        for (const auto& t : trips_) entries += t.nodes.size();
        return {starts_t(w), double(uses_t(w)) / (double(entries) / double(trips_.size()))};
    }

    topk_result top_k(std::uint64_t k, topk_strategy, std::optional<time_window> w = std::nullopt) const {
        if (w) check(*w);
        std::vector<std::uint64_t> freq(sigma_s_ + 1, 0);
        for (const auto& t : trips_)
            for (std::size_t j = 0; j < t.nodes.size(); ++j)
                if (!w || in(t.codes[j], *w)) ++freq[t.nodes[j]];
        return best(freq, k);
    }

    topk_result top_k_starts(std::uint64_t k, topk_strategy, std::optional<time_window> w = std::nullopt) const {
        if (w) check(*w);
        std::vector<std::uint64_t> freq(sigma_s_ + 1, 0);
        for (const auto& t : trips_)
            if (!w || in(t.codes.front(), *w)) ++freq[t.nodes.front()];
        return best(freq, k);
    }

private:
    static bool in(std::uint64_t c, time_window w) noexcept { return c >= w.t1 && c <= w.t2; }

    void check(time_window w) const {
        if (w.t1 > w.t2 || w.t2 >= sigma_t_) fail(errc::window_invalid, "window");
    }

    template <class Pred>
    std::uint64_t tally(Pred&& p) const {
        return static_cast<std::uint64_t>(std::count_if(trips_.begin(), trips_.end(), p));
    }

    static topk_result best(const std::vector<std::uint64_t>& freq, std::uint64_t k) {
        topk_result all;
        for (std::uint64_t x = 1; x < freq.size(); ++x)
            if (freq[x] > 0) all.emplace_back(x, freq[x]);
        std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
            return a.second != b.second ? a.second > b.second : a.first < b.first;
        });
        if (all.size() > k) all.resize(k);
        return all;
    }

    std::vector<trip::coded_trip> trips_;
    std::uint64_t sigma_s_;
    std::uint64_t sigma_t_;
};

}  // namespace ctr::oracle
