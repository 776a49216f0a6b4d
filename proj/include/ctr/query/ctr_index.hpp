#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "ctr/align/temporal_align.hpp"
#include "ctr/csa/spatial_index.hpp"
#include "ctr/trip/trip_store.hpp"
#include "ctr/wavelet/temporal_index.hpp"

namespace ctr::query {

struct build_config {
    std::uint32_t psi_sample = 32;
    wavelet::time_structure structure = wavelet::time_structure::wtht;
    bits::flavor bitvector = bits::flavor::plain;

    bool operator==(const build_config&) const = default;
};

struct time_window {
    std::uint64_t t1 = 0, t2 = 0;
};

enum class topk_strategy { seq, bin };

/// (node, count) pairs ordered by count descending, then node ascending.
using topk_result = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

struct trips_estimate {
    std::uint64_t starts_based = 0;
    double usage_based = 0.0;
};

/// Spatial CSA plus temporal wavelet structure over the same suffix order.
class ctr_index {
public:
    ctr_index() = default;

    ctr_index(const trip::trip_store& st, const build_config& cfg, const trip::time_discretizer& d = {})
        : cfg_(cfg), discretizer_(d), sigma_t_(st.sigma_t) {
        if (cfg.psi_sample == 0) fail(errc::configuration_unsupported, "psi sample interval must be positive");
        auto sa = csa::suffix_order(st);
        spatial_ = csa::spatial_index(st, sa, cfg.psi_sample);
        auto times = align::align_times(st, sa);
        temporal_ = wavelet::temporal_index(times.icode_psi, sigma_t_, cfg.structure, cfg.bitvector);
    }

    static ctr_index build(std::span<const trip::raw_trip> trips, const trip::time_discretizer& d,
                           const build_config& cfg, std::uint64_t sigma_s = 0) {
        auto resolved = d.resolved(trips);
        return ctr_index(trip::build_store(trips, resolved, sigma_s), cfg, resolved);
    }

    const build_config& config() const noexcept { return cfg_; }
    const trip::time_discretizer& discretizer() const noexcept { return discretizer_; }
    const csa::spatial_index& spatial() const noexcept { return spatial_; }
    const wavelet::temporal_index& temporal() const noexcept { return temporal_; }
    std::uint64_t n() const noexcept { return spatial_.size(); }
    std::uint64_t z() const noexcept { return spatial_.trips(); }
    std::uint64_t sigma_s() const noexcept { return spatial_.sigma_s(); }
    std::uint64_t sigma_t() const noexcept { return sigma_t_; }
    double mean_length() const noexcept { return double(n() - z() - 1) / double(z()); }

    // spatial

    std::uint64_t starts_with_x(std::uint64_t x) const { return known(x) ? spatial_.bsearch({csa::terminator, x}).size() : 0; }

    std::uint64_t ends_with_x(std::uint64_t x) const { return known(x) ? spatial_.bsearch({x, csa::terminator}).size() : 0; }

    std::uint64_t from_x_to_y(std::uint64_t x, std::uint64_t y) const {
        return known(x) && known(y) ? spatial_.bsearch({y, csa::terminator, x}).size() : 0;
    }

    std::uint64_t uses_x(std::uint64_t x) const { return known(x) ? spatial_.frequency(x) : 0; }

    // spatio-temporal

    std::uint64_t starts_with_x(std::uint64_t x, time_window w) const {
        check(w);
        return known(x) ? count(spatial_.bsearch({csa::terminator, x}), w) : 0;
    }

    std::uint64_t ends_with_x(std::uint64_t x, time_window w) const {
        check(w);
        return known(x) ? count(spatial_.bsearch({x, csa::terminator}), w) : 0;
    }

    std::uint64_t uses_x(std::uint64_t x, time_window w) const {
        check(w);
        return known(x) ? count(spatial_.node_range(x), w) : 0;
    }

    /// Trips from x to y that start and end inside the window.
    std::uint64_t from_x_to_y_strong(std::uint64_t x, std::uint64_t y, time_window w) const {
        check(w);
        auto s = start_split(x, y, w);
        if (!s) return 0;
        return s->lp <= s->rp ? temporal_.count(s->lp, s->rp, w.t1, w.t2) : 0;
    }

    /// Trips from x to y whose [start, end] overlaps the window.
    std::uint64_t from_x_to_y_weak(std::uint64_t x, std::uint64_t y, time_window w) const {
        check(w);
        auto s = start_split(x, y, w);
        if (!s) return 0;
        std::uint64_t total = s->rp + 1 - s->lp;
        if (s->l < s->lp) total += temporal_.count(s->l, s->lp - 1, w.t1, sigma_t_ - 1);
        return total;
    }

    // temporal

    std::uint64_t starts_t(time_window w) const {
        check(w);
        return temporal_.count(2, z() + 1, w.t1, w.t2);
    }

    std::uint64_t uses_t(time_window w) const {
        check(w);
        return temporal_.count(z() + 2, n(), w.t1, w.t2);
    }

    trips_estimate trips_t_estimate(time_window w) const {
        return {starts_t(w), double(uses_t(w)) / mean_length()};
    }

    // top-k

    topk_result top_k(std::uint64_t k, topk_strategy s, std::optional<time_window> w = std::nullopt) const {
        if (w) check(*w);
        auto weight = [&](csa::range r) { return w ? count(r, *w) : r.size(); };
        if (s == topk_strategy::seq)
            return seq_top(k, [&](std::uint64_t p) { return weight(spatial_.group(p)); });
        return bin_top(k, {spatial_.group(2).l, n()}, weight,
                       [&](std::uint64_t m) { return spatial_.D().select1(m); });
    }

    topk_result top_k_starts(std::uint64_t k, topk_strategy s, std::optional<time_window> w = std::nullopt) const {
        if (w) check(*w);
        auto weight = [&](csa::range r) { return w ? count(r, *w) : r.size(); };
        auto starts = [&](std::uint64_t p) { return spatial_.bsearch({csa::terminator, spatial_.V(p)}); };
        if (s == topk_strategy::seq) return seq_top(k, [&](std::uint64_t p) { return weight(starts(p)); });
        return bin_top(k, {2, z() + 1}, weight, [&](std::uint64_t m) { return starts(m).l; });
    }

    /// Build configuration, time alphabet and discretizer.
    struct config_block {
        build_config cfg;
        std::uint64_t sigma_t = 0;
        trip::time_discretizer discretizer;
    };

    void save_config(io::binary_writer& w) const {
        w.u32(cfg_.psi_sample);
        w.u8(static_cast<std::uint8_t>(cfg_.structure));
        w.u8(static_cast<std::uint8_t>(cfg_.bitvector));
        w.u64(sigma_t_);
        discretizer_.save(w);
    }

    static config_block load_config(io::binary_reader& r) {
        config_block c;
        c.cfg.psi_sample = r.u32();
        auto s = r.u8(), f = r.u8();
        if ((s != 1 && s != 2) || f > 3) fail(errc::corrupt_index, "build configuration");
        c.cfg.structure = static_cast<wavelet::time_structure>(s);
        c.cfg.bitvector = static_cast<bits::flavor>(f);
        c.sigma_t = r.u64();
        c.discretizer = trip::time_discretizer::load(r);
        return c;
    }

    static ctr_index assemble(config_block c, csa::spatial_index sp, wavelet::temporal_index tm) {
        if (tm.size() != sp.size() || tm.sigma() != c.sigma_t || tm.structure() != c.cfg.structure ||
            tm.flavor() != c.cfg.bitvector || sp.psi_sample() != c.cfg.psi_sample)
            fail(errc::corrupt_index, "section mismatch");
        ctr_index x;
        x.cfg_ = c.cfg;
        x.sigma_t_ = c.sigma_t;
        x.discretizer_ = std::move(c.discretizer);
        x.spatial_ = std::move(sp);
        x.temporal_ = std::move(tm);
        return x;
    }

private:
    struct split {
        std::uint64_t l, lp, rp;  // Y$X range start and its mapped [l', r']
    };

    bool known(std::uint64_t x) const noexcept { return x >= 1 && x <= spatial_.sigma_s(); }

    void check(time_window w) const {
        if (w.t1 > w.t2 || w.t2 >= sigma_t_)
            fail(errc::window_invalid, "window [" + std::to_string(w.t1) + "," + std::to_string(w.t2) + "]");
    }

    std::uint64_t count(csa::range r, time_window w) const {
        return r.empty() ? 0 : temporal_.count(r.l, r.r, w.t1, w.t2);
    }

    // The Y$X range [l,r] maps through Ψ onto consecutive terminator entries
    // [α, α+r-l] whose aligned start times are non-decreasing. [l', r'] is
    // the part of [l,r] whose trips start inside the window.
    std::optional<split> start_split(std::uint64_t x, std::uint64_t y, time_window w) const {
        if (!known(x) || !known(y)) return std::nullopt;
        auto rg = spatial_.bsearch({y, csa::terminator, x});
        if (rg.empty()) return std::nullopt;
        auto alpha = spatial_.psi_at(rg.l);
        auto beta = alpha + rg.r - rg.l;
        auto [a2, b2] = temporal_.count_lr(alpha, beta, w.t1, w.t2);
        return split{rg.l, rg.l + (a2 - alpha), rg.l + b2 - alpha};
    }

    static bool better(const std::pair<std::uint64_t, std::uint64_t>& a, const std::pair<std::uint64_t, std::uint64_t>& b) {
        return a.second != b.second ? a.second > b.second : a.first < b.first;
    }

    template <class Weight>
    topk_result seq_top(std::uint64_t k, Weight&& weight) const {
        // min-heap on `better`: the root is the weakest kept entry
        std::vector<std::pair<std::uint64_t, std::uint64_t>> heap;
        for (std::uint64_t p = 2; p <= spatial_.vocab_size(); ++p) {
            auto c = weight(p);
            if (c == 0) continue;
            std::pair<std::uint64_t, std::uint64_t> e{spatial_.V(p), c};
            if (heap.size() < k) {
                heap.push_back(e);
                std::push_heap(heap.begin(), heap.end(), better);
            } else if (k > 0 && better(e, heap.front())) {
                std::pop_heap(heap.begin(), heap.end(), better);
                heap.back() = e;
                std::push_heap(heap.begin(), heap.end(), better);
            }
        }
        std::sort(heap.begin(), heap.end(), better);
        return heap;
    }

    // Binary partition over vocabulary indices [i, j] and their suffix
    // range [l, r]; `split_at(m)` gives where V[m]'s part of the range starts.
    template <class Weight, class SplitAt>
    topk_result bin_top(std::uint64_t k, csa::range whole, Weight&& weight, SplitAt&& split_at) const {
        struct seg {
            std::uint64_t prio, i, j;
            csa::range r;
        };
        auto lower = [](const seg& a, const seg& b) { return a.prio != b.prio ? a.prio < b.prio : a.i > b.i; };
        std::priority_queue<seg, std::vector<seg>, decltype(lower)> q(lower);
        topk_result out;
        if (spatial_.vocab_size() < 2 || k == 0) return out;
        q.push({weight(whole), 2, spatial_.vocab_size(), whole});
        while (out.size() < k && !q.empty()) {
            auto s = q.top();
            q.pop();
            if (s.prio == 0) break;
            if (s.i == s.j) {
                out.emplace_back(spatial_.V(s.i), s.prio);
                continue;
            }
            auto m = s.i + (s.j - s.i + 1) / 2;
            auto at = split_at(m);
            csa::range left{s.r.l, at - 1}, right{at, s.r.r};
            q.push({weight(left), s.i, m - 1, left});
            q.push({weight(right), m, s.j, right});
        }
        return out;
    }

    build_config cfg_;
    trip::time_discretizer discretizer_;
    std::uint64_t sigma_t_ = 0;
    csa::spatial_index spatial_;
    wavelet::temporal_index temporal_;
};

}  // namespace ctr::query
