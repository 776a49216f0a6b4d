#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ctr/error.hpp"

namespace ctr::wavelet {

/// Order-preserving prefix code. Codeword of symbol c is the low `length[c]`
/// bits of `bits[c]`, read most significant bit first.
struct hu_tucker_code {
    std::vector<std::uint64_t> bits;
    std::vector<std::uint8_t> length;

    std::size_t sigma() const noexcept { return bits.size(); }

    bool bit(std::size_t c, unsigned depth) const noexcept { return (bits[c] >> (length[c] - 1 - depth)) & 1; }

    std::uint64_t weighted_length(std::span<const std::uint64_t> freqs) const {
        std::uint64_t total = 0;
        for (std::size_t c = 0; c < freqs.size(); ++c) total += freqs[c] * length[c];
        return total;
    }
};

namespace detail {

struct ht_node {
    std::uint64_t weight;
    bool leaf;  // "square" node: blocks compatibility across it
    int left = -1, right = -1;
};

}  // namespace detail

/// Leaf depths of the Hu-Tucker combination tree (phase 1 + level assignment).
/// O(sigma^2) time. Weights must be positive.
inline std::vector<unsigned> hu_tucker_levels(std::span<const std::uint64_t> weights) {
    const std::size_t n = weights.size();
    if (n == 0) fail(errc::empty_alphabet, "Hu-Tucker code over an empty alphabet");
    if (n == 1) return {0};

    std::vector<detail::ht_node> nodes;
    nodes.reserve(2 * n);
    std::vector<int> seq(n);
    for (std::size_t i = 0; i < n; ++i) {
        nodes.push_back({weights[i], true});
        seq[i] = static_cast<int>(i);
    }

    // Combination phase: repeatedly merge the minimum-weight compatible pair
    // (no square strictly between), ties to the leftmost pair.
    while (seq.size() > 1) {
        const std::size_t m = seq.size();
        std::size_t best_i = 0, best_j = 1;
        std::uint64_t best_w = UINT64_MAX;
        bool have_min = false;
        std::uint64_t min_w = 0;
        std::size_t min_idx = 0;  // minimum over (i, next square after i]
        for (std::size_t ii = m; ii-- > 0;) {
            const auto& cur = nodes[seq[ii]];
            if (have_min) {
                auto w = cur.weight + min_w;
                if (w < best_w || (w == best_w && (ii < best_i || (ii == best_i && min_idx < best_j)))) {
                    best_w = w;
                    best_i = ii;
                    best_j = min_idx;
                }
            }
            if (cur.leaf) {
                min_w = cur.weight;
                min_idx = ii;
                have_min = true;
            } else if (!have_min || cur.weight <= min_w) {
                min_w = cur.weight;
                min_idx = ii;
                have_min = true;
            }
        }
        nodes.push_back({best_w, false, seq[best_i], seq[best_j]});
        seq[best_i] = static_cast<int>(nodes.size() - 1);
        seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(best_j));
    }

    std::vector<unsigned> level(n, 0);
    std::vector<std::pair<int, unsigned>> stack{{seq[0], 0u}};
    while (!stack.empty()) {
        auto [v, d] = stack.back();
        stack.pop_back();
        if (nodes[v].leaf) {
            level[v] = d;
        } else {
            stack.push_back({nodes[v].left, d + 1});
            stack.push_back({nodes[v].right, d + 1});
        }
    }
    return level;
}

/// Rebuilds the alphabetic tree with the given leaf depths (left to right)
/// and returns the resulting codewords. Fails if no such tree exists.
inline hu_tucker_code code_from_levels(std::span<const unsigned> levels) {
    hu_tucker_code code;
    const auto n = levels.size();
    code.bits.assign(n, 0);
    code.length.assign(n, 0);
    if (n == 1) return code;

    for (auto l : levels)
        if (l == 0 || l > 64) fail(errc::configuration_unsupported, "Hu-Tucker codeword length outside [1,64]");

    // Canonical alphabetic assignment: the next codeword is the successor of the
    // previous one, truncated or extended to the new length.
    std::uint64_t prev = 0;
    unsigned prev_len = levels[0];
    code.length[0] = static_cast<std::uint8_t>(prev_len);
    for (std::size_t i = 1; i < n; ++i) {
        auto len = levels[i];
        if (prev_len < 64 && prev + 1 == (std::uint64_t(1) << prev_len))
            fail(errc::configuration_unsupported, "code lengths do not form an alphabetic tree");
        std::uint64_t next = prev + 1;
        if (len >= prev_len) {
            next <<= (len - prev_len);
        } else {
            auto drop = prev_len - len;
            if (next & ((std::uint64_t(1) << drop) - 1))
                fail(errc::configuration_unsupported, "code lengths do not form an alphabetic tree");
            next >>= drop;
        }
        code.bits[i] = next;
        code.length[i] = static_cast<std::uint8_t>(len);
        prev = next;
        prev_len = len;
    }
    // the last codeword must be all ones for the tree to be full
    if (prev_len < 64 && prev + 1 != (std::uint64_t(1) << prev_len))
        fail(errc::configuration_unsupported, "code lengths do not form a full alphabetic tree");
    return code;
}

/// Optimal alphabetic prefix code. Zero frequencies are raised to 1 so that
/// every symbol of the alphabet keeps a codeword.
inline hu_tucker_code build_hu_tucker(std::span<const std::uint64_t> freqs) {
    if (freqs.empty()) fail(errc::empty_alphabet, "Hu-Tucker code over an empty alphabet");
    std::vector<std::uint64_t> w(freqs.begin(), freqs.end());
    for (auto& x : w)
        if (x == 0) x = 1;
    auto levels = hu_tucker_levels(w);
    return code_from_levels(levels);
}

/// Zero-order empirical entropy (bits per symbol) of a frequency vector.
inline double entropy0(std::span<const std::uint64_t> freqs) {
    double total = 0;
    for (auto f : freqs) total += static_cast<double>(f);
    if (total == 0) return 0;
    double h = 0;
    for (auto f : freqs) {
        if (f == 0) continue;
        double p = static_cast<double>(f) / total;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace ctr::wavelet
