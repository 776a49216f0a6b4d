#pragma once

#include <cstdint>
#include <span>
#include <vector>

// Cost of the optimal alphabetic binary tree by interval DP, O(sigma^3).
inline std::uint64_t optimal_alphabetic_cost(std::span<const std::uint64_t> w) {
    const std::size_t n = w.size();
    if (n <= 1) return 0;
    std::vector<std::uint64_t> pre(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i) pre[i + 1] = pre[i] + w[i];
    std::vector<std::vector<std::uint64_t>> c(n, std::vector<std::uint64_t>(n, 0));
    for (std::size_t len = 2; len <= n; ++len) {
        for (std::size_t i = 0; i + len <= n; ++i) {
            std::size_t j = i + len - 1;
            std::uint64_t best = UINT64_MAX;
            for (std::size_t k = i; k < j; ++k) best = std::min(best, c[i][k] + c[k + 1][j]);
            c[i][j] = best + pre[j + 1] - pre[i];
        }
    }
    return c[0][n - 1];
}
