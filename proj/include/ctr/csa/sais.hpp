#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "ctr/error.hpp"

namespace ctr::csa {

namespace detail {

inline constexpr std::uint32_t empty_slot = std::numeric_limits<std::uint32_t>::max();

inline void bucket_bounds(std::span<const std::uint32_t> T, std::vector<std::uint32_t>& bkt, bool ends) {
    std::fill(bkt.begin(), bkt.end(), 0);
    for (auto c : T) ++bkt[c];
    std::uint32_t sum = 0;
    for (auto& b : bkt) {
        sum += b;
        b = ends ? sum : sum - b;
    }
}

inline void induce(std::span<const std::uint32_t> T, std::span<std::uint32_t> SA, const std::vector<bool>& stype,
                   std::vector<std::uint32_t>& bkt) {
    const auto n = T.size();
    bucket_bounds(T, bkt, false);
    for (std::size_t i = 0; i < n; ++i) {
        auto s = SA[i];
        if (s != empty_slot && s > 0 && !stype[s - 1]) SA[bkt[T[s - 1]]++] = s - 1;
    }
    bucket_bounds(T, bkt, true);
    for (std::size_t i = n; i-- > 0;) {
        auto s = SA[i];
        if (s != empty_slot && s > 0 && stype[s - 1]) SA[--bkt[T[s - 1]]] = s - 1;
    }
}

// T must end with a unique smallest symbol 0; symbols lie in [0, K).
inline void sais(std::span<const std::uint32_t> T, std::span<std::uint32_t> SA, std::uint32_t K) {
    const auto n = T.size();
    if (n == 1) {
        SA[0] = 0;
        return;
    }
    std::vector<bool> stype(n);
    stype[n - 1] = true;
    for (std::size_t i = n - 1; i-- > 0;) stype[i] = T[i] < T[i + 1] || (T[i] == T[i + 1] && stype[i + 1]);
    auto is_lms = [&](std::size_t i) { return i > 0 && stype[i] && !stype[i - 1]; };

    std::vector<std::uint32_t> bkt(K);
    bucket_bounds(T, bkt, true);
    std::fill(SA.begin(), SA.end(), empty_slot);
    for (std::size_t i = 1; i < n; ++i)
        if (is_lms(i)) SA[--bkt[T[i]]] = static_cast<std::uint32_t>(i);
    induce(T, SA, stype, bkt);

    std::size_t n1 = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (is_lms(SA[i])) SA[n1++] = SA[i];

    std::fill(SA.begin() + static_cast<std::ptrdiff_t>(n1), SA.end(), empty_slot);
    std::uint32_t names = 0;
    std::size_t prev = n;
    for (std::size_t i = 0; i < n1; ++i) {
        std::size_t pos = SA[i];
        bool diff = false;
        for (std::size_t d = 0;; ++d) {
            if (prev == n || T[pos + d] != T[prev + d] || stype[pos + d] != stype[prev + d]) {
                diff = true;
                break;
            }
            if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) break;
        }
        if (diff) {
            ++names;
            prev = pos;
        }
        SA[n1 + pos / 2] = names - 1;
    }
    for (std::size_t i = n, j = n; i-- > n1;)
        if (SA[i] != empty_slot) SA[--j] = SA[i];

    auto s1 = SA.subspan(n - n1, n1);
    auto sa1 = SA.subspan(0, n1);
    if (names < n1) {
        std::vector<std::uint32_t> reduced(s1.begin(), s1.end());
        sais(reduced, sa1, names);
    } else {
        for (std::size_t i = 0; i < n1; ++i) sa1[s1[i]] = static_cast<std::uint32_t>(i);
    }

    for (std::size_t i = 1, j = 0; i < n; ++i)
        if (is_lms(i)) s1[j++] = static_cast<std::uint32_t>(i);
    for (std::size_t i = 0; i < n1; ++i) sa1[i] = s1[sa1[i]];
    std::fill(SA.begin() + static_cast<std::ptrdiff_t>(n1), SA.end(), empty_slot);

    bucket_bounds(T, bkt, true);
    for (std::size_t i = n1; i-- > 0;) {
        auto j = SA[i];
        SA[i] = empty_slot;
        SA[--bkt[T[j]]] = j;
    }
    induce(T, SA, stype, bkt);
}

}  // namespace detail

/// Suffix array by induced sorting. `text` must end with a unique 0 and use
/// symbols below `alphabet`. Returns 0-based suffix start positions.
inline std::vector<std::uint32_t> suffix_array(std::span<const std::uint32_t> text, std::uint32_t alphabet) {
    if (text.empty()) return {};
    if (text.size() >= detail::empty_slot) fail(errc::configuration_unsupported, "text too long for 32-bit suffix array");
    if (text.back() != 0) fail(errc::precondition_violated, "text must end with a 0 sentinel");
    for (std::size_t i = 0; i + 1 < text.size(); ++i) {
        if (text[i] == 0) fail(errc::precondition_violated, "sentinel must be unique");
        if (text[i] >= alphabet) fail(errc::symbol_out_of_range, "symbol beyond alphabet");
    }
    std::vector<std::uint32_t> sa(text.size());
    detail::sais(text, sa, alphabet);
    return sa;
}

}  // namespace ctr::csa
