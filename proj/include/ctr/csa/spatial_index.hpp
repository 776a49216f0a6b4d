#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "ctr/bits/sparse_bitvector.hpp"
#include "ctr/csa/psi_codec.hpp"
#include "ctr/csa/sais.hpp"
#include "ctr/trip/trip_store.hpp"

namespace ctr::csa {

/// Pattern symbol standing for any trip terminator.
inline constexpr std::uint64_t terminator = 0;

/// Inclusive 1-based range; empty when l > r. An empty search result keeps
/// l at the position where the range would start.
struct range {
    std::uint64_t l = 1, r = 0;

    bool empty() const noexcept { return l > r; }
    std::uint64_t size() const noexcept { return empty() ? 0 : r - l + 1; }
    bool operator==(const range&) const = default;
};

/// Suffix array of the store's S with distinct ordered terminators, as
/// 0-based text positions. Terminator of the i-th trip sorts as i, the
/// trailing one as 0, node k as z + k.
inline std::vector<std::uint32_t> suffix_order(const trip::trip_store& st) {
    const auto z = st.z();
    if (z + st.sigma_s + 1 >= detail::empty_slot) fail(errc::configuration_unsupported, "alphabet too large");
    std::vector<std::uint32_t> text(st.n());
    std::uint32_t next_term = 1;
    for (std::size_t p = 0; p + 1 < st.n(); ++p)
        text[p] = st.S[p] == 0 ? next_term++ : static_cast<std::uint32_t>(z + st.S[p]);
    text.back() = 0;
    return suffix_array(text, static_cast<std::uint32_t>(z + st.sigma_s + 1));
}

/// Cyclic Ψ (1-based values, index 0 = position 1) from a suffix array.
/// Terminator entries point at the first node of their own trip; the
/// trailing terminator maps to itself.
inline std::vector<std::uint64_t> cyclic_psi(const trip::trip_store& st, std::span<const std::uint32_t> sa) {
    const auto n = sa.size();
    std::vector<std::uint64_t> isa(n);
    for (std::size_t i = 0; i < n; ++i) isa[sa[i]] = i;
    std::vector<std::uint64_t> psi(n);
    for (std::size_t i = 0; i < n; ++i) psi[i] = isa[(sa[i] + 1) % n] + 1;
    psi[0] = 1;
    std::uint64_t start = 0;
    for (std::size_t t = 0; t < st.z(); ++t) {
        psi[t + 1] = isa[start] + 1;
        start += st.trips[t].nodes.size() + 1;
    }
    return psi;
}

/// Compressed suffix array over the terminator-augmented trips.
///
/// V[1] is `$`, V[2..] the node ids present, ascending; D marks where each
/// symbol's block of suffixes starts.
class spatial_index {
public:
    spatial_index() = default;

    spatial_index(const trip::trip_store& st, std::span<const std::uint32_t> sa, std::uint32_t psi_sample)
        : n_(st.n()), z_(st.z()), sigma_s_(st.sigma_s) {
        if (sa.size() != n_) fail(errc::length_mismatch, "suffix array length");
        auto psi = cyclic_psi(st, sa);
        psi_ = compressed_psi(psi, psi_sample);

        std::vector<std::uint64_t> freq(sigma_s_ + 1, 0);
        for (auto s : st.S)
            if (s != 0) ++freq[s];
        vocab_.push_back(terminator);
        std::vector<std::uint64_t> ones{0};
        std::uint64_t pos = z_ + 1;
        for (std::uint64_t x = 1; x <= sigma_s_; ++x) {
            if (freq[x] == 0) continue;
            vocab_.push_back(x);
            ones.push_back(pos);
            pos += freq[x];
        }
        d_ = bits::sparse_bitvector(ones, n_);
    }

    std::uint64_t size() const noexcept { return n_; }
    std::uint64_t trips() const noexcept { return z_; }
    std::uint64_t sigma_s() const noexcept { return sigma_s_; }
    std::uint32_t psi_sample() const noexcept { return psi_.sample_interval(); }
    const compressed_psi& psi() const noexcept { return psi_; }
    const bits::sparse_bitvector& D() const noexcept { return d_; }

    std::uint64_t psi_at(std::uint64_t i) const { return psi_[i]; }

    /// |V|, counting the `$` entry.
    std::uint64_t vocab_size() const noexcept { return vocab_.size(); }
    /// V[p], 1-based; 0 stands for `$`.
    std::uint64_t V(std::uint64_t p) const {
        if (p < 1 || p > vocab_.size()) fail(errc::position_out_of_range, "vocabulary index " + std::to_string(p));
        return vocab_[p - 1];
    }

    /// Vocabulary index of a node, or 0 when it never occurs.
    std::uint64_t vocab_index(std::uint64_t x) const noexcept {
        if (x == terminator) return 1;
        auto it = std::lower_bound(vocab_.begin() + 1, vocab_.end(), x);
        return (it != vocab_.end() && *it == x) ? static_cast<std::uint64_t>(it - vocab_.begin()) + 1 : 0;
    }

    /// Suffix range of vocabulary entry p.
    range group(std::uint64_t p) const {
        auto l = d_.select1(p);
        auto r = p < vocab_.size() ? d_.select1(p + 1) - 1 : n_;
        return {l, r};
    }

    /// Positions whose suffix starts with node x; empty (at its insertion point) if x never occurs.
    range node_range(std::uint64_t x) const {
        auto p = vocab_index(x);
        if (p != 0) return group(p);
        auto it = std::lower_bound(vocab_.begin() + 1, vocab_.end(), x);
        auto l = it == vocab_.end() ? n_ + 1 : d_.select1(static_cast<std::uint64_t>(it - vocab_.begin()) + 1);
        return {l, l - 1};
    }

    std::uint64_t frequency(std::uint64_t x) const { return node_range(x).size(); }

    /// Symbol at the start of suffix i.
    std::uint64_t symbol_at(std::uint64_t i) const { return vocab_[d_.rank1(i) - 1]; }

    /// Backward search. `$` (terminator) must either be the last symbol or be
    /// applied to a range that is a whole symbol block, i.e. be followed by at
    /// most one node.
    range bsearch(std::span<const std::uint64_t> pattern) const {
        if (pattern.empty()) fail(errc::precondition_violated, "empty pattern");
        auto c = pattern.back();
        range cur = c == terminator ? range{1, z_ + 1} : node_range(c);
        bool whole_group = true;
        for (std::size_t k = pattern.size() - 1; k-- > 0;) {
            c = pattern[k];
            if (c == terminator && !whole_group)
                fail(errc::pattern_unsupported, "terminator before a partial suffix range");
            cur = step(c, cur);
            whole_group = false;
        }
        return cur;
    }

    range bsearch(std::initializer_list<std::uint64_t> pattern) const {
        return bsearch(std::span<const std::uint64_t>(pattern.begin(), pattern.size()));
    }

    /// Refines [l,r] to the suffixes c·X with X in [l,r]: the positions i in
    /// c's block with l <= Ψ[i] <= r.
    range step(std::uint64_t c, range cur) const {
        range g;
        if (c == terminator) {
            g = {1, z_ + 1};
        } else {
            g = node_range(c);
            if (g.empty()) return g;
        }
        auto lo = first_at_least(g, cur.l);
        if (cur.empty()) return {lo, lo - 1};
        auto hi = first_at_least(g, cur.r + 1);
        return {lo, hi - 1};
    }

    std::uint64_t payload_bits() const noexcept {
        return psi_.payload_bits() + d_.size_in_bits() + 64 * vocab_.size() + 64 * 3;
    }
    std::uint64_t psi_bits() const noexcept { return psi_.payload_bits(); }

    void save(io::binary_writer& w) const {
        w.u64(n_);
        w.u64(z_);
        w.u64(sigma_s_);
        w.vec(vocab_);
        d_.save(w);
        psi_.save(w);
    }

    static spatial_index load(io::binary_reader& r) {
        spatial_index s;
        s.n_ = r.u64();
        s.z_ = r.u64();
        s.sigma_s_ = r.u64();
        s.vocab_ = r.vec<std::uint64_t>();
        s.d_ = bits::sparse_bitvector::load(r);
        s.psi_ = compressed_psi::load(r);
        bool ok = s.z_ + 1 < s.n_ && !s.vocab_.empty() && s.vocab_[0] == terminator && s.d_.size() == s.n_ &&
                  s.d_.ones() == s.vocab_.size() && s.psi_.size() == s.n_ && s.d_.access(1) &&
                  (s.vocab_.size() == 1 || s.d_.select1(2) == s.z_ + 2);
        for (std::size_t p = 1; ok && p < s.vocab_.size(); ++p)
            ok = s.vocab_[p] > s.vocab_[p - 1] && s.vocab_[p] <= s.sigma_s_;
        if (!ok) fail(errc::corrupt_index, "spatial section header");
        return s;
    }

private:
    // First position in g whose Ψ is >= v, or g.r + 1. Needs the predicate to
    // be monotone over g: Ψ ascends within a node block, and over the `$`
    // block it holds whenever v is a block boundary.
    std::uint64_t first_at_least(range g, std::uint64_t v) const {
        const auto t = psi_.sample_interval();
        auto b_first = (g.l - 1) / t, b_last = (g.r - 1) / t;
        // samples strictly inside g start at blocks (b_first, b_last], plus b_first if it starts at g.l
        auto lo = (b_first * t + 1 == g.l) ? b_first : b_first + 1, hi = b_last + 1;
        auto start = b_first;
        while (lo < hi) {
            auto mid = lo + (hi - lo) / 2;
            if (psi_.sample(mid) < v) {
                start = mid;
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
        auto cur = psi_.at_block(start);
        while (cur.position() < g.l) cur.next();
        for (;;) {
            if (cur.value() >= v) return cur.position();
            if (cur.position() == g.r) return g.r + 1;
            cur.next();
        }
    }

    std::uint64_t n_ = 0, z_ = 0, sigma_s_ = 0;
    compressed_psi psi_;
    bits::sparse_bitvector d_;
    std::vector<std::uint64_t> vocab_;
};

}  // namespace ctr::csa
