#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "ctr/bits/bitvector.hpp"
#include "ctr/wavelet/hu_tucker.hpp"

namespace ctr::wavelet {

/// Wavelet tree shaped by a Hu-Tucker code over symbols [0, sigma).
///
/// The bitmaps of all nodes at the same depth are concatenated into one
/// bitvector per level; an explicit node table records where each node's
/// segment starts, how many ones precede it, its children and the symbol
/// range it covers. Because the code preserves symbol order every node covers
/// a contiguous symbol range, which is what makes count() a single descent.
template <bits::rank_select_bitvector B>
class hu_tucker_wavelet_tree {
public:
    static constexpr std::uint8_t structure_tag = 2;

    hu_tucker_wavelet_tree() = default;

    hu_tucker_wavelet_tree(std::span<const std::uint64_t> seq, std::uint64_t sigma) : n_(seq.size()), sigma_(sigma) {
        if (sigma == 0) fail(errc::empty_alphabet, "wavelet tree over an empty alphabet");
        std::vector<std::uint64_t> freq(sigma, 0);
        for (auto s : seq) {
            if (s >= sigma) fail(errc::symbol_out_of_range, "symbol " + std::to_string(s) + " >= sigma");
            ++freq[s];
        }
        code_ = build_hu_tucker(freq);
        build(seq);
    }

    std::uint64_t size() const noexcept { return n_; }
    std::uint64_t sigma() const noexcept { return sigma_; }
    const hu_tucker_code& code() const noexcept { return code_; }
    std::size_t depth() const noexcept { return level_bits_.size(); }

    std::uint64_t access(std::uint64_t i) const {
        if (i < 1 || i > n_) fail(errc::position_out_of_range, "access position " + std::to_string(i));
        if (sigma_ == 1) return 0;
        std::uint64_t pos = i - 1;
        std::int64_t v = 0;
        for (unsigned d = 0;; ++d) {
            const auto& nd = nodes_[v];
            const auto& b = level_bits_[d];
            auto r1 = b.rank1_raw(nd.offset + pos) - nd.ones_before;
            bool bit = b.get(nd.offset + pos);
            pos = bit ? r1 : pos - r1;
            auto child = bit ? nd.right : nd.left;
            if (child < 0) return static_cast<std::uint64_t>(-child - 1);
            v = child;
        }
    }

    std::uint64_t rank(std::uint64_t c, std::uint64_t i) const {
        if (c >= sigma_) fail(errc::symbol_out_of_range, "symbol " + std::to_string(c));
        if (i > n_) fail(errc::position_out_of_range, "rank position " + std::to_string(i));
        if (sigma_ == 1) return i;
        std::uint64_t pos = i;
        std::int64_t v = 0;
        for (unsigned d = 0; d < code_.length[c]; ++d) {
            const auto& nd = nodes_[v];
            auto r1 = level_bits_[d].rank1_raw(nd.offset + pos) - nd.ones_before;
            bool bit = code_.bit(c, d);
            pos = bit ? r1 : pos - r1;
            v = bit ? nd.right : nd.left;
        }
        return pos;
    }

    std::uint64_t select(std::uint64_t c, std::uint64_t k) const {
        if (c >= sigma_) fail(errc::symbol_out_of_range, "symbol " + std::to_string(c));
        auto total = rank(c, n_);
        if (k < 1 || k > total) fail(errc::rank_out_of_range, "select rank " + std::to_string(k));
        if (sigma_ == 1) return k;
        std::vector<std::int64_t> path;
        std::int64_t v = 0;
        for (unsigned d = 0; d < code_.length[c]; ++d) {
            path.push_back(v);
            v = code_.bit(c, d) ? nodes_[v].right : nodes_[v].left;
        }
        std::uint64_t p = k;
        for (auto d = path.size(); d-- > 0;) {
            const auto& nd = nodes_[path[d]];
            const auto& b = level_bits_[d];
            if (code_.bit(c, static_cast<unsigned>(d))) p = b.select1(nd.ones_before + p) - nd.offset;
            else p = b.select0(nd.offset - nd.ones_before + p) - nd.offset;
        }
        return p;
    }

    /// Occurrences in S[i..j] of symbols in [lo, hi].
    std::uint64_t count(std::uint64_t i, std::uint64_t j, std::uint64_t lo, std::uint64_t hi) const {
        check_range(i, j, lo, hi);
        if (sigma_ == 1) return j - i + 1;
        return count_node(0, 0, i - 1, j, lo, hi);
    }

    /// For S[a..b] non-decreasing: maximal subrange with values in [t1, t2],
    /// as (first, last); empty when first > last. One descent computes both the
    /// number of values below t1 and the number inside the window.
    std::pair<std::uint64_t, std::uint64_t> count_lr(std::uint64_t a, std::uint64_t b, std::uint64_t t1,
                                                     std::uint64_t t2) const {
        check_range(a, b, t1, t2);
        std::uint64_t below = 0, inside = 0;
        if (sigma_ == 1) inside = b - a + 1;
        else split_node(0, 0, a - 1, b, t1, t2, below, inside);
        return {a + below, a + below + inside - 1};
    }

    std::uint64_t payload_bits() const noexcept {
        std::uint64_t total = 0;
        for (const auto& b : level_bits_) total += b.size_in_bits();
        return total + shape_bits();
    }

    /// Bits of the serialized shape: code lengths, codewords and node table.
    std::uint64_t shape_bits() const noexcept {
        std::uint64_t max_off = 0, max_len = 0;
        for (const auto& nd : nodes_) max_off = std::max(max_off, nd.offset);
        for (auto l : code_.length) max_len = std::max<std::uint64_t>(max_len, l);
        auto node_bits = 2 * bits::width_of(max_off) + 2 * (bits::width_of(2 * sigma_) + 1);
        return sigma_ * (bits::width_of(max_len) + max_len) + nodes_.size() * node_bits + 64 * 3;
    }

    void save(io::binary_writer& w) const {
        w.u8(structure_tag);
        w.u64(n_);
        w.u64(sigma_);
        w.vec(code_.length);
        w.vec(code_.bits);
        w.u64(level_bits_.size());
        for (const auto& b : level_bits_) b.save(w);
    }

    static hu_tucker_wavelet_tree load(io::binary_reader& r) {
        if (r.u8() != structure_tag) fail(errc::corrupt_index, "temporal structure tag mismatch");
        hu_tucker_wavelet_tree t;
        t.n_ = r.u64();
        t.sigma_ = r.u64();
        t.code_.length = r.vec<std::uint8_t>();
        t.code_.bits = r.vec<std::uint64_t>();
        if (t.sigma_ == 0 || t.code_.length.size() != t.sigma_ || t.code_.bits.size() != t.sigma_)
            fail(errc::corrupt_index, "wavelet tree code table");
        std::vector<unsigned> levels(t.code_.length.begin(), t.code_.length.end());
        bool valid = false;
        try {
            valid = t.sigma_ == 1 ? t.code_.length[0] == 0 : code_from_levels(levels).bits == t.code_.bits;
        } catch (const error&) {
            valid = false;
        }
        if (!valid) fail(errc::corrupt_index, "wavelet tree code table");
        auto depth = r.u64();
        if (depth > 64) fail(errc::corrupt_index, "wavelet tree depth");
        for (std::uint64_t d = 0; d < depth; ++d) t.level_bits_.push_back(B::load(r));
        t.build_shape();
        if (t.level_sizes_.size() != t.level_bits_.size()) fail(errc::corrupt_index, "wavelet tree depth");
        for (std::size_t d = 0; d < t.level_bits_.size(); ++d)
            if (d >= t.level_sizes_.size() || t.level_bits_[d].size() != t.level_sizes_[d])
                fail(errc::corrupt_index, "wavelet tree level size");
        t.fill_ones_before();
        return t;
    }

private:
    struct node {
        std::uint64_t offset = 0;       // start of this node's segment in its level bitvector
        std::uint64_t size = 0;
        std::uint64_t ones_before = 0;  // rank1 of the level bitvector at offset
        std::int64_t left = 0, right = 0;  // >= 0: node index; < 0: leaf symbol -(c+1)
        std::uint64_t lo = 0, hi = 0;   // symbol range covered
        unsigned depth = 0;
    };

    void check_range(std::uint64_t i, std::uint64_t j, std::uint64_t lo, std::uint64_t hi) const {
        if (i < 1 || i > j || j > n_ || lo > hi || hi >= sigma_)
            fail(errc::range_invalid, "count range [" + std::to_string(i) + "," + std::to_string(j) + "] x [" +
                                          std::to_string(lo) + "," + std::to_string(hi) + "]");
    }

    // Derives the node table from the code and symbol frequencies implied by
    // the code itself: node structure first, then segment sizes.
    void build_shape(const std::vector<std::uint64_t>* freq = nullptr) {
        nodes_.clear();
        level_sizes_.clear();
        if (sigma_ == 1) return;
        // tree structure by splitting symbol ranges on the code bit at each depth
        struct item { std::uint64_t lo, hi; unsigned depth; std::int64_t parent; bool right; };
        std::vector<item> queue{{0, sigma_ - 1, 0, -1, false}};
        for (std::size_t q = 0; q < queue.size(); ++q) {
            auto [lo, hi, d, parent, is_right] = queue[q];
            std::int64_t ref;
            if (lo == hi && code_.length[lo] == d) {
                ref = -static_cast<std::int64_t>(lo) - 1;
            } else {
                auto split = lo;
                while (split <= hi && !code_.bit(split, d)) ++split;
                if (split == lo || split > hi) fail(errc::corrupt_index, "degenerate wavelet tree node");
                node nd;
                nd.lo = lo;
                nd.hi = hi;
                nd.depth = d;
                nodes_.push_back(nd);
                ref = static_cast<std::int64_t>(nodes_.size() - 1);
                queue.push_back({lo, split - 1, d + 1, ref, false});
                queue.push_back({split, hi, d + 1, ref, true});
            }
            if (parent >= 0) (is_right ? nodes_[parent].right : nodes_[parent].left) = ref;
        }
        // segment sizes: BFS order lists nodes of each depth left to right
        std::vector<std::uint64_t> f;
        if (freq) f = *freq;
        else f = frequencies_from_levels();
        std::vector<std::uint64_t> prefix(sigma_ + 1, 0);
        for (std::uint64_t c = 0; c < sigma_; ++c) prefix[c + 1] = prefix[c] + f[c];
        for (auto& nd : nodes_) {
            nd.size = prefix[nd.hi + 1] - prefix[nd.lo];
            if (nd.depth >= level_sizes_.size()) level_sizes_.resize(nd.depth + 1, 0);
            nd.offset = level_sizes_[nd.depth];
            level_sizes_[nd.depth] += nd.size;
        }
    }

    // Recover per-symbol frequencies from stored level bitvectors: a symbol's
    // frequency is rank along its code path.
    std::vector<std::uint64_t> frequencies_from_levels() {
        // sizes are needed to compute ranks; derive them top-down
        std::vector<std::uint64_t> f(sigma_, 0);
        std::vector<std::uint64_t> level_fill(level_bits_.size() + 1, 0);
        // process nodes in BFS order (same order as construction)
        std::vector<std::uint64_t> node_size(nodes_.size(), 0);
        if (!nodes_.empty()) node_size[0] = n_;
        for (std::size_t v = 0; v < nodes_.size(); ++v) {
            auto& nd = nodes_[v];
            if (nd.depth >= level_bits_.size()) fail(errc::corrupt_index, "wavelet tree depth");
            nd.offset = level_fill[nd.depth];
            level_fill[nd.depth] += node_size[v];
            const auto& b = level_bits_[nd.depth];
            if (nd.offset + node_size[v] > b.size()) fail(errc::corrupt_index, "wavelet tree level size");
            auto ones = b.rank1_raw(nd.offset + node_size[v]) - b.rank1_raw(nd.offset);
            auto zeros = node_size[v] - ones;
            auto assign = [&](std::int64_t child, std::uint64_t count) {
                if (child < 0) f[static_cast<std::uint64_t>(-child - 1)] = count;
                else node_size[static_cast<std::size_t>(child)] = count;
            };
            assign(nd.left, zeros);
            assign(nd.right, ones);
        }
        return f;
    }

    void fill_ones_before() {
        for (auto& nd : nodes_) nd.ones_before = level_bits_[nd.depth].rank1_raw(nd.offset);
    }

    void build(std::span<const std::uint64_t> seq) {
        std::vector<std::uint64_t> freq(sigma_, 0);
        for (auto s : seq) ++freq[s];
        build_shape(&freq);
        if (sigma_ == 1) return;
        std::vector<std::vector<bool>> level_bits(level_sizes_.size());
        for (std::size_t d = 0; d < level_sizes_.size(); ++d) level_bits[d].resize(level_sizes_[d]);
        // fill: each symbol occurrence writes one bit per node on its path
        std::vector<std::uint64_t> fill(nodes_.size(), 0);
        for (auto s : seq) {
            std::int64_t v = 0;
            for (unsigned d = 0; d < code_.length[s]; ++d) {
                auto& nd = nodes_[v];
                bool bit = code_.bit(s, d);
                level_bits[d][nd.offset + fill[v]++] = bit;
                v = bit ? nd.right : nd.left;
            }
        }
        for (auto& bits : level_bits) level_bits_.emplace_back(bits);
        fill_ones_before();
    }

    std::uint64_t count_node(std::int64_t v, unsigned d, std::uint64_t a, std::uint64_t b, std::uint64_t lo,
                             std::uint64_t hi) const {
        const auto& nd = nodes_[v];
        if (a >= b || nd.hi < lo || nd.lo > hi) return 0;
        if (lo <= nd.lo && nd.hi <= hi) return b - a;
        const auto& bv = level_bits_[d];
        auto ra = bv.rank1_raw(nd.offset + a) - nd.ones_before;
        auto rb = bv.rank1_raw(nd.offset + b) - nd.ones_before;
        return count_child(nd.left, d + 1, a - ra, b - rb, lo, hi) + count_child(nd.right, d + 1, ra, rb, lo, hi);
    }

    std::uint64_t count_child(std::int64_t child, unsigned d, std::uint64_t a, std::uint64_t b, std::uint64_t lo,
                              std::uint64_t hi) const {
        if (child < 0) {
            auto c = static_cast<std::uint64_t>(-child - 1);
            return (lo <= c && c <= hi) ? b - a : 0;
        }
        return count_node(child, d, a, b, lo, hi);
    }

    // Adds to `below` the values < t1 and to `inside` the values in [t1, t2].
    void split_node(std::int64_t v, unsigned d, std::uint64_t a, std::uint64_t b, std::uint64_t t1, std::uint64_t t2,
                    std::uint64_t& below, std::uint64_t& inside) const {
        if (a >= b) return;
        std::uint64_t lo, hi;
        if (v < 0) lo = hi = static_cast<std::uint64_t>(-v - 1);
        else lo = nodes_[v].lo, hi = nodes_[v].hi;
        if (lo > t2) return;
        if (hi < t1) {
            below += b - a;
            return;
        }
        if (t1 <= lo && hi <= t2) {
            inside += b - a;
            return;
        }
        const auto& nd = nodes_[v];
        const auto& bv = level_bits_[d];
        auto ra = bv.rank1_raw(nd.offset + a) - nd.ones_before;
        auto rb = bv.rank1_raw(nd.offset + b) - nd.ones_before;
        split_node(nd.left, d + 1, a - ra, b - rb, t1, t2, below, inside);
        split_node(nd.right, d + 1, ra, rb, t1, t2, below, inside);
    }

    std::uint64_t n_ = 0;
    std::uint64_t sigma_ = 1;
    hu_tucker_code code_;
    std::vector<node> nodes_;
    std::vector<std::uint64_t> level_sizes_;
    std::vector<B> level_bits_;
};

}  // namespace ctr::wavelet
