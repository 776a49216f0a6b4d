#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ctr/wavelet/hu_tucker.hpp"
#include "ctr/wavelet/hu_tucker_wavelet_tree.hpp"
#include "ctr/wavelet/wavelet_matrix.hpp"
#include "optimal_alphabetic.hpp"

using namespace ctr;
using namespace ctr::wavelet;

namespace {

const std::vector<std::uint64_t> sample_seq = {3, 2, 7, 7, 0, 1, 4, 3, 7, 6, 3, 2, 5, 5, 3};

std::string code_string(const hu_tucker_code& c, std::size_t s) {
    std::string out;
    for (unsigned d = 0; d < c.length[s]; ++d) out += c.bit(s, d) ? '1' : '0';
    return out;
}

void expect_prefix_free_and_ordered(const hu_tucker_code& c) {
    for (std::size_t a = 0; a + 1 < c.sigma(); ++a) {
        auto x = code_string(c, a), y = code_string(c, a + 1);
        EXPECT_LT(x, y) << "order at " << a;
        EXPECT_NE(y.rfind(x, 0), 0u) << x << " prefix of " << y;
    }
}

std::uint64_t scan_count(const std::vector<std::uint64_t>& s, std::uint64_t i, std::uint64_t j, std::uint64_t lo,
                         std::uint64_t hi) {
    std::uint64_t c = 0;
    for (auto p = i; p <= j; ++p) c += (s[p - 1] >= lo && s[p - 1] <= hi);
    return c;
}

}  // namespace

TEST(HuTucker, EqualFrequenciesGiveBalancedCode) {
    std::vector<std::uint64_t> f{5, 5, 5, 5};
    auto c = build_hu_tucker(f);
    EXPECT_EQ(code_string(c, 0), "00");
    EXPECT_EQ(code_string(c, 1), "01");
    EXPECT_EQ(code_string(c, 2), "10");
    EXPECT_EQ(code_string(c, 3), "11");
}

TEST(HuTucker, SkewedThreeSymbols) {
    // exhaustive: the two alphabetic trees on 3 leaves have lengths (1,2,2) and (2,2,1)
    std::vector<std::uint64_t> f{1, 1, 8};
    auto c = build_hu_tucker(f);
    EXPECT_EQ(c.length, (std::vector<std::uint8_t>{2, 2, 1}));
    EXPECT_EQ(c.weighted_length(f), 12u);
    EXPECT_EQ(optimal_alphabetic_cost(f), 12u);
    expect_prefix_free_and_ordered(c);
}

TEST(HuTucker, SingleSymbolAndErrors) {
    std::vector<std::uint64_t> one{7};
    auto c = build_hu_tucker(one);
    EXPECT_EQ(c.length[0], 0u);
    EXPECT_THROW(build_hu_tucker(std::vector<std::uint64_t>{}), ctr::error);
}

TEST(HuTucker, ZeroFrequenciesStillGetCodewords) {
    std::vector<std::uint64_t> f{0, 10, 0, 0, 3};
    auto c = build_hu_tucker(f);
    for (auto l : c.length) EXPECT_GE(l, 1u);
    std::vector<std::uint64_t> adjusted{1, 10, 1, 1, 3};
    EXPECT_EQ(c.weighted_length(adjusted), optimal_alphabetic_cost(adjusted));
}

TEST(HuTucker, MatchesDynamicProgrammingOracle) {
    std::mt19937_64 rng(2024);
    for (int t = 0; t < 300; ++t) {
        std::size_t sigma = 1 + rng() % 64;
        std::vector<std::uint64_t> f(sigma);
        int mode = t % 3;
        for (auto& x : f) x = mode == 0 ? 1 + rng() % 10 : mode == 1 ? 1 + rng() % 1000 : 1 + (rng() % 4 == 0 ? rng() % 5000 : rng() % 3);
        auto c = build_hu_tucker(f);
        ASSERT_EQ(c.weighted_length(f), optimal_alphabetic_cost(f)) << "trial " << t;
        expect_prefix_free_and_ordered(c);
    }
}

TEST(HuTucker, EntropyBounds) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 50; ++t) {
        std::size_t sigma = 2 + rng() % 1023;
        std::vector<std::uint64_t> f(sigma);
        for (auto& x : f) x = 1 + rng() % (t % 2 ? 100 : 100000);
        auto c = build_hu_tucker(f);
        double total = 0;
        for (auto x : f) total += double(x);
        double avg = double(c.weighted_length(f)) / total;
        double h = entropy0(f);
        EXPECT_GE(avg + 1e-9, h);
        EXPECT_LE(avg, h + 2 + 1e-9);
    }
}

template <class W>
class WaveletTest : public ::testing::Test {};

using Structures = ::testing::Types<wavelet_matrix<bits::plain_bitvector>, wavelet_matrix<bits::rrr32_bitvector>,
                                    wavelet_matrix<bits::rrr64_bitvector>, wavelet_matrix<bits::rrr128_bitvector>,
                                    hu_tucker_wavelet_tree<bits::plain_bitvector>,
                                    hu_tucker_wavelet_tree<bits::rrr32_bitvector>,
                                    hu_tucker_wavelet_tree<bits::rrr64_bitvector>,
                                    hu_tucker_wavelet_tree<bits::rrr128_bitvector>>;
TYPED_TEST_SUITE(WaveletTest, Structures);

TYPED_TEST(WaveletTest, SampleSequenceExamples) {
    TypeParam w(sample_seq, 8);
    EXPECT_EQ(w.access(8), 3u);
    EXPECT_EQ(w.count(5, 10, 3, 7), 4u);
    EXPECT_EQ(w.rank(3, 15), 4u);
    EXPECT_EQ(w.rank(3, 0), 0u);
    for (std::uint64_t i = 1; i <= sample_seq.size(); ++i) EXPECT_EQ(w.access(i), sample_seq[i - 1]);
    EXPECT_EQ(w.select(3, 1), 1u);
    EXPECT_EQ(w.select(3, 2), 8u);
    EXPECT_EQ(w.select(3, 3), 11u);
    EXPECT_EQ(w.select(3, 4), 15u);
    EXPECT_THROW(w.select(3, 5), ctr::error);
    EXPECT_EQ(w.count(3, 9, 0, 7), 7u);
}

TYPED_TEST(WaveletTest, SingletonAndDegenerateAlphabets) {
    std::vector<std::uint64_t> one{5};
    TypeParam w(one, 6);
    EXPECT_EQ(w.access(1), 5u);
    EXPECT_EQ(w.count(1, 1, 0, 5), 1u);
    EXPECT_EQ(w.count(1, 1, 0, 4), 0u);

    std::vector<std::uint64_t> zeros(10, 0);
    TypeParam z(zeros, 1);
    EXPECT_EQ(z.access(7), 0u);
    EXPECT_EQ(z.rank(0, 6), 6u);
    EXPECT_EQ(z.select(0, 4), 4u);
    EXPECT_EQ(z.count(2, 9, 0, 0), 8u);
}

TYPED_TEST(WaveletTest, RejectsBadArguments) {
    TypeParam w(sample_seq, 8);
    EXPECT_THROW(w.access(0), ctr::error);
    EXPECT_THROW(w.access(16), ctr::error);
    EXPECT_THROW(w.rank(8, 3), ctr::error);
    EXPECT_THROW(w.count(5, 4, 0, 7), ctr::error);
    EXPECT_THROW(w.count(1, 16, 0, 7), ctr::error);
    EXPECT_THROW(w.count(1, 15, 3, 2), ctr::error);
    EXPECT_THROW(w.count(1, 15, 0, 8), ctr::error);
    EXPECT_THROW((TypeParam(std::vector<std::uint64_t>{9}, 8)), ctr::error);
}

TYPED_TEST(WaveletTest, AgreesWithLinearScan) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 12; ++t) {
        std::uint64_t sigma = 1 + rng() % (t < 6 ? 40 : 3000);
        std::size_t n = 1 + rng() % 3000;
        std::vector<std::uint64_t> s(n);
        for (auto& x : s) x = (t % 3 == 0) ? std::min<std::uint64_t>(sigma - 1, rng() % 4) : rng() % sigma;
        TypeParam w(s, sigma);
        for (std::uint64_t i = 1; i <= n; i += 1 + n / 500) ASSERT_EQ(w.access(i), s[i - 1]);
        for (int q = 0; q < 200; ++q) {
            auto i = 1 + rng() % n, j = 1 + rng() % n;
            if (i > j) std::swap(i, j);
            auto lo = rng() % sigma, hi = rng() % sigma;
            if (lo > hi) std::swap(lo, hi);
            ASSERT_EQ(w.count(i, j, lo, hi), scan_count(s, i, j, lo, hi));
            auto c = s[rng() % n];
            auto p = rng() % (n + 1);
            auto r = static_cast<std::uint64_t>(std::count(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(p), c));
            ASSERT_EQ(w.rank(c, p), r);
            if (r > 0) {
                auto pos = w.select(c, r);
                ASSERT_LE(pos, p);
                ASSERT_EQ(s[pos - 1], c);
                ASSERT_EQ(w.rank(c, pos), r);
            }
        }
        ASSERT_EQ(w.count(1, n, 0, sigma - 1), n);
    }
}

TYPED_TEST(WaveletTest, CountDecomposesIntoRanks) {
    std::mt19937_64 rng(77);
    std::vector<std::uint64_t> s(500);
    for (auto& x : s) x = rng() % 20;
    TypeParam w(s, 20);
    for (int q = 0; q < 100; ++q) {
        auto i = 1 + rng() % 500, j = 1 + rng() % 500;
        if (i > j) std::swap(i, j);
        auto lo = rng() % 20, hi = rng() % 20;
        if (lo > hi) std::swap(lo, hi);
        std::uint64_t sum = 0;
        for (auto c = lo; c <= hi; ++c) sum += w.rank(c, j) - w.rank(c, i - 1);
        ASSERT_EQ(w.count(i, j, lo, hi), sum);
    }
}

TYPED_TEST(WaveletTest, CountLROnSortedRuns) {
    std::vector<std::uint64_t> s(20, 9);
    s[9] = 2;
    s[10] = 4;
    s[11] = 6;
    s[12] = 8;  // positions 10..13 hold 2,4,6,8
    TypeParam w(s, 10);
    EXPECT_EQ(w.count_lr(10, 13, 3, 7), (std::pair<std::uint64_t, std::uint64_t>{11, 12}));
    EXPECT_EQ(w.count_lr(10, 13, 0, 9), (std::pair<std::uint64_t, std::uint64_t>{10, 13}));
    auto below = w.count_lr(10, 13, 0, 1);
    EXPECT_GT(below.first, below.second);

    std::mt19937_64 rng(5);
    std::vector<std::uint64_t> sorted(300);
    for (auto& x : sorted) x = rng() % 50;
    std::sort(sorted.begin() + 100, sorted.begin() + 200);
    TypeParam v(sorted, 50);
    for (int q = 0; q < 200; ++q) {
        auto t1 = rng() % 50, t2 = rng() % 50;
        if (t1 > t2) std::swap(t1, t2);
        auto first = std::lower_bound(sorted.begin() + 100, sorted.begin() + 200, t1) - sorted.begin() + 1;
        auto last = std::upper_bound(sorted.begin() + 100, sorted.begin() + 200, t2) - sorted.begin();
        auto [a, b] = v.count_lr(101, 200, t1, t2);
        ASSERT_EQ(a, static_cast<std::uint64_t>(first));
        ASSERT_EQ(b + 1, static_cast<std::uint64_t>(last) + 1);
    }
}

TYPED_TEST(WaveletTest, SerializationRoundTrip) {
    std::mt19937_64 rng(8);
    std::vector<std::uint64_t> s(5000);
    for (auto& x : s) x = rng() % 300;
    TypeParam w(s, 300);
    io::binary_writer out;
    w.save(out);
    io::binary_reader in(out.data());
    auto back = TypeParam::load(in);
    EXPECT_EQ(in.remaining(), 0u);
    for (int q = 0; q < 300; ++q) {
        auto i = 1 + rng() % 5000, j = 1 + rng() % 5000;
        if (i > j) std::swap(i, j);
        ASSERT_EQ(back.count(i, j, 17, 201), w.count(i, j, 17, 201));
        ASSERT_EQ(back.access(i), s[i - 1]);
    }
}

TEST(WaveletStructures, MatrixLevelMappingOnSampleSequence) {
    wavelet_matrix<bits::plain_bitvector> wm(sample_seq, 8);
    ASSERT_EQ(wm.levels(), 3u);
    EXPECT_EQ(wm.level(0).rank0(10), 5u);  // root bitmap of the balanced tree
    EXPECT_FALSE(wm.level(0).access(8));
    EXPECT_EQ(wm.level(0).rank0(8), 5u);
    EXPECT_TRUE(wm.level(1).access(5));
    EXPECT_EQ(wm.level(1).rank1(5), 3u);
    EXPECT_EQ(wm.zeros_at(1), 5u);
    EXPECT_TRUE(wm.level(2).access(3 + wm.zeros_at(1)));
    for (unsigned l = 0; l < wm.levels(); ++l) EXPECT_EQ(wm.zeros_at(l), wm.level(l).rank0(sample_seq.size()));
}

TEST(WaveletStructures, TreeAndMatrixAgree) {
    std::mt19937_64 rng(99);
    std::vector<std::uint64_t> s(4000);
    for (auto& x : s) x = (rng() % 3 == 0) ? rng() % 200 : 90 + rng() % 10;
    wavelet_matrix<bits::plain_bitvector> wm(s, 200);
    hu_tucker_wavelet_tree<bits::rrr64_bitvector> wt(s, 200);
    for (int q = 0; q < 1000; ++q) {
        auto i = 1 + rng() % 4000, j = 1 + rng() % 4000;
        if (i > j) std::swap(i, j);
        auto lo = rng() % 200, hi = rng() % 200;
        if (lo > hi) std::swap(lo, hi);
        ASSERT_EQ(wm.count(i, j, lo, hi), wt.count(i, j, lo, hi));
        ASSERT_EQ(wm.access(i), wt.access(i));
        auto c = rng() % 200;
        ASSERT_EQ(wm.rank(c, j), wt.rank(c, j));
    }
}

TEST(WaveletStructures, ShapedTreeSmallerOnSkewedData) {
    std::mt19937_64 rng(4);
    std::vector<std::uint64_t> s(200000);
    std::discrete_distribution<int> pick{30, 45, 5, 20};
    for (auto& x : s) {
        switch (pick(rng)) {
            case 0: x = 84 + rng() % 30; break;
            case 1: x = 210 + rng() % 30; break;
            case 2: x = 156 + rng() % 18; break;
            default: x = rng() % 288;
        }
    }
    wavelet_matrix<bits::plain_bitvector> wm(s, 288);
    hu_tucker_wavelet_tree<bits::plain_bitvector> wt(s, 288);
    EXPECT_LT(wt.payload_bits(), wm.payload_bits());
    std::vector<std::uint64_t> freq(288, 0);
    for (auto x : s) ++freq[x];
    // payload bits bounded by the code's total length plus directory and shape overhead
    EXPECT_LE(wt.payload_bits(), wt.code().weighted_length(freq) * (1.0 + 1.0 / 32) + 64 * 64 + wt.shape_bits() + 8192);
}
