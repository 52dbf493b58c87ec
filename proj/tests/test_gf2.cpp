#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "loopfloer/gf2.hpp"
#include "oracles.hpp"

using namespace loopfloer;
using namespace loopfloer::gf2;

namespace {

const F2Matrix kCyclic = F2Matrix::from_ints({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});

}  // namespace

TEST(Rank, IdentityAndZero) {
    EXPECT_EQ(rank(F2Matrix::identity(3)), 3u);
    EXPECT_EQ(rank(F2Matrix(3, 3)), 0u);
}

TEST(Rank, CyclicRowsSumToZero) {
    // Every nonzero combination of rows is enumerated; the span has 4 elements.
    auto span = oracle::span_set(kCyclic.row_vectors());
    EXPECT_EQ(span.size(), 4u);
    EXPECT_EQ(rank(kCyclic), oracle::log2_size(span.size()));
    EXPECT_EQ(rank(kCyclic), 2u);
}

TEST(Kernel, IdentityAndZero) {
    EXPECT_EQ(kernel(F2Matrix::identity(3)).dim(), 0u);
    EXPECT_EQ(kernel(F2Matrix(3, 3)), F2Subspace::full(3));
}

TEST(Kernel, CyclicSpannedByAllOnes) {
    auto k = kernel(kCyclic);
    ASSERT_EQ(k.dim(), 1u);
    EXPECT_EQ(k.basis()[0], BitVector::from_bits({1, 1, 1}));
    EXPECT_EQ(oracle::kernel_set(kCyclic), oracle::span_set(k.basis()));
}

TEST(Preimage, FullTargetGivesWholeDomain) {
    std::mt19937_64 rng(7);
    auto m = oracle::random_matrix(rng, 4, 5);
    EXPECT_EQ(preimage_subspace(m, F2Subspace::full(4)), F2Subspace::full(5));
}

TEST(Preimage, ZeroTargetGivesKernel) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 20; ++t) {
        auto m = oracle::random_matrix(rng, 4, 6);
        EXPECT_EQ(preimage_subspace(m, F2Subspace(4)), kernel(m));
    }
}

TEST(Preimage, IdentityOntoLine) {
    auto target = F2Subspace::span(2, {BitVector::from_bits({1, 0})});
    auto pre = preimage_subspace(F2Matrix::identity(2), target);
    std::set<std::uint64_t> expected;
    for (std::uint64_t v = 0; v < 4; ++v)
        if (target.contains(oracle::apply(F2Matrix::identity(2), oracle::from_mask(2, v)))) expected.insert(v);
    EXPECT_EQ(oracle::span_set(pre.basis()), expected);
    EXPECT_EQ(pre, target);
}

TEST(Preimage, RandomAgainstEnumeration) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 50; ++t) {
        auto m = oracle::random_matrix(rng, 5, 7);
        auto target = F2Subspace::span(5, oracle::random_vectors(rng, 2, 5));
        auto pre = preimage_subspace(m, target);
        std::set<std::uint64_t> expected;
        for (std::uint64_t v = 0; v < 128; ++v)
            if (target.contains(oracle::apply(m, oracle::from_mask(7, v)))) expected.insert(v);
        EXPECT_EQ(oracle::span_set(pre.basis()), expected);
    }
}

TEST(Preimage, DimensionMismatch) {
    EXPECT_THROW(preimage_subspace(F2Matrix(3, 2), F2Subspace(2)), DimensionMismatch);
}

TEST(SumIntersectQuotient, EqualSubspaces) {
    auto a = F2Subspace::span(3, {BitVector::from_bits({1, 1, 0})});
    auto r = sum_intersect_quotient(a, a, F2Subspace(3));
    EXPECT_EQ(r.sum, a);
    EXPECT_EQ(r.intersection, a);
    EXPECT_EQ(r.quotient_dim, 1u);
}

TEST(SumIntersectQuotient, ComplementaryLines) {
    auto a = F2Subspace::span(2, {BitVector::from_bits({1, 0})});
    auto b = F2Subspace::span(2, {BitVector::from_bits({1, 1})});
    auto r = sum_intersect_quotient(a, b, a);
    EXPECT_EQ(r.sum, F2Subspace::full(2));
    EXPECT_EQ(r.intersection.dim(), 0u);
    EXPECT_EQ(r.quotient_dim, 1u);
}

TEST(SumIntersectQuotient, RandomFourDimAgainstEnumeration) {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        auto va = oracle::random_vectors(rng, 2, 4);
        auto vb = oracle::random_vectors(rng, 2, 4);
        auto vc = oracle::random_vectors(rng, 2, 4);
        auto a = F2Subspace::span(4, va), b = F2Subspace::span(4, vb), c = F2Subspace::span(4, vc);
        auto r = sum_intersect_quotient(a, b, c);
        auto sa = oracle::span_set(va), sb = oracle::span_set(vb), sc = oracle::span_set(vc);
        std::set<std::uint64_t> sum, inter, c_in_sum;
        for (auto x : sa)
            for (auto y : sb) sum.insert(x ^ y);
        for (auto x : sa)
            if (sb.count(x)) inter.insert(x);
        for (auto x : sc)
            if (sum.count(x)) c_in_sum.insert(x);
        EXPECT_EQ(oracle::span_set(r.sum.basis()), sum);
        EXPECT_EQ(oracle::span_set(r.intersection.basis()), inter);
        EXPECT_EQ(r.quotient_dim, oracle::log2_size(sum.size()) - oracle::log2_size(c_in_sum.size()));
    }
}

TEST(SumIntersectQuotient, DimensionMismatch) {
    EXPECT_THROW(sum_intersect_quotient(F2Subspace(2), F2Subspace(3), F2Subspace(2)), DimensionMismatch);
}

// Properties on random instances up to ambient dimension 12.

TEST(Properties, RankNullity) {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 200; ++t) {
        std::uniform_int_distribution<std::size_t> dim(0, 12);
        const auto rows = dim(rng), cols = dim(rng);
        auto m = oracle::random_matrix(rng, rows, cols, t % 3 == 0 ? 0.2 : 0.5);
        EXPECT_EQ(rank(m) + kernel(m).dim(), cols);
        if (cols <= 10) {
            EXPECT_EQ(oracle::span_set(kernel(m).basis()), oracle::kernel_set(m));
            EXPECT_EQ(oracle::span_set(image(m).basis()), oracle::image_set(m));
        }
    }
}

TEST(Properties, EchelonCanonicality) {
    std::mt19937_64 rng(22);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + t % 12;
        auto gens = oracle::random_vectors(rng, 1 + t % 5, n);
        auto s = F2Subspace::span(n, gens);
        // A different spanning set of the same space: random combinations plus the originals shuffled.
        std::vector<BitVector> other;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            auto v = gens[i];
            for (std::size_t j = 0; j < gens.size(); ++j)
                if (j != i && rng() % 2) v ^= gens[j];
            other.push_back(v);
        }
        other.insert(other.end(), gens.begin(), gens.end());
        std::shuffle(other.begin(), other.end(), rng);
        EXPECT_EQ(F2Subspace::span(n, other), s);
    }
}

TEST(Properties, DimensionFormulaAgainstEnumeration) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 1 + t % 12;
        auto va = oracle::random_vectors(rng, rng() % 5, n);
        auto vb = oracle::random_vectors(rng, rng() % 5, n);
        auto a = F2Subspace::span(n, va), b = F2Subspace::span(n, vb);
        auto s = sum(a, b), i = intersection(a, b);
        EXPECT_EQ(s.dim() + i.dim(), a.dim() + b.dim());
        auto sa = oracle::span_set(va), sb = oracle::span_set(vb);
        std::set<std::uint64_t> inter;
        for (auto x : sa)
            if (sb.count(x)) inter.insert(x);
        EXPECT_EQ(oracle::span_set(i.basis()), inter);
    }
}

TEST(QuotientBasis, CoordinatesAreLinearAndKillDenominator) {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 8;
        auto den_v = oracle::random_vectors(rng, 2, n);
        auto num_v = den_v;
        for (auto& v : oracle::random_vectors(rng, 3, n)) num_v.push_back(v);
        auto num = F2Subspace::span(n, num_v), den = F2Subspace::span(n, den_v);
        QuotientBasis q(num, den);
        EXPECT_EQ(q.dim(), num.dim() - den.dim());
        for (const auto& d : den.basis()) EXPECT_TRUE(q.coordinates(d)->is_zero());
        for (std::size_t i = 0; i < q.dim(); ++i) {
            auto c = q.coordinates(q.representatives()[i]);
            ASSERT_TRUE(c);
            BitVector unit(q.dim());
            unit.set(i);
            EXPECT_EQ(*c, unit);
        }
        // Classes agree iff the difference lies in the denominator.
        for (std::uint64_t m = 0; m < 32; ++m) {
            BitVector x(n), y(n);
            for (std::size_t i = 0; i < num_v.size(); ++i) {
                if ((m >> i) & 1u) x ^= num_v[i];
                if (((m * 7 + 3) >> i) & 1u) y ^= num_v[i];
            }
            auto diff = x;
            diff ^= y;
            EXPECT_EQ(*q.coordinates(x) == *q.coordinates(y), den.contains(diff));
        }
        BitVector outside = oracle::random_vector(rng, n);
        if (!num.contains(outside)) EXPECT_FALSE(q.coordinates(outside).has_value());
    }
}

TEST(QuotientBasis, RejectsDenominatorOutsideNumerator) {
    auto num = F2Subspace::span(2, {BitVector::from_bits({1, 0})});
    auto den = F2Subspace::span(2, {BitVector::from_bits({0, 1})});
    EXPECT_THROW(QuotientBasis(num, den), InvariantViolation);
}

TEST(F2Matrix, ProductMatchesEnumeratedComposition) {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 50; ++t) {
        auto a = oracle::random_matrix(rng, 5, 6), b = oracle::random_matrix(rng, 6, 4);
        auto ab = a * b;
        for (std::uint64_t v = 0; v < 16; ++v) {
            auto x = oracle::from_mask(4, v);
            EXPECT_EQ(ab.apply(x), oracle::apply(a, oracle::apply(b, x)));
        }
    }
}

TEST(F2Matrix, WideVectorsCrossWordBoundaries) {
    std::mt19937_64 rng(42);
    auto m = oracle::random_matrix(rng, 150, 130, 0.1);
    EXPECT_EQ(rank(m) + kernel(m).dim(), 130u);
    const auto ker = kernel(m);
    for (const auto& v : ker.basis()) EXPECT_TRUE(m.apply(v).is_zero());
    EXPECT_EQ(m.transposed().transposed(), m);
}
