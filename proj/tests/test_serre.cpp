#include <gtest/gtest.h>

#include "loopfloer/examples.hpp"
#include "loopfloer/serre.hpp"
#include "oracles.hpp"

using namespace loopfloer;

TEST(PathModel, AcyclicForEveryShippedCoalgebra) {
    for (const auto& [name, c] : examples::builtin_coalgebras()) {
        auto model = build_path_model(c, 9);
        auto h = path_model_homology(model);
        ASSERT_EQ(h.size(), 9u) << name;
        for (const auto& d : h) EXPECT_EQ(d.dim, d.degree == 0 ? 1u : 0u) << name << " degree " << d.degree;
    }
}

TEST(PathModel, ChainDimensionsAreCellsTimesWords) {
    auto c = examples::s2xs2_coalgebra();
    auto model = build_path_model(c, 8);
    std::vector<int> letters;
    for (const auto& cell : c.basis())
        if (cell.degree > 0) letters.push_back(cell.degree - 1);
    auto words = oracle::word_counts(letters, 8);
    for (int n = 0; n <= 8; ++n) {
        std::size_t expected = 0;
        for (const auto& cell : c.basis())
            if (n - cell.degree >= 0) expected += words[static_cast<std::size_t>(n - cell.degree)];
        EXPECT_EQ(model.complex.dim(n), expected) << n;
    }
}

TEST(PathModel, RejectsNegativeCap) { EXPECT_THROW(build_path_model(DGCoalgebra::sphere(2), -1), InputError); }

TEST(SerrePages, SphereThreeE2Checkerboard) {
    auto ps = serre_pages(DGCoalgebra::sphere(3), 12);
    EXPECT_EQ(ps.r_max(), 4);
    for (const auto& c : ps.cells(2)) {
        if (!c.certified) continue;
        const bool present = (c.p == 0 || c.p == 3) && c.q % 2 == 0;
        EXPECT_EQ(c.dim, present ? 1u : 0u) << c.p << "," << c.q;
    }
    for (const auto& c : ps.cells(3))
        if (c.certified && c.p == 3) EXPECT_EQ(c.d_rank, 1u) << c.q;
}

TEST(SerrePages, EInfinityIsThePoint) {
    for (const auto& [name, c] : examples::builtin_coalgebras()) {
        if (name == "point") continue;
        auto ps = serre_pages(c, 9);
        for (const auto& cell : ps.cells(ps.r_max()))
            if (cell.certified) EXPECT_EQ(cell.dim, cell.p == 0 && cell.q == 0 ? 1u : 0u) << name << " " << cell.p << "," << cell.q;
    }
}

TEST(SerrePages, E2IsBaseHomologyTimesFiberHomology) {
    // For simply connected bases with ∂-free cells, E² = H(C) ⊗ H(ΩC).
    for (const auto& [name, c] : examples::builtin_coalgebras()) {
        auto ps = serre_pages(c, 9, 2);
        auto h = homology_dims(*cobar(c, 9), 8);
        for (const auto& cell : ps.cells(2)) {
            if (!cell.certified) continue;
            std::size_t base = 0;
            for (const auto& b : c.basis()) base += b.degree == cell.p;
            EXPECT_EQ(cell.dim, base * h[static_cast<std::size_t>(cell.q)].dim) << name << " " << cell.p << "," << cell.q;
        }
    }
}
