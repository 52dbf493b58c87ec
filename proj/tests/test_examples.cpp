#include <gtest/gtest.h>

#include "loopfloer/examples.hpp"
#include "loopfloer/spectral.hpp"

using namespace loopfloer;

TEST(Builtins, PassEveryCheck) {
    for (const auto& [name, sys] : examples::builtin_systems()) {
        EXPECT_EQ(run_checks(sys), CheckStage::passed) << name;
        EXPECT_EQ(examples::builtin_system(name).size(), sys.size());
    }
    EXPECT_THROW(examples::builtin_system("no_such_system"), InputError);
}

TEST(Builtins, BrokenVariantsFailTheirDesignatedCheck) {
    const auto broken = examples::broken_variants();
    ASSERT_EQ(broken.size(), 3u);
    for (const auto& b : broken) {
        EXPECT_EQ(run_checks(b.system), b.expected_failure) << b.name;
        EXPECT_NE(b.expected_failure, CheckStage::passed);
    }
}

TEST(SphereHeight, Shape) {
    for (int n = 2; n <= 5; ++n) {
        auto sys = examples::sphere_height(n);
        ASSERT_EQ(sys.size(), 2u);
        EXPECT_EQ(sys.generator(sys.index_of("B")).mu, 0);
        EXPECT_EQ(sys.generator(sys.index_of("T")).mu, n);
        auto a = sys.entry("T", "B");
        EXPECT_EQ(a, AlgElement::letter(sys.ring(), "sx"));
        EXPECT_EQ(a.degree(), n - 1);
        EXPECT_EQ(sys.entries().size(), 1u);
    }
    EXPECT_THROW(examples::sphere_height(1), InputError);
}

TEST(ProductSystem, IndicesAddAndEntriesCopyFactors) {
    auto sys = examples::s2xs2_product();
    ASSERT_EQ(sys.size(), 4u);
    EXPECT_EQ(sys.generator(sys.index_of("T_T")).mu, 4);
    EXPECT_EQ(sys.generator(sys.index_of("B_T")).mu, 2);
    EXPECT_EQ(sys.entries().size(), 4u);
    EXPECT_EQ(sys.entry("T_T", "B_T"), AlgElement::letter(sys.ring(), "sx"));
    EXPECT_EQ(sys.entry("T_T", "T_B"), AlgElement::letter(sys.ring(), "sy"));
    EXPECT_TRUE(sys.entry("T_T", "B_B").is_zero());
}

TEST(ProductSystem, PointIsAUnit) {
    auto sys = examples::sphere_height(3);
    auto prod = examples::product_system(sys, examples::point_system());
    auto a = compute_pages(assemble(sys, 10), 4);
    auto b = compute_pages(assemble(prod, 10), 4);
    EXPECT_EQ(a, b);
}

TEST(ModelIndependence, ProductAndCobarVariantAgreeFromE1) {
    auto a = compute_pages(assemble(examples::s2xs2_product(10), 10), 5);
    auto b = compute_pages(assemble(examples::s2xs2_cobar_variant(10), 10), 5);
    EXPECT_EQ(compare_up_to_translation(a, b, 1), 0);
}

TEST(Coalgebras, ShippedListIsValid) {
    auto list = examples::builtin_coalgebras();
    EXPECT_EQ(list.size(), 7u);
    for (const auto& [name, c] : list) EXPECT_GE(c.size(), 1u) << name;
}
