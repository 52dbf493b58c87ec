// Built-in generator systems: height functions on spheres, products of
// systems, the S²×S² system over the cobar construction of the product
// coalgebra, and deliberately broken variants for negative tests.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "loopfloer/dgalg.hpp"
#include "loopfloer/errors.hpp"
#include "loopfloer/extended_complex.hpp"

namespace loopfloer::examples {

inline constexpr int default_ring_cap = 12;

// Minimum B (μ = 0) and maximum T (μ = n) of the height function on S^n, over
// cobar(S^n); a_TB is the degree n-1 generator, the class of the bottom sphere.
inline GeneratorSystem sphere_height(int n, int ring_cap = default_ring_cap, const std::string& cell = "x") {
    if (n < 2) throw InputError("sphere_height needs n >= 2 (simply connected), got " + std::to_string(n));
    auto ring = cobar(DGCoalgebra::sphere(n, cell), ring_cap);
    GeneratorSystem sys(ring, {{"B", 0, 0.0}, {"T", n, static_cast<double>(n)}});
    sys.set_entry(sys.index_of("T"), sys.index_of("B"), AlgElement::letter(ring, "s" + cell));
    return sys;
}

// Single generator at μ = 0 over the trivial ring.
inline GeneratorSystem point_system(int ring_cap = default_ring_cap) {
    return GeneratorSystem(DGAlgebra::trivial(ring_cap), {{"P", 0, 0.0}});
}

// Generators (x, u) ↦ "x_u" with μ additive; a_{(x,u),(y,u)} = a_xy ⊗ 1 and
// a_{(x,u),(x,v)} = 1 ⊗ a_uv over the tensor product of the rings.
inline GeneratorSystem product_system(const GeneratorSystem& a, const GeneratorSystem& b) {
    auto ring = tensor_algebras(*a.ring(), *b.ring());
    const auto offset = a.ring()->factors().size();
    std::vector<Generator> gens;
    auto pair_index = [&](std::size_t i, std::size_t j) { return i * b.size() + j; };
    for (const auto& x : a.generators())
        for (const auto& u : b.generators()) {
            std::optional<double> action;
            if (x.action && u.action) action = *x.action + *u.action;
            gens.push_back({x.name + "_" + u.name, x.mu + u.mu, action});
        }
    GeneratorSystem out(ring, std::move(gens));
    for (const auto& [key, value] : a.entries()) {
        auto e = embed(value, ring, 0);
        for (std::size_t u = 0; u < b.size(); ++u) out.set_entry(pair_index(key.first, u), pair_index(key.second, u), e);
    }
    for (const auto& [key, value] : b.entries()) {
        auto e = embed(value, ring, offset);
        for (std::size_t x = 0; x < a.size(); ++x) out.set_entry(pair_index(x, key.first), pair_index(x, key.second), e);
    }
    return out;
}

// H_*(S²×S²) with cells a, b (degree 2) and ab (degree 4), Δ̄(ab) = a⊗b + b⊗a.
inline DGCoalgebra s2xs2_coalgebra() { return DGCoalgebra::product(DGCoalgebra::sphere(2, "a"), DGCoalgebra::sphere(2, "b")); }

// Product height function on S²×S² over cobar(S²×S²). The 4 → 0 entry must
// contain s(ab) since ∂s(ab) = sa·sb + sb·sa equals the composite of the
// length-two paths.
inline GeneratorSystem s2xs2_cobar_variant(int ring_cap = 10) {
    auto ring = cobar(s2xs2_coalgebra(), ring_cap);
    GeneratorSystem sys(ring, {{"B_B", 0, 0.0}, {"B_T", 2, 2.0}, {"T_B", 2, 2.0}, {"T_T", 4, 4.0}});
    auto sa = AlgElement::letter(ring, "sa");
    auto sb = AlgElement::letter(ring, "sb");
    auto set = [&](const char* x, const char* y, const AlgElement& v) { sys.set_entry(sys.index_of(x), sys.index_of(y), v); };
    set("T_T", "B_T", sa);
    set("T_T", "T_B", sb);
    set("T_B", "B_B", sa);
    set("B_T", "B_B", sb);
    set("T_T", "B_B", AlgElement::letter(ring, "sab"));
    return sys;
}

// Product of two S² height systems over cobar(S²)⊗cobar(S²), letters sx and sy.
inline GeneratorSystem s2xs2_product(int ring_cap = 10) {
    return product_system(sphere_height(2, ring_cap, "x"), sphere_height(2, ring_cap, "y"));
}

// cobar(S²×S²) → cobar(S²)⊗cobar(S²): sa ↦ sx, sb ↦ sy, s(ab) ↦ 0.
inline DGAMorphism s2xs2_connecting_morphism(const Ring& source, const Ring& target) {
    return DGAMorphism::create(source, target,
                               {{"sa", AlgElement::letter(target, "sx")}, {"sb", AlgElement::letter(target, "sy")}});
}

// cobar(S²×S²) → cobar(S⁴): kills sa and sb, keeps s(ab) (induced by collapsing S²∨S²).
inline DGAMorphism s2xs2_collapse_morphism(const Ring& source, int ring_cap = 10) {
    auto target = cobar(DGCoalgebra::sphere(4, "ab"), ring_cap);
    return DGAMorphism::create(source, target, {{"sab", AlgElement::letter(target, "sab")}});
}

struct BrokenVariant {
    std::string name;
    GeneratorSystem system;
    CheckStage expected_failure;
};

inline std::vector<BrokenVariant> broken_variants() {
    std::vector<BrokenVariant> out;
    {
        auto sys = sphere_height(2);
        auto sx = AlgElement::letter(sys.ring(), "sx");
        out.push_back({"degree_mismatch", sys.with_entry("T", "B", sx * sx), CheckStage::structure});
    }
    {
        auto sys = s2xs2_cobar_variant();
        out.push_back({"missing_sab", sys.with_entry("T_T", "B_B", AlgElement(sys.ring(), 3)), CheckStage::maurer_cartan});
    }
    {
        auto sys = sphere_height(2);
        auto ring = sys.ring();
        GeneratorSystem swapped(ring, {{"B", 0, 5.0}, {"T", 2, 1.0}});
        swapped.set_entry(swapped.index_of("T"), swapped.index_of("B"), AlgElement::letter(ring, "sx"));
        out.push_back({"action_increasing", swapped, CheckStage::action_order});
    }
    return out;
}

struct NamedSystem {
    std::string name;
    GeneratorSystem system;
};

// Positive examples shipped with the library.
inline std::vector<NamedSystem> builtin_systems() {
    std::vector<NamedSystem> out;
    for (int n = 2; n <= 5; ++n) out.push_back({"sphere_" + std::to_string(n), sphere_height(n)});
    out.push_back({"point", point_system()});
    out.push_back({"s2xs2_product", s2xs2_product()});
    out.push_back({"s2xs2_cobar", s2xs2_cobar_variant()});
    return out;
}

inline GeneratorSystem builtin_system(const std::string& name) {
    for (auto& s : builtin_systems())
        if (s.name == name) return s.system;
    throw InputError("unknown built-in system '" + name + "'");
}

struct NamedCoalgebra {
    std::string name;
    DGCoalgebra coalgebra;
};

inline std::vector<NamedCoalgebra> builtin_coalgebras() {
    std::vector<NamedCoalgebra> out;
    out.push_back({"point", DGCoalgebra::point()});
    for (int n = 2; n <= 5; ++n) out.push_back({"sphere_" + std::to_string(n), DGCoalgebra::sphere(n)});
    out.push_back({"s2xs2", s2xs2_coalgebra()});
    out.push_back({"s2xs3", DGCoalgebra::product(DGCoalgebra::sphere(2, "a"), DGCoalgebra::sphere(3, "b"))});
    return out;
}

}  // namespace loopfloer::examples
