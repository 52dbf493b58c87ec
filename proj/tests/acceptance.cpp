// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "loopfloer/loopfloer.hpp"

using namespace loopfloer;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream why;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) why << what;
        ok = ok && cond;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// 1. validate_mc passes iff ∂² = 0, on built-ins and 200 random systems over cobar(S²) at cap 8;
//    a single-entry corruption flips both.
void mc_iff_d2(Outcome& o) {
    for (const auto& [name, sys] : examples::builtin_systems())
        o.require(validate_mc(sys).ok == assemble_unchecked(sys, 8).boundary_squares_zero(), "built-in " + name);
    for (const auto& b : examples::broken_variants()) {
        if (b.expected_failure != CheckStage::maurer_cartan) continue;
        o.require(!assemble_unchecked(b.system, 8).boundary_squares_zero(), "broken " + b.name + " has ∂² = 0");
    }
    std::mt19937_64 rng(20240601);
    auto ring = cobar(DGCoalgebra::sphere(2), 8);
    int flips = 0;
    for (int t = 0; t < 200; ++t) {
        auto [sys, by_construction] = gen::random_system(rng, ring, 5, 7, t % 2 == 0);
        const bool mc = validate_mc(sys).ok;
        o.require(mc == assemble_unchecked(sys, 8).boundary_squares_zero(), "random system " + std::to_string(t));
        if (by_construction) o.require(mc, "valid-by-construction system " + std::to_string(t) + " fails MC");
        auto sites = gen::breaking_sites(sys);
        if (!mc || sites.empty()) continue;
        auto [x, y] = sites[rng() % sites.size()];
        auto broken = gen::toggle_entry(sys, x, y);
        o.require(!validate_mc(broken).ok && !assemble_unchecked(broken, 8).boundary_squares_zero(),
                  "corruption of system " + std::to_string(t) + " not detected");
        ++flips;
    }
    o.require(flips >= 50, "too few corruptions exercised");
}

// 2. Certified dim E¹_{p,q} = #{μ = p} · dim H_q(ring).
void e1_tensor_form(Outcome& o) {
    for (const auto& [name, sys] : examples::builtin_systems()) {
        auto fc = assemble(sys, 10);
        auto ps = compute_pages(fc, 1);
        auto h = homology_dims(*fc.ring(), fc.ring()->degree_cap() - 1);
        for (const auto& c : ps.cells(1)) {
            if (!c.certified) continue;
            std::size_t count = 0;
            for (const auto& g : sys.generators()) count += g.mu == c.p;
            o.require(c.dim == count * h[static_cast<std::size_t>(c.q)].dim, name + " E¹ cell mismatch");
        }
    }
}

// 3. Morse pages agree with the Serre spectral sequence of the path fibration for r >= 2.
void serre_comparison(Outcome& o) {
    for (int n = 2; n <= 5; ++n) {
        auto morse = compute_pages(assemble(examples::sphere_height(n), 12), n + 1);
        auto serre = serre_pages(DGCoalgebra::sphere(n), 12, n + 1);
        o.require(compare_up_to_translation(morse, serre, 2) == 0, "S^" + std::to_string(n) + " shift is not 0");
        for (int r = 1; r <= n + 1; ++r)
            for (const auto& c : morse.cells(r)) {
                if (!c.certified) continue;
                const bool source = r == n && c.p == n && c.dim > 0;
                o.require(c.d_rank == (source ? 1u : 0u), "S^" + std::to_string(n) + " unexpected d^" + std::to_string(r));
            }
        for (const auto& c : morse.cells(n + 1))
            if (c.certified) o.require(c.dim == (c.p == 0 && c.q == 0 ? 1u : 0u), "S^" + std::to_string(n) + " E^∞");
    }
    for (const auto& sys : {examples::s2xs2_product(10), examples::s2xs2_cobar_variant(10)}) {
        auto morse = compute_pages(assemble(sys, 10), 5);
        auto serre = serre_pages(examples::s2xs2_coalgebra(), 10, 5);
        o.require(compare_up_to_translation(morse, serre, 2) == 0, "S²×S² shift is not 0");
        for (const auto& c : morse.cells(5))
            if (c.certified) o.require(c.dim == (c.p == 0 && c.q == 0 ? 1u : 0u), "S²×S² E^∞");
    }
}

// 4. translate(sys, k) has the same pages shifted by k.
void translation(Outcome& o) {
    for (const auto& [name, sys] : examples::builtin_systems())
        for (int k : {-3, 1, 7}) {
            auto moved = translate(sys, k);
            auto a = compute_pages(assemble(moved, 9 + k), 5);
            auto b = compute_pages(assemble(sys, 9), 5);
            o.require(compare_up_to_translation(a, b, 1) == k, name + " shift " + std::to_string(k));
            for (int r = 1; r <= 5; ++r)
                for (const auto& c : b.cells(r)) o.require(*a.cell(r, c.p + k, c.q) == PageCell{c.p + k, c.q, c.dim, c.d_rank, c.certified},
                                                            name + " cell differs under shift " + std::to_string(k));
        }
}

// 5. Module action of the loop generator commutes with d^r; exact elements act by zero on E².
void module_structure(Outcome& o) {
    for (int n : {2, 3}) {
        auto fc = assemble(examples::sphere_height(n), 10);
        auto rep = module_action_check(fc, AlgElement::letter(fc.ring(), "sx"), n + 1);
        o.require(rep.ok && rep.cells_checked > 0, "S^" + std::to_string(n) + " action does not commute");
        auto ring = fc.ring();
        // ∂ = 0 on cobar(S^n), so its only exact element is 0.
        auto exact = AlgElement(ring, n - 1);
        auto zero = module_action_check(fc, exact, 2, 2);
        o.require(zero.ok && zero.induces_zero, "zero element acts nontrivially");
    }
    auto fc = assemble(examples::s2xs2_cobar_variant(8), 8);
    auto exact = boundary(AlgElement::letter(fc.ring(), "sab"));
    auto rep = module_action_check(fc, exact, 3, 2);
    o.require(!exact.is_zero() && rep.ok && rep.induces_zero && rep.cells_checked > 0, "∂(sab) acts nontrivially on E²");
    for (const char* letter : {"sa", "sb"}) {
        auto r = module_action_check(fc, AlgElement::letter(fc.ring(), letter), 5);
        o.require(r.ok, std::string("action of ") + letter + " does not commute");
    }
}

// 6. The path model is acyclic above degree 0.
void path_model(Outcome& o) {
    for (const auto& [name, c] : examples::builtin_coalgebras()) {
        auto h = path_model_homology(build_path_model(c, 10));
        for (const auto& d : h) o.require(d.dim == (d.degree == 0 ? 1u : 0u), name + " homology in degree " + std::to_string(d.degree));
    }
}

// 7. validate_b ⇔ chain_map_check; retracts detected by unitriangularity.
void comparison_calculus(Outcome& o) {
    std::mt19937_64 rng(99);
    std::vector<GeneratorSystem> systems{examples::sphere_height(2, 8), examples::sphere_height(3, 8), examples::s2xs2_cobar_variant(8)};
    int valid = 0, invalid = 0;
    for (int t = 0; t < 45; ++t) {
        const auto& sys = systems[static_cast<std::size_t>(t) % systems.size()];
        auto cd = ComparisonData::identity(sys);
        for (std::size_t x = 0; x < sys.size(); ++x)
            for (std::size_t y = 0; y < sys.size(); ++y) {
                if (rng() % 3 != 0) continue;
                const int d = cd.expected_degree(x, y);
                if (d < 0 || d > sys.ring()->degree_cap()) continue;
                auto e = cd.entry(x, y);
                for (const auto& m : sys.ring()->basis(d))
                    if (rng() % 2 == 0) e.toggle(m);
                cd.set_entry(x, y, e);
            }
        const bool vb = validate_b(cd).ok;
        o.require(vb == chain_map_check(cd, sys.max_mu() + 2).ok, "validate_b and chain map disagree");
        (vb ? valid : invalid)++;
    }
    o.require(valid > 0 && invalid > 0, "no mix of valid and corrupted B");
    auto a = examples::s2xs2_cobar_variant(8);
    auto b = examples::s2xs2_product(8);
    auto cd = ComparisonData::identity(a, b, examples::s2xs2_connecting_morphism(a.ring(), b.ring()));
    o.require(validate_b(cd).ok && chain_map_check(cd, 8).ok, "S²×S² connecting map");
    for (const auto& [name, sys] : examples::builtin_systems()) {
        auto id = ComparisonData::identity(sys);
        auto f = id;
        for (std::size_t x = 0; x < sys.size(); ++x)
            for (std::size_t y = 0; y < sys.size(); ++y) {
                const int d = f.expected_degree(x, y);
                if (sys.generator(x).mu <= sys.generator(y).mu || d > sys.ring()->degree_cap()) continue;
                const auto& basis = sys.ring()->basis(d);
                if (!basis.empty()) f.set_entry(x, y, AlgElement::from_monomial(sys.ring(), basis.front()));
            }
        o.require(is_retract_pair(f, id) && is_retract_pair(id, f), name + " identity plus nilpotent is not a retract");
        for (std::size_t x = 0; x < sys.size(); ++x) {
            auto g = f;
            g.set_entry(x, x, AlgElement(sys.ring(), 0));
            o.require(!is_retract_pair(g, id), name + " retract without a diagonal unit");
        }
    }
}

// 8. Spheres: one claim at r = n, rank bound 1, coverage; S²×S² product: rank bound 3.
void consequence_reports(Outcome& o) {
    for (int n = 2; n <= 5; ++n) {
        auto rep = consequences(examples::sphere_height(n), 12, n + 1);
        o.require(rep.claims.size() == 1 && rep.claims[0].r == n, "S^" + std::to_string(n) + " claims");
        o.require(rep.rank_bound == 1, "S^" + std::to_string(n) + " rank bound");
        o.require(rep.coverage.covered, "S^" + std::to_string(n) + " coverage");
    }
    o.require(consequences(examples::s2xs2_product(10), 10, 5).rank_bound == 3, "S²×S² rank bound");
}

// 9. Collapse cobar(S²×S²) → cobar(S⁴): one surviving entry of degree 3, one rank-1 transgression.
void change_of_coefficients(Outcome& o) {
    auto sys = examples::s2xs2_cobar_variant(10);
    auto out = change_coefficients(sys, examples::s2xs2_collapse_morphism(sys.ring()));
    o.require(validate_mc(out).ok, "pushed system fails MC");
    o.require(out.entries().size() == 1 && out.entries().begin()->second.degree() == 3, "surviving entries");
    auto ps = compute_pages(assemble(out, 6), 5);
    std::size_t arrows = 0;
    for (int r = 1; r <= 5; ++r)
        for (const auto& c : ps.cells(r))
            if (c.certified && c.d_rank > 0) {
                ++arrows;
                o.require(r == 4 && c.p == 4 && c.q == 0 && c.d_rank == 1, "unexpected differential");
            }
    o.require(arrows == 1, "expected exactly one nonzero differential");
    // At a larger cap the same d^4 repeats along the F2[sab] tower and nothing else appears.
    auto wide = compute_pages(assemble(out, 10), 5);
    for (int r = 1; r <= 5; ++r)
        for (const auto& c : wide.cells(r))
            if (c.certified && c.d_rank > 0) o.require(r == 4 && c.p == 4 && c.d_rank == 1, "unexpected differential at cap 10");
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<void(Outcome&)> run;
        double budget;  // seconds; 0 = none
    };
    const std::vector<Criterion> criteria{
        {1, "Maurer-Cartan iff d^2 = 0", mc_iff_d2, 10.0},
        {2, "E1 tensor form", e1_tensor_form, 0},
        {3, "Serre comparison and sphere differentials", serre_comparison, 60.0},
        {4, "translation covariance", translation, 0},
        {5, "module structure", module_structure, 0},
        {6, "path model acyclicity", path_model, 0},
        {7, "comparison calculus", comparison_calculus, 0},
        {8, "consequence reports", consequence_reports, 0},
        {9, "change of coefficients", change_of_coefficients, 0},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        Outcome o;
        const auto t0 = Clock::now();
        try {
            c.run(o);
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double s = seconds_since(t0);
        if (c.budget > 0) o.require(s < c.budget, "over the time budget");
        std::cout << (o.ok ? "PASS" : "FAIL") << "  criterion " << c.id << ": " << c.name << " (" << s << " s)";
        if (!o.ok) std::cout << ": " << o.why.str();
        std::cout << "\n";
        failed += o.ok ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria failed") << "\n";
    return failed == 0 ? 0 : 1;
}
