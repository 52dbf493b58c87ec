// Twisted tensor model C ⊗_τ ΩC of the path fibration ΩL → PL → L, with
// ΩC = cobar(C) and τ(c) = s⁻¹c the universal twisting cochain:
//
//   ∂(c⊗w) = dc⊗w + c⊗∂w + 1⊗(s⁻¹c)·w + Σ_{Δ̄c = Σ c'⊗c''} c'⊗(s⁻¹c'')·w
//
// Filtered by the degree of the base cell, its spectral sequence is the mod-2
// Serre spectral sequence of the path fibration. The total space is
// contractible, so the complex is acyclic above degree 0.

#pragma once

#include <string>
#include <vector>

#include "loopfloer/dgalg.hpp"
#include "loopfloer/errors.hpp"
#include "loopfloer/filtered_complex.hpp"
#include "loopfloer/spectral.hpp"

namespace loopfloer {

struct TwistedTensorComplex {
    DGCoalgebra base;
    Ring fiber;
    FilteredComplex complex;
};

inline TwistedTensorComplex build_path_model(const DGCoalgebra& c, int cap) {
    if (cap < 0) throw InputError("cap must be non-negative");
    auto fiber = cobar(c, cap);
    std::vector<BaseGenerator> bases;
    for (const auto& cell : c.basis()) bases.push_back({cell.name, cell.degree, cell.degree});
    std::vector<Monomial> twist(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
        if (i != c.unit()) twist[i] = cobar_letter(c, i);

    auto boundary_fn = [&](std::size_t cell, const Monomial& w) {
        std::vector<ChainTerm> out;
        for (auto t : c.differential(cell)) out.emplace_back(t, w);
        for (auto& t : fiber->boundary(w)) out.emplace_back(cell, std::move(t));
        if (cell != c.unit()) {
            for (auto& m : fiber->multiply(twist[cell], w)) out.emplace_back(c.unit(), std::move(m));
            for (auto [left, right] : c.reduced_coproduct(cell))
                for (auto& m : fiber->multiply(twist[right], w)) out.emplace_back(left, std::move(m));
        }
        return out;
    };
    FilteredComplex fc(fiber, std::move(bases), cap, boundary_fn);
    if (auto bad = fc.first_nonzero_square())
        throw InvariantViolation("twisted tensor differential squares to nonzero in degree " + std::to_string(*bad));
    return {c, fiber, std::move(fc)};
}

// dim H_n of the path model for 0 <= n <= cap - 1.
inline std::vector<DegreeDim> path_model_homology(const TwistedTensorComplex& model) {
    const auto& fc = model.complex;
    std::vector<DegreeDim> out;
    for (int n = 0; n < fc.cap(); ++n) {
        const auto cycles = fc.dim(n) - gf2::rank(fc.boundary(n));
        const auto bounds = gf2::rank(fc.boundary(n + 1));
        out.push_back({n, cycles - bounds});
    }
    return out;
}

inline PageSet serre_pages(const DGCoalgebra& c, int cap, int r_max) {
    auto model = build_path_model(c, cap);
    return compute_pages(model.complex, r_max);
}

inline PageSet serre_pages(const DGCoalgebra& c, int cap) {
    auto model = build_path_model(c, cap);
    return compute_pages(model.complex, default_r_max(model.complex));
}

}  // namespace loopfloer
