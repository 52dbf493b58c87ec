// Algebraic consequences read off from a valid generator system and its pages:
// moduli-existence claims from nonzero differentials, the rank lower bound from
// the bottom row of E², and whether the coefficient classes generate H(ring).

#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "loopfloer/dgalg.hpp"
#include "loopfloer/extended_complex.hpp"
#include "loopfloer/gf2.hpp"
#include "loopfloer/spectral.hpp"

namespace loopfloer {

// A nonzero d^r forces pairs x, y with μ(x) − μ(y) = r joined by a chain of nonzero entries.
struct ModuliClaim {
    int r = 0;
    std::size_t total_rank = 0;  // Σ rank d^r over certified cells
    std::vector<std::pair<std::string, std::string>> witnesses;
};

struct CoverageReport {
    bool covered = true;
    int window = 0;  // degrees 0..window were compared
    std::vector<std::size_t> homology;  // dim H_q(ring)
    std::vector<std::size_t> generated;  // dim of the classes of the generated subalgebra
    std::vector<std::string> generators;  // cycle entries used as generators
};

struct ConsequenceReport {
    std::vector<ModuliClaim> claims;
    bool claims_witnessed = true;
    long rank_bound = 0;  // Σ_p dim E²_{p,0} − 1
    CoverageReport coverage;
};

namespace detail {

// reach[x][y]: a chain x = x_0 → x_1 → ... → x_k = y of nonzero entries, k >= 1.
inline std::vector<std::vector<bool>> entry_reachability(const GeneratorSystem& sys) {
    const auto n = sys.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const auto& [key, value] : sys.entries()) reach[key.first][key.second] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (reach[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (reach[k][j]) reach[i][j] = true;
    return reach;
}

}  // namespace detail

inline std::vector<ModuliClaim> moduli_claims(const GeneratorSystem& sys, const PageSet& pages, bool* witnessed = nullptr) {
    const auto reach = detail::entry_reachability(sys);
    std::vector<ModuliClaim> out;
    if (witnessed) *witnessed = true;
    for (int r = 1; r <= pages.r_max(); ++r) {
        std::size_t total = 0;
        for (const auto& c : pages.cells(r))
            if (c.certified) total += c.d_rank;
        if (total == 0) continue;
        ModuliClaim claim{r, total, {}};
        for (auto x : sys.ordered())
            for (auto y : sys.ordered())
                if (sys.generator(x).mu - sys.generator(y).mu == r && reach[x][y])
                    claim.witnesses.emplace_back(sys.generator(x).name, sys.generator(y).name);
        if (claim.witnesses.empty() && witnessed) *witnessed = false;
        out.push_back(std::move(claim));
    }
    return out;
}

inline long rank_bound(const PageSet& pages) {
    if (pages.r_max() < 2) throw InputError("rank bound needs the E² page");
    long total = 0;
    for (const auto& c : pages.cells(2))
        if (c.q == 0 && c.certified) total += static_cast<long>(c.dim);
    return total - 1;
}

// Compares the subalgebra of H(ring) generated by the classes of the cycle
// entries a_xy with all of H(ring) in degrees 0..window.
inline CoverageReport coefficient_coverage(const GeneratorSystem& sys, int window) {
    CoverageReport rep;
    rep.window = window;
    if (window < 0) return rep;
    auto ring = sys.ring()->with_cap(std::max(sys.ring()->degree_cap(), window + 1));
    std::vector<AlgElement> gens;
    std::set<std::string> seen;
    for (const auto& [key, value] : sys.entries()) {
        if (value.degree() < 1 || value.degree() > window) continue;
        auto v = rehome(value, ring);
        if (!boundary(v).is_zero()) continue;
        if (seen.insert(v.to_string()).second) {
            gens.push_back(v);
            rep.generators.push_back(v.to_string());
        }
    }
    // spans[q]: span of all products of generators of total degree q.
    std::vector<gf2::F2Subspace> spans;
    for (int q = 0; q <= window; ++q) {
        const auto dim = ring->dim(q);
        std::vector<gf2::BitVector> vecs;
        if (q == 0) vecs.push_back(AlgElement::unit(ring).to_vector());
        for (const auto& g : gens) {
            if (g.degree() > q) continue;
            for (const auto& b : spans[static_cast<std::size_t>(q - g.degree())].basis())
                vecs.push_back((g * AlgElement::from_vector(ring, q - g.degree(), b)).to_vector());
        }
        spans.push_back(gf2::F2Subspace::span(dim, vecs));
    }
    for (int q = 0; q <= window; ++q) {
        auto cycles = gf2::kernel(boundary_matrix(*ring, q));
        auto bounds = gf2::image(boundary_matrix(*ring, q + 1));
        auto generated = gf2::sum(spans[static_cast<std::size_t>(q)], bounds);
        rep.homology.push_back(cycles.dim() - bounds.dim());
        rep.generated.push_back(generated.dim() - bounds.dim());
        if (generated.dim() != cycles.dim()) rep.covered = false;
    }
    return rep;
}

// Coverage is compared on the ring degrees that appear in certified E¹ cells of every column.
inline int coverage_window(const GeneratorSystem& sys, int cap) { return cap - 1 - (sys.max_mu() - sys.min_mu()); }

inline ConsequenceReport consequences(const GeneratorSystem& sys, int cap, int r_max) {
    auto fc = assemble(normalized(sys), cap - sys.min_mu());
    auto pages = compute_pages(fc, std::max(r_max, 2));
    ConsequenceReport rep;
    rep.claims = moduli_claims(sys, pages, &rep.claims_witnessed);
    rep.rank_bound = rank_bound(pages);
    rep.coverage = coefficient_coverage(sys, coverage_window(sys, cap));
    return rep;
}

}  // namespace loopfloer
