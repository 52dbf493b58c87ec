// Spectral sequence of a filtered complex over GF(2).
//
// With F_p the span of basis elements of filtration <= p, and in each total degree n,
//
//   Z^r_p = { v ∈ F_p : ∂v ∈ F_{p-r} }
//   E^r_p = Z^r_p / (Z^{r-1}_{p-1} + ∂ Z^{r-1}_{p+r-1})
//
// and d^r : E^r_p → E^r_{p-r} is induced by ∂. Bidegree (p, q) means total
// degree p + q. A cell is certified when p + q + 1 <= cap: it then only uses
// chains of degree <= cap, all of which are present in the truncated complex.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "loopfloer/dgalg.hpp"
#include "loopfloer/errors.hpp"
#include "loopfloer/filtered_complex.hpp"
#include "loopfloer/gf2.hpp"

namespace loopfloer {

struct PageCell {
    int p = 0;
    int q = 0;
    std::size_t dim = 0;
    std::size_t d_rank = 0;  // rank of d^r leaving this cell
    bool certified = false;
    friend bool operator==(const PageCell&, const PageCell&) = default;
};

class PageSet {
public:
    PageSet() = default;
    PageSet(int r_max, int cap, int min_p, int max_p) : r_max_(r_max), cap_(cap), min_p_(min_p), max_p_(max_p) {
        pages_.resize(static_cast<std::size_t>(r_max));
    }

    int r_max() const { return r_max_; }
    int cap() const { return cap_; }
    int min_p() const { return min_p_; }
    int max_p() const { return max_p_; }

    bool certified(int p, int q) const { return p + q + 1 <= cap_; }

    void put(int r, const PageCell& c) { pages_.at(static_cast<std::size_t>(r - 1))[{c.p, c.q}] = c; }

    // Stored cell, or a known-zero cell when (p, q) has no chains. nullopt for
    // r outside [1, r_max].
    std::optional<PageCell> cell(int r, int p, int q) const {
        if (r < 1 || r > r_max_) return std::nullopt;
        const auto& page = pages_[static_cast<std::size_t>(r - 1)];
        if (auto it = page.find({p, q}); it != page.end()) return it->second;
        return PageCell{p, q, 0, 0, certified(p, q)};
    }

    std::vector<PageCell> cells(int r) const {
        std::vector<PageCell> out;
        for (const auto& [key, c] : pages_.at(static_cast<std::size_t>(r - 1))) out.push_back(c);
        return out;
    }

    friend bool operator==(const PageSet&, const PageSet&) = default;

private:
    int r_max_ = 0;
    int cap_ = 0;
    int min_p_ = 0;
    int max_p_ = 0;
    std::vector<std::map<std::pair<int, int>, PageCell>> pages_;
};

// Lazily computed subspaces of one filtered complex. Not thread-safe: each
// thread should own its own instance.
class SpectralSequence {
public:
    explicit SpectralSequence(const FilteredComplex& fc) : fc_(&fc) {}

    const FilteredComplex& complex() const { return *fc_; }

    // Z^r_p in total degree n; r = 0 gives F_p.
    const gf2::F2Subspace& cycles(int n, int p, int r) {
        auto key = cycles_key(n, p, r);
        const auto col_end = std::get<1>(key);
        const auto row_begin = std::get<2>(key);
        if (auto it = z_cache_.find(key); it != z_cache_.end()) return it->second;
        const std::size_t dim = fc_->dim(n);
        gf2::F2Subspace result(dim);
        const std::size_t rows = fc_->dim(n - 1);
        if (col_end == 0) {
            // F_p is empty in this degree.
        } else if (row_begin >= rows) {
            result = gf2::F2Subspace::coordinate(dim, 0, col_end);
        } else {
            auto block = fc_->boundary_ref(n).block(row_begin, rows, 0, col_end);
            auto ker = gf2::kernel(block);
            std::vector<gf2::BitVector> basis;
            basis.reserve(ker.dim());
            for (const auto& v : ker.basis()) basis.push_back(v.embedded(dim));
            result = gf2::F2Subspace::span(dim, std::move(basis));
        }
        return z_cache_.emplace(key, std::move(result)).first->second;
    }

    // ∂_{n+1}(Z^{r-1}_{p+r-1}) ⊆ C_n.
    const gf2::F2Subspace& boundaries(int n, int p, int r) {
        const auto& src = cycles(n + 1, p + r - 1, r - 1);
        auto key = cycles_key(n + 1, p + r - 1, r - 1);
        if (auto it = b_cache_.find(key); it != b_cache_.end()) return it->second;
        std::vector<gf2::BitVector> images;
        images.reserve(src.dim());
        for (const auto& v : src.basis()) images.push_back(fc_->apply_boundary(n + 1, v));
        auto result = gf2::F2Subspace::span(fc_->dim(n), std::move(images));
        return b_cache_.emplace(key, std::move(result)).first->second;
    }

    // Z^{r-1}_{p-1} + ∂Z^{r-1}_{p+r-1}.
    const gf2::F2Subspace& denominator(int n, int p, int r) {
        const auto& low = cycles(n, p - 1, r - 1);
        const auto& bd = boundaries(n, p, r);
        auto key = std::make_tuple(n, p, r);
        if (auto it = d_cache_.find(key); it != d_cache_.end()) return it->second;
        return d_cache_.emplace(key, gf2::sum(low, bd)).first->second;
    }

    std::size_t page_dim(int n, int p, int r) { return cycles(n, p, r).dim() - denominator(n, p, r).dim(); }

    // rank of d^r : E^r_p(n) → E^r_{p-r}(n-1).
    std::size_t differential_rank(int n, int p, int r) {
        const auto& z = cycles(n, p, r);
        const auto& den = denominator(n - 1, p - r, r);
        std::vector<gf2::BitVector> rows = den.basis();
        for (const auto& v : z.basis()) rows.push_back(fc_->apply_boundary(n, v));
        auto total = gf2::F2Subspace::span(fc_->dim(n - 1), std::move(rows));
        return total.dim() - den.dim();
    }

    gf2::QuotientBasis cell_basis(int n, int p, int r) {
        return gf2::QuotientBasis(cycles(n, p, r), denominator(n, p, r));
    }

    // Matrix of d^r : E^r_p(n) → E^r_{p-r}(n-1) in cell_basis coordinates.
    gf2::F2Matrix page_differential(int n, int p, int r) {
        auto src = cell_basis(n, p, r);
        auto dst = cell_basis(n - 1, p - r, r);
        std::vector<gf2::BitVector> cols;
        for (const auto& z : src.representatives()) {
            auto c = dst.coordinates(fc_->apply_boundary(n, z));
            if (!c) throw InvariantViolation("boundary of a page representative left Z^r");
            cols.push_back(*c);
        }
        return gf2::F2Matrix::from_columns(dst.dim(), cols);
    }

private:
    using Key = std::tuple<int, std::size_t, std::size_t>;

    // Z^r_p depends only on the prefixes F_p C_n and F_{p-r} C_{n-1}.
    Key cycles_key(int n, int p, int r) const {
        return {n, fc_->filtration_end(n, p), fc_->filtration_end(n - 1, p - r)};
    }

    const FilteredComplex* fc_;
    std::map<Key, gf2::F2Subspace> z_cache_;
    std::map<Key, gf2::F2Subspace> b_cache_;
    std::map<std::tuple<int, int, int>, gf2::F2Subspace> d_cache_;
};

// Default number of pages: filtration width + 1 (E^r is stationary afterwards).
inline int default_r_max(const FilteredComplex& fc) { return fc.max_filtration() - fc.min_filtration() + 1; }

inline PageSet compute_pages(const FilteredComplex& fc, int r_max) {
    if (r_max < 1) throw InputError("r_max must be at least 1, got " + std::to_string(r_max));
    SpectralSequence ss(fc);
    PageSet pages(r_max, fc.cap(), fc.min_filtration(), fc.max_filtration());
    std::vector<int> levels;
    for (const auto& b : fc.bases()) levels.push_back(b.filtration);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (int r = 1; r <= r_max; ++r)
        for (int p : levels)
            for (int n = std::max(fc.min_degree(), p); n <= fc.cap(); ++n) {
                // Only cells that carry chains (q >= 0 with some base of filtration p in reach).
                if (fc.filtration_end(n, p) == fc.filtration_end(n, p - 1)) continue;
                PageCell c;
                c.p = p;
                c.q = n - p;
                c.certified = pages.certified(c.p, c.q);
                c.dim = ss.page_dim(n, p, r);
                c.d_rank = c.dim == 0 ? 0 : ss.differential_rank(n, p, r);
                pages.put(r, c);
            }
    return pages;
}

// Shift k with a.E^r_{p+k,q} ≅ b.E^r_{p,q} (dims and d^r ranks) for all r >= r_min
// on cells certified in both; candidates are tried in order 0, 1, -1, 2, -2, ...
inline std::optional<int> compare_up_to_translation(const PageSet& a, const PageSet& b, int r_min) {
    const int r_hi = std::min(a.r_max(), b.r_max());
    if (r_min < 1 || r_min > r_hi) return std::nullopt;
    const int k_lo = a.min_p() - b.max_p();
    const int k_hi = a.max_p() - b.min_p();
    std::vector<int> candidates;
    for (int k = k_lo; k <= k_hi; ++k) candidates.push_back(k);
    std::stable_sort(candidates.begin(), candidates.end(), [](int x, int y) {
        if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
        return x > y;
    });
    auto matches = [&](int k) {
        bool compared = false;
        for (int r = r_min; r <= r_hi; ++r) {
            auto agree = [&](const PageCell& ca, const PageCell& cb) {
                if (!ca.certified || !cb.certified) return true;
                compared = true;
                return ca.dim == cb.dim && ca.d_rank == cb.d_rank;
            };
            for (const auto& cb : b.cells(r))
                if (!agree(*a.cell(r, cb.p + k, cb.q), cb)) return false;
            for (const auto& ca : a.cells(r))
                if (!agree(ca, *b.cell(r, ca.p - k, ca.q))) return false;
        }
        return compared;
    };
    for (int k : candidates)
        if (matches(k)) return k;
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Maps of spectral sequences

// A chain map given on basis vectors of C_n, landing in C'_{n + degree_shift}.
using ChainMapFn = std::function<gf2::BitVector(int n, const gf2::BitVector&)>;

struct PageMorphismCell {
    int r = 0;
    int p = 0;
    int q = 0;
    gf2::F2Matrix matrix;  // E^r_{p,q} → E'^r_{p+filtration_shift, q+degree_shift-filtration_shift}
    bool commutes = true;  // with d^r on both sides
    bool injective = false;
    bool zero = false;
};

struct PageMorphism {
    int degree_shift = 0;
    int filtration_shift = 0;
    std::vector<PageMorphismCell> cells;

    bool commutes() const {
        return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.commutes; });
    }
    bool injective() const {
        return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.injective; });
    }
    bool zero() const {
        return std::all_of(cells.begin(), cells.end(), [](const auto& c) { return c.zero; });
    }
};

namespace detail {

inline gf2::F2Matrix induced_matrix(SpectralSequence& src, SpectralSequence& dst, const ChainMapFn& map, int n, int p,
                                    int r, int degree_shift, int filtration_shift) {
    auto from = src.cell_basis(n, p, r);
    auto to = dst.cell_basis(n + degree_shift, p + filtration_shift, r);
    std::vector<gf2::BitVector> cols;
    for (const auto& z : from.representatives()) {
        auto c = to.coordinates(map(n, z));
        if (!c) throw InvariantViolation("chain map does not preserve Z^r (filtration or cycle condition fails)");
        cols.push_back(*c);
    }
    return gf2::F2Matrix::from_columns(to.dim(), cols);
}

}  // namespace detail

// Induced maps E^r(src) → E^r(dst) for r in [r_min, r_max] on every cell whose
// source, target and d^r-neighbours are certified. Each cell records whether
// the square with d^r commutes.
inline PageMorphism induced_page_morphism(const FilteredComplex& src, const FilteredComplex& dst, const ChainMapFn& map,
                                          int degree_shift, int filtration_shift, int r_min, int r_max) {
    SpectralSequence s(src), t(dst);
    PageMorphism out;
    out.degree_shift = degree_shift;
    out.filtration_shift = filtration_shift;
    std::vector<int> levels;
    for (const auto& b : src.bases()) levels.push_back(b.filtration);
    std::sort(levels.begin(), levels.end());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
    for (int r = r_min; r <= r_max; ++r)
        for (int p : levels)
            for (int n = std::max(src.min_degree(), p); n + 1 <= src.cap(); ++n) {
                if (n + degree_shift + 1 > dst.cap()) continue;
                if (src.filtration_end(n, p) == src.filtration_end(n, p - 1)) continue;
                PageMorphismCell c;
                c.r = r;
                c.p = p;
                c.q = n - p;
                c.matrix = detail::induced_matrix(s, t, map, n, p, r, degree_shift, filtration_shift);
                auto d_src = s.page_differential(n, p, r);
                auto d_dst = t.page_differential(n + degree_shift, p + filtration_shift, r);
                auto lower = detail::induced_matrix(s, t, map, n - 1, p - r, r, degree_shift, filtration_shift);
                c.commutes = (d_dst * c.matrix) == (lower * d_src);
                c.injective = gf2::rank(c.matrix) == c.matrix.cols();
                c.zero = c.matrix.is_zero();
                out.cells.push_back(std::move(c));
            }
    return out;
}

// ---------------------------------------------------------------------------
// Module structure over the ring

// Left multiplication by a ring element: w⊗x ↦ (αw)⊗x, degree deg α, filtration preserved.
inline ChainMapFn left_multiplication(const FilteredComplex& fc, const AlgElement& alpha) {
    auto a = rehome(alpha, fc.ring());
    return [&fc, a](int n, const gf2::BitVector& v) {
        gf2::BitVector out(fc.dim(n + a.degree()));
        const auto& labels = fc.labels(n);
        const auto& ring = *fc.ring();
        for (auto i : v.ones()) {
            const auto& l = labels[i];
            const auto& w = ring.basis(n - fc.bases()[l.base].degree)[l.word];
            for (const auto& t : a.terms())
                for (const auto& m : ring.multiply(t, w)) out.flip(fc.index_of(n + a.degree(), l.base, ring.index_of(m)));
        }
        return out;
    };
}

struct ModuleActionReport {
    bool ok = true;             // every induced map commutes with d^r
    bool induces_zero = true;   // every induced map is zero
    std::size_t cells_checked = 0;
    std::vector<std::string> failures;
    PageMorphism action;
};

// Checks that multiplication by a cycle α induces maps on E^r commuting with d^r.
inline ModuleActionReport module_action_check(const FilteredComplex& fc, const AlgElement& alpha, int r_max,
                                              int r_min = 1) {
    if (!boundary(alpha).is_zero()) throw InvariantViolation("module action needs a cycle; ∂α = " + boundary(alpha).to_string());
    ModuleActionReport report;
    report.action = induced_page_morphism(fc, fc, left_multiplication(fc, alpha), alpha.degree(), 0, r_min, r_max);
    for (const auto& c : report.action.cells) {
        ++report.cells_checked;
        if (!c.commutes) {
            report.ok = false;
            report.failures.push_back("E^" + std::to_string(c.r) + "_{" + std::to_string(c.p) + "," +
                                      std::to_string(c.q) + "}: action does not commute with d^" + std::to_string(c.r));
        }
        if (!c.zero) report.induces_zero = false;
    }
    return report;
}

}  // namespace loopfloer
