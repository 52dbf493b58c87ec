// Comparison morphisms V(w⊗x) = Σ_y' f(w)·b_xy' ⊗ y' between extended complexes,
// where f is a ring morphism (identity when absent) and B satisfies
//
//   ∂B = f(A)·B + B·A′,   deg b_xy' = μ(x) − μ(y') + shift.
//
// V raises total degree and filtration by `shift`.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopfloer/dgalg.hpp"
#include "loopfloer/errors.hpp"
#include "loopfloer/extended_complex.hpp"
#include "loopfloer/filtered_complex.hpp"
#include "loopfloer/gf2.hpp"
#include "loopfloer/spectral.hpp"

namespace loopfloer {

class ComparisonData {
public:
    using Index = GeneratorSystem::Index;

    // `ring_map` goes from the source ring to the target ring; without one the
    // two rings must have the same factors. B entries live in the target ring.
    ComparisonData(GeneratorSystem source, GeneratorSystem target, std::optional<DGAMorphism> ring_map = std::nullopt,
                   int shift = 0)
        : source_(std::move(source)), target_(std::move(target)), ring_map_(std::move(ring_map)), shift_(shift) {
        if (ring_map_) {
            if (ring_map_->source()->factors() != source_.ring()->factors())
                throw InputError("ring morphism source differs from the source system's ring");
            if (ring_map_->target()->factors() != target_.ring()->factors())
                throw InputError("ring morphism target differs from the target system's ring");
        } else if (source_.ring()->factors() != target_.ring()->factors()) {
            throw InputError("systems over different rings need a ring morphism");
        }
    }

    // b_xx' = 1 for every pair of generators with equal names.
    static ComparisonData identity(const GeneratorSystem& source, const GeneratorSystem& target,
                                   std::optional<DGAMorphism> ring_map = std::nullopt, int shift = 0) {
        ComparisonData cd(source, target, std::move(ring_map), shift);
        for (std::size_t x = 0; x < source.size(); ++x) {
            const auto& name = source.generator(x).name;
            for (std::size_t y = 0; y < target.size(); ++y)
                if (target.generator(y).name == name) cd.set_entry(x, y, AlgElement::unit(target.ring()));
        }
        return cd;
    }

    static ComparisonData identity(const GeneratorSystem& sys) { return identity(sys, sys); }

    const GeneratorSystem& source() const { return source_; }
    const GeneratorSystem& target() const { return target_; }
    const std::optional<DGAMorphism>& ring_map() const { return ring_map_; }
    int shift() const { return shift_; }
    const std::map<std::pair<Index, Index>, AlgElement>& entries() const { return entries_; }

    int expected_degree(Index x, Index y) const {
        return source_.generator(x).mu - target_.generator(y).mu + shift_;
    }

    AlgElement entry(Index x, Index y) const {
        auto it = entries_.find({x, y});
        if (it != entries_.end()) return it->second;
        return AlgElement(target_.ring(), expected_degree(x, y));
    }

    AlgElement entry(const std::string& x, const std::string& y) const {
        return entry(source_.index_of(x), target_.index_of(y));
    }

    void set_entry(Index x, Index y, const AlgElement& value) {
        if (x >= source_.size() || y >= target_.size()) throw InputError("B entry index out of range");
        if (!same_ring(value.ring(), target_.ring())) throw InputError("B entry does not live in the target ring");
        if (value.is_zero())
            entries_.erase({x, y});
        else
            entries_.insert_or_assign({x, y}, value);
    }

    ComparisonData with_entry(const std::string& x, const std::string& y, const AlgElement& value) const {
        auto copy = *this;
        copy.set_entry(source_.index_of(x), target_.index_of(y), value);
        return copy;
    }

    // Ring element f(a) for a in the source ring, as an element of `ring`
    // (same factors as the target ring, possibly another cap).
    AlgElement push(const Monomial& m, const Ring& ring) const {
        if (!ring_map_) {
            auto out = AlgElement::from_monomial(ring, m);
            return out;
        }
        auto f = ring_map_->with_caps(ring_map_->source()->degree_cap(), ring->degree_cap());
        return rehome(f.apply(m), ring);
    }

private:
    GeneratorSystem source_;
    GeneratorSystem target_;
    std::optional<DGAMorphism> ring_map_;
    int shift_ = 0;
    std::map<std::pair<Index, Index>, AlgElement> entries_;
};

struct BReport {
    bool ok = true;
    std::vector<McResidual> failures;  // boundary_side = ∂b, product_side = f(A)·B + B·A′
};

namespace detail {

// Working copies of the data in target-factor rings with room for every product.
struct ComparisonWorkspace {
    Ring ring;
    std::optional<DGAMorphism> f;
    std::map<std::pair<std::size_t, std::size_t>, AlgElement> fa;  // f(a_xy)
    std::map<std::pair<std::size_t, std::size_t>, AlgElement> b;
    std::map<std::pair<std::size_t, std::size_t>, AlgElement> a2;  // a′_y'z'

    AlgElement get(const std::map<std::pair<std::size_t, std::size_t>, AlgElement>& m, std::size_t x,
                   std::size_t y) const {
        auto it = m.find({x, y});
        return it == m.end() ? AlgElement(ring, 0) : it->second;
    }
};

inline ComparisonWorkspace comparison_workspace(const ComparisonData& cd, int min_cap) {
    const auto& s = cd.source();
    const auto& t = cd.target();
    int cap = std::max({min_cap, t.ring()->degree_cap(), s.max_mu() - t.min_mu() + cd.shift(), s.max_mu() - s.min_mu(),
                        t.max_mu() - t.min_mu()});
    ComparisonWorkspace w;
    w.ring = t.ring()->with_cap(cap);
    if (cd.ring_map())
        w.f = cd.ring_map()->with_caps(std::max(cd.ring_map()->source()->degree_cap(), s.max_mu() - s.min_mu()), cap);
    for (const auto& [key, a] : s.entries()) {
        AlgElement img(w.ring, a.degree());
        if (w.f) {
            img += rehome(w.f->apply(rehome(a, w.f->source())), w.ring);
        } else {
            img += rehome(a, w.ring);
        }
        if (!img.is_zero()) w.fa.emplace(key, img);
    }
    for (const auto& [key, v] : cd.entries()) w.b.emplace(key, rehome(v, w.ring));
    for (const auto& [key, v] : t.entries()) w.a2.emplace(key, rehome(v, w.ring));
    return w;
}

}  // namespace detail

// Every B entry has degree μ(x) − μ(y') + shift; raised before any product is formed.
inline void check_b_structure(const ComparisonData& cd) {
    for (const auto& [key, value] : cd.entries()) {
        const int expected = cd.expected_degree(key.first, key.second);
        if (value.degree() != expected)
            throw StructuralError("B entry " + cd.source().generator(key.first).name + "|" +
                                  cd.target().generator(key.second).name + " has degree " +
                                  std::to_string(value.degree()) + ", expected " + std::to_string(expected));
    }
}

// Entrywise check of ∂B = f(A)·B + B·A′.
inline BReport validate_b(const ComparisonData& cd) {
    check_b_structure(cd);
    auto w = detail::comparison_workspace(cd, 0);
    BReport report;
    for (std::size_t x = 0; x < cd.source().size(); ++x)
        for (std::size_t z = 0; z < cd.target().size(); ++z) {
            const int deg = cd.expected_degree(x, z) - 1;
            if (deg < 0) continue;
            auto bxz = w.get(w.b, x, z);
            AlgElement lhs = bxz.is_zero() ? AlgElement(w.ring, deg) : boundary(bxz);
            AlgElement rhs(w.ring, deg);
            for (const auto& [key, fa] : w.fa) {
                if (key.first != x) continue;
                auto it = w.b.find({key.second, z});
                if (it != w.b.end()) rhs += fa * it->second;
            }
            for (const auto& [key, b] : w.b) {
                if (key.first != x) continue;
                auto it = w.a2.find({key.second, z});
                if (it != w.a2.end()) rhs += b * it->second;
            }
            if (lhs != rhs) {
                report.ok = false;
                report.failures.push_back(
                    {cd.source().generator(x).name, cd.target().generator(z).name, lhs, rhs});
            }
        }
    return report;
}

// The chain map V as matrices C_n → C'_{n+shift} over assembled complexes.
struct ChainMap {
    FilteredComplex source;
    FilteredComplex target;
    int shift = 0;
    std::vector<gf2::F2Matrix> matrices;  // index n - source.min_degree()

    const gf2::F2Matrix& at(int n) const { return matrices.at(static_cast<std::size_t>(n - source.min_degree())); }

    gf2::BitVector apply(int n, const gf2::BitVector& v) const {
        if (n < source.min_degree() || n > source.cap()) return gf2::BitVector(target.dim(n + shift));
        return at(n).apply(v);
    }
};

// Assembles both complexes (target up to cap + shift) and the matrices of V.
inline ChainMap build_chain_map(const ComparisonData& cd, int cap) {
    check_b_structure(cd);
    const auto& s = cd.source();
    const auto& t = cd.target();
    ChainMap cm{assemble_unchecked(s, cap), assemble_unchecked(t, std::max(cap + cd.shift(), t.min_mu())), cd.shift(), {}};
    const auto& dst = cm.target;
    const auto& ring = dst.ring();
    auto w = detail::comparison_workspace(cd, ring->degree_cap());
    std::vector<std::vector<std::pair<std::size_t, AlgElement>>> rows(s.size());
    for (const auto& [key, v] : w.b) rows[key.first].emplace_back(key.second, rehome(v, ring));
    std::optional<DGAMorphism> f;
    if (w.f) f = w.f->with_caps(cm.source.ring()->degree_cap(), ring->degree_cap());

    for (int n = cm.source.min_degree(); n <= cm.source.cap(); ++n) {
        const int m = n + cd.shift();
        const auto& labels = cm.source.labels(n);
        std::vector<gf2::BitVector> cols;
        cols.reserve(labels.size());
        for (const auto& l : labels) {
            gf2::BitVector col(dst.dim(m));
            if (!rows[l.base].empty() && m <= dst.cap()) {
                const auto& word = cm.source.ring()->basis(n - cm.source.bases()[l.base].degree)[l.word];
                AlgElement fw = f ? rehome(f->apply(word), ring) : AlgElement::from_monomial(ring, word);
                for (const auto& [y, b] : rows[l.base]) {
                    if (m - dst.bases()[y].degree < 0) continue;
                    const auto image = fw * b;
                    for (const auto& term : image.terms()) col.flip(dst.index_of(m, y, ring->index_of(term)));
                }
            }
            cols.push_back(std::move(col));
        }
        cm.matrices.push_back(gf2::F2Matrix::from_columns(dst.dim(m), cols));
    }
    return cm;
}

struct ChainMapReport {
    bool ok = true;                    // V∘d = d′∘V in every checked degree
    bool filtration_preserved = true;  // V(F_p) ⊂ F′_{p+shift}
    std::optional<int> failing_degree;
    std::vector<int> degrees_checked;
};

inline ChainMapReport chain_map_check(const ComparisonData& cd, int cap) {
    auto cm = build_chain_map(cd, cap);
    ChainMapReport report;
    const auto& src = cm.source;
    const auto& dst = cm.target;
    for (int n = src.min_degree(); n <= src.cap(); ++n) {
        const int m = n + cm.shift;
        if (m > dst.cap()) continue;
        report.degrees_checked.push_back(n);
        const auto& v = cm.at(n);
        auto lhs = dst.boundary(m) * v;
        auto rhs = n - 1 >= src.min_degree() ? cm.at(n - 1) * src.boundary(n) : gf2::F2Matrix(dst.dim(m - 1), src.dim(n));
        if (!(lhs == rhs) && report.ok) {
            report.ok = false;
            report.failing_degree = n;
        }
        const auto& from = src.labels(n);
        const auto& to = dst.labels(m);
        for (std::size_t j = 0; j < from.size(); ++j)
            for (auto i : v.column(j).ones())
                if (to[i].filtration > from[j].filtration + cm.shift) report.filtration_preserved = false;
    }
    return report;
}

// Induced maps on E^r for r in [r_min, r_max], certified cells only.
inline PageMorphism comparison_page_morphism(const ComparisonData& cd, int cap, int r_min, int r_max) {
    auto cm = build_chain_map(cd, cap);
    auto map = [&cm](int n, const gf2::BitVector& v) { return cm.apply(n, v); };
    return induced_page_morphism(cm.source, cm.target, map, cd.shift(), cd.shift(), r_min, r_max);
}

// Matrix of g∘f on the generators of f's source, in f's source ring; rows and
// columns ordered by μ then name, column x holding the image of x.
struct CompositeMatrix {
    std::vector<std::string> order;
    std::vector<std::vector<AlgElement>> entries;  // entries[row][col]
    int shift = 0;
};

inline CompositeMatrix composite_matrix(const ComparisonData& f, const ComparisonData& g) {
    const auto& a = f.source();
    const auto& b = f.target();
    auto same_generators = [](const GeneratorSystem& x, const GeneratorSystem& y) {
        if (x.size() != y.size()) return false;
        for (std::size_t i = 0; i < x.size(); ++i)
            if (x.generator(i).name != y.generator(i).name || x.generator(i).mu != y.generator(i).mu) return false;
        return true;
    };
    if (!same_generators(g.source(), b) || !same_generators(g.target(), a) ||
        g.source().ring()->factors() != b.ring()->factors() || g.target().ring()->factors() != a.ring()->factors())
        throw InputError("comparison morphisms are not composable (g must run from f's target to f's source)");

    const int shift = f.shift() + g.shift();
    const int cap = std::max({a.ring()->degree_cap(), a.max_mu() - a.min_mu() + std::max(shift, 0)});
    auto ring = a.ring()->with_cap(cap);
    CompositeMatrix out;
    out.shift = shift;
    const auto order = a.ordered();
    for (auto i : order) out.order.push_back(a.generator(i).name);
    out.entries.assign(order.size(), std::vector<AlgElement>(order.size(), AlgElement(ring, 0)));
    std::vector<std::size_t> pos(a.size());
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;

    for (const auto& [fk, fb] : f.entries())
        for (const auto& [gk, gb] : g.entries()) {
            if (gk.first != fk.second) continue;
            AlgElement pushed(ring, fb.degree());
            for (const auto& t : fb.terms()) pushed += g.push(t, ring);
            auto term = pushed * rehome(gb, ring);
            auto& cell = out.entries[pos[gk.second]][pos[fk.first]];
            if (cell.is_zero())
                cell = term;
            else
                cell += term;
        }
    return out;
}

// g∘f is upper triangular with exact unit diagonal in the μ-then-name order,
// hence invertible; f then admits g as a left inverse up to isomorphism.
inline bool is_retract_pair(const ComparisonData& f, const ComparisonData& g) {
    auto c = composite_matrix(f, g);
    if (c.shift != 0) return false;
    const auto n = c.order.size();
    for (std::size_t col = 0; col < n; ++col)
        for (std::size_t row = 0; row < n; ++row) {
            const auto& e = c.entries[row][col];
            if (row == col) {
                if (!(e.degree() == 0 && e.terms().size() == 1)) return false;
            } else if (row > col && !e.is_zero()) {
                return false;
            }
        }
    return true;
}

}  // namespace loopfloer
