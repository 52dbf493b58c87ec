// The extended Morse/Floer complex  C = R ⊗ Z/2<x>,  d(w⊗x) = ∂w⊗x + Σ_y w·a_xy ⊗ y,
// built from generators graded by an absolute index μ and a coefficient
// matrix A over a DGA R. d² = 0 is equivalent to the Maurer–Cartan identity
// ∂A = A² entrywise.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopfloer/dgalg.hpp"
#include "loopfloer/errors.hpp"
#include "loopfloer/filtered_complex.hpp"

namespace loopfloer {

struct Generator {
    std::string name;
    int mu = 0;
    std::optional<double> action;
};

class GeneratorSystem {
public:
    using Index = std::size_t;
    using EntryKey = std::pair<Index, Index>;

    GeneratorSystem(Ring ring, std::vector<Generator> generators,
                    const std::map<std::pair<std::string, std::string>, AlgElement>& entries = {})
        : ring_(std::move(ring)), generators_(std::move(generators)) {
        for (std::size_t i = 0; i < generators_.size(); ++i) {
            detail::check_name(generators_[i].name, "generator");
            if (!index_.emplace(generators_[i].name, i).second)
                throw InputError("duplicate generator name '" + generators_[i].name + "'");
        }
        for (const auto& [key, value] : entries) set_entry(index_of(key.first), index_of(key.second), value);
    }

    const Ring& ring() const { return ring_; }
    const std::vector<Generator>& generators() const { return generators_; }
    std::size_t size() const { return generators_.size(); }
    const Generator& generator(Index i) const { return generators_.at(i); }
    const std::map<EntryKey, AlgElement>& entries() const { return entries_; }

    Index index_of(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw InputError("unknown generator '" + name + "'");
        return it->second;
    }

    int expected_degree(Index x, Index y) const { return generators_[x].mu - generators_[y].mu - 1; }

    // a_xy; zero (of the expected degree) when absent.
    AlgElement entry(Index x, Index y) const {
        auto it = entries_.find({x, y});
        if (it != entries_.end()) return it->second;
        return AlgElement(ring_, expected_degree(x, y));
    }

    AlgElement entry(const std::string& x, const std::string& y) const { return entry(index_of(x), index_of(y)); }

    void set_entry(Index x, Index y, const AlgElement& value) {
        if (!same_ring(value.ring(), ring_)) throw InputError("entry does not live in the system's ring");
        if (value.is_zero())
            entries_.erase({x, y});
        else
            entries_.insert_or_assign({x, y}, value);
    }

    GeneratorSystem with_entry(const std::string& x, const std::string& y, const AlgElement& value) const {
        auto copy = *this;
        copy.set_entry(index_of(x), index_of(y), value);
        return copy;
    }

    int min_mu() const {
        int m = generators_.empty() ? 0 : generators_[0].mu;
        for (const auto& g : generators_) m = std::min(m, g.mu);
        return m;
    }

    int max_mu() const {
        int m = generators_.empty() ? 0 : generators_[0].mu;
        for (const auto& g : generators_) m = std::max(m, g.mu);
        return m;
    }

    // Indices ordered by μ, then name.
    std::vector<Index> ordered() const {
        std::vector<Index> out(generators_.size());
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
        std::sort(out.begin(), out.end(), [&](Index a, Index b) {
            if (generators_[a].mu != generators_[b].mu) return generators_[a].mu < generators_[b].mu;
            return generators_[a].name < generators_[b].name;
        });
        return out;
    }

    // Same system over the same algebra truncated at `cap`.
    GeneratorSystem with_ring_cap(int cap) const {
        if (cap == ring_->degree_cap()) return *this;
        auto ring = ring_->with_cap(cap);
        GeneratorSystem out(ring, generators_);
        for (const auto& [key, value] : entries_) {
            if (value.degree() > cap) throw CapOverflow("entry degree exceeds the requested ring cap");
            out.entries_.insert_or_assign(key, rehome(value, ring));
        }
        return out;
    }

private:
    Ring ring_;
    std::vector<Generator> generators_;
    std::map<std::string, Index> index_;
    std::map<EntryKey, AlgElement> entries_;
};

struct StructureReport {
    bool ok = true;
    std::vector<std::string> issues;
};

// Degree and direction of every entry: deg a_xy = μ(x) − μ(y) − 1, so entries only
// run from higher to strictly lower μ.
inline StructureReport check_structure(const GeneratorSystem& sys) {
    StructureReport r;
    for (const auto& [key, value] : sys.entries()) {
        const auto& x = sys.generator(key.first);
        const auto& y = sys.generator(key.second);
        const int expected = sys.expected_degree(key.first, key.second);
        if (x.mu <= y.mu) {
            r.ok = false;
            r.issues.push_back("entry " + x.name + "|" + y.name + " does not lower μ (" + std::to_string(x.mu) +
                               " -> " + std::to_string(y.mu) + ")");
        } else if (value.degree() != expected) {
            r.ok = false;
            r.issues.push_back("entry " + x.name + "|" + y.name + " has degree " + std::to_string(value.degree()) +
                               ", expected " + std::to_string(expected));
        }
    }
    return r;
}

struct McResidual {
    std::string source;
    std::string target;
    AlgElement boundary_side;  // ∂a_xz
    AlgElement product_side;   // Σ_y a_xy·a_yz
    AlgElement residual() const { return boundary_side + product_side; }
};

struct McReport {
    bool ok = true;
    std::vector<McResidual> failures;
};

namespace detail {

inline GeneratorSystem with_room_for_products(const GeneratorSystem& sys) {
    const int needed = std::max(0, sys.max_mu() - sys.min_mu());
    return sys.ring()->degree_cap() >= needed ? sys : sys.with_ring_cap(needed);
}

}  // namespace detail

// Entrywise check of ∂A = A². Structural problems are raised before any product is formed.
inline McReport validate_mc(const GeneratorSystem& input) {
    if (auto s = check_structure(input); !s.ok) throw StructuralError(s.issues.front());
    const auto sys = detail::with_room_for_products(input);
    McReport report;
    const auto n = sys.size();
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t z = 0; z < n; ++z) {
            const int deg = sys.expected_degree(x, z) - 1;
            if (deg < 0) continue;
            auto lhs = boundary(sys.entry(x, z));
            AlgElement rhs(sys.ring(), deg);
            for (const auto& [key, axy] : sys.entries()) {
                if (key.first != x) continue;
                auto it = sys.entries().find({key.second, z});
                if (it == sys.entries().end()) continue;
                rhs += axy * it->second;
            }
            if (lhs != rhs) {
                report.ok = false;
                report.failures.push_back({sys.generator(x).name, sys.generator(z).name, lhs, rhs});
            }
        }
    return report;
}

struct OrderReport {
    bool ok = true;
    std::vector<std::string> issues;
};

// With action labels present, a nonzero a_xy requires action(x) > action(y).
inline OrderReport check_action_order(const GeneratorSystem& sys) {
    OrderReport r;
    for (const auto& [key, value] : sys.entries()) {
        const auto& x = sys.generator(key.first);
        const auto& y = sys.generator(key.second);
        if (x.action && y.action && !(*x.action > *y.action)) {
            r.ok = false;
            r.issues.push_back("entry " + x.name + "|" + y.name + " does not decrease the action (" +
                               std::to_string(*x.action) + " -> " + std::to_string(*y.action) + ")");
        }
    }
    return r;
}

enum class CheckStage { passed, structure, maurer_cartan, action_order };

inline const char* to_string(CheckStage s) {
    switch (s) {
        case CheckStage::passed: return "passed";
        case CheckStage::structure: return "structure";
        case CheckStage::maurer_cartan: return "maurer_cartan";
        case CheckStage::action_order: return "action_order";
    }
    return "?";
}

// Runs structure → Maurer–Cartan → action order and names the first failing check.
inline CheckStage run_checks(const GeneratorSystem& sys) {
    if (!check_structure(sys).ok) return CheckStage::structure;
    if (!validate_mc(sys).ok) return CheckStage::maurer_cartan;
    if (!check_action_order(sys).ok) return CheckStage::action_order;
    return CheckStage::passed;
}

// Builds the complex without requiring ∂A = A²; for diagnostics such as
// checking that MC failures show up as ∂² ≠ 0.
inline FilteredComplex assemble_unchecked(const GeneratorSystem& input, int cap) {
    if (input.size() == 0) throw InputError("generator system is empty");
    if (cap < input.min_mu())
        throw InputError("cap " + std::to_string(cap) + " is too small to hold any generator (min μ = " +
                         std::to_string(input.min_mu()) + ")");
    const auto sys = input.with_ring_cap(std::max(cap - input.min_mu(), input.max_mu() - input.min_mu() - 1));
    const auto& ring = sys.ring();
    std::vector<BaseGenerator> bases;
    for (const auto& g : sys.generators()) bases.push_back({g.name, g.mu, g.mu});
    std::vector<std::vector<std::pair<std::size_t, AlgElement>>> rows(sys.size());
    for (const auto& [key, value] : sys.entries()) rows[key.first].emplace_back(key.second, value);

    auto boundary_fn = [&](std::size_t x, const Monomial& w) {
        std::vector<ChainTerm> out;
        for (auto& t : ring->boundary(w)) out.emplace_back(x, std::move(t));
        for (const auto& [y, a] : rows[x])
            for (const auto& term : a.terms())
                for (auto& m : ring->multiply(w, term)) out.emplace_back(y, std::move(m));
        return out;
    };
    return FilteredComplex(ring, std::move(bases), cap, boundary_fn);
}

// Finite complex in total degrees [min μ, cap], filtered by μ.
inline FilteredComplex assemble(const GeneratorSystem& sys, int cap) {
    auto mc = validate_mc(sys);
    if (!mc.ok) {
        const auto& f = mc.failures.front();
        throw MaurerCartanFailure("∂A ≠ A² at " + f.source + "|" + f.target + ": residual " + f.residual().to_string());
    }
    return assemble_unchecked(sys, cap);
}

// Push every entry through a DGA morphism; the result is re-validated.
inline GeneratorSystem change_coefficients(const GeneratorSystem& sys, const DGAMorphism& f) {
    if (!same_ring(sys.ring(), f.source())) throw InputError("morphism source is not the system's ring");
    GeneratorSystem out(f.target(), sys.generators());
    for (const auto& [key, value] : sys.entries()) out.set_entry(key.first, key.second, f.apply(value));
    auto mc = validate_mc(out);
    if (!mc.ok) throw MaurerCartanFailure("change of coefficients broke ∂A = A² at " + mc.failures.front().source +
                                          "|" + mc.failures.front().target);
    return out;
}

// Shift every μ by k (a different choice of base point).
inline GeneratorSystem translate(const GeneratorSystem& sys, int k) {
    auto gens = sys.generators();
    for (auto& g : gens) g.mu += k;
    GeneratorSystem out(sys.ring(), std::move(gens));
    for (const auto& [key, value] : sys.entries()) out.set_entry(key.first, key.second, value);
    return out;
}

// Translate so that min μ = 0.
inline GeneratorSystem normalized(const GeneratorSystem& sys) { return translate(sys, -sys.min_mu()); }

}  // namespace loopfloer
