// Finite GF(2) chain complexes of the form  ⊕_b R ⊗ <b>  with an integer
// filtration on the "base" generators b. Both the extended Morse/Floer complex
// (bases = intersection/critical points) and the twisted tensor model of the
// path fibration (bases = coalgebra cells) are built through this type.

#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loopfloer/dgalg.hpp"
#include "loopfloer/errors.hpp"
#include "loopfloer/gf2.hpp"

namespace loopfloer {

struct ChainLabel {
    std::size_t base = 0;  // base generator index
    std::size_t word = 0;  // index into ring basis of degree (n - base degree)
    int filtration = 0;
};

struct BaseGenerator {
    std::string name;
    int degree = 0;      // contribution to total degree
    int filtration = 0;  // filtration level
};

// A term (base, ring monomial) of a boundary.
using ChainTerm = std::pair<std::size_t, Monomial>;
using BoundaryFn = std::function<std::vector<ChainTerm>(std::size_t base, const Monomial& word)>;

class FilteredComplex {
public:
    FilteredComplex() = default;

    // Chain groups in total degrees [min_degree, cap]. `ring` must reach degree
    // cap - min base degree.
    FilteredComplex(Ring ring, std::vector<BaseGenerator> bases, int cap, const BoundaryFn& boundary)
        : ring_(std::move(ring)), bases_(std::move(bases)), cap_(cap) {
        if (bases_.empty()) throw InputError("filtered complex needs at least one base generator");
        min_degree_ = bases_[0].degree;
        min_filtration_ = max_filtration_ = bases_[0].filtration;
        for (const auto& b : bases_) {
            min_degree_ = std::min(min_degree_, b.degree);
            min_filtration_ = std::min(min_filtration_, b.filtration);
            max_filtration_ = std::max(max_filtration_, b.filtration);
        }
        if (cap_ < min_degree_)
            throw InputError("cap " + std::to_string(cap_) + " is below the lowest generator degree " +
                             std::to_string(min_degree_));
        if (ring_->degree_cap() < cap_ - min_degree_)
            throw CapOverflow("ring cap " + std::to_string(ring_->degree_cap()) + " cannot reach total degree " +
                              std::to_string(cap_));

        order_.resize(bases_.size());
        std::iota(order_.begin(), order_.end(), std::size_t{0});
        std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) {
            if (bases_[a].filtration != bases_[b].filtration) return bases_[a].filtration < bases_[b].filtration;
            return bases_[a].name < bases_[b].name;
        });

        const auto count = static_cast<std::size_t>(cap_ - min_degree_ + 1);
        labels_.resize(count);
        offsets_.assign(count, std::vector<std::size_t>(bases_.size(), 0));
        for (int n = min_degree_; n <= cap_; ++n) {
            auto& labels = labels_[slot(n)];
            for (auto b : order_) {
                offsets_[slot(n)][b] = labels.size();
                const int q = n - bases_[b].degree;
                for (std::size_t w = 0; w < ring_->dim(q); ++w) labels.push_back({b, w, bases_[b].filtration});
            }
        }

        columns_.resize(count);
        boundaries_.resize(count);
        for (int n = min_degree_; n <= cap_; ++n) {
            const auto& labels = labels_[slot(n)];
            std::vector<gf2::BitVector> cols;
            cols.reserve(labels.size());
            for (const auto& l : labels) {
                gf2::BitVector col(dim(n - 1));
                const auto& word = ring_->basis(n - bases_[l.base].degree)[l.word];
                for (const auto& [b, m] : boundary(l.base, word)) {
                    if (ring_->degree(m) + bases_[b].degree != n - 1)
                        throw InvariantViolation("boundary term has the wrong total degree");
                    col.flip(index_of(n - 1, b, ring_->index_of(m)));
                }
                cols.push_back(std::move(col));
            }
            boundaries_[slot(n)] = gf2::F2Matrix::from_columns(dim(n - 1), cols);
            columns_[slot(n)] = std::move(cols);
        }
    }

    const Ring& ring() const { return ring_; }
    const std::vector<BaseGenerator>& bases() const { return bases_; }
    int cap() const { return cap_; }
    int min_degree() const { return min_degree_; }
    int min_filtration() const { return min_filtration_; }
    int max_filtration() const { return max_filtration_; }

    std::size_t dim(int n) const { return in_range(n) ? labels_[slot(n)].size() : 0; }

    const std::vector<ChainLabel>& labels(int n) const {
        static const std::vector<ChainLabel> empty;
        return in_range(n) ? labels_[slot(n)] : empty;
    }

    // ∂_n : C_n → C_{n-1}. Outside the stored range this is a zero map.
    gf2::F2Matrix boundary(int n) const {
        if (in_range(n)) return boundaries_[slot(n)];
        return gf2::F2Matrix(dim(n - 1), dim(n));
    }

    const gf2::F2Matrix& boundary_ref(int n) const { return boundaries_.at(slot(n)); }

    // ∂ v for v ∈ C_n, via column XOR.
    gf2::BitVector apply_boundary(int n, const gf2::BitVector& v) const {
        gf2::BitVector out(dim(n - 1));
        if (!in_range(n)) return out;
        const auto& cols = columns_[slot(n)];
        for (auto i : v.ones()) out ^= cols[i];
        return out;
    }

    // Number of basis elements of C_n with filtration <= p (a prefix, since the
    // basis is sorted by filtration).
    std::size_t filtration_end(int n, int p) const {
        const auto& l = labels(n);
        return static_cast<std::size_t>(
            std::partition_point(l.begin(), l.end(), [p](const ChainLabel& c) { return c.filtration <= p; }) -
            l.begin());
    }

    std::optional<std::size_t> find(int n, std::size_t base, std::size_t word) const {
        if (!in_range(n)) return std::nullopt;
        const int q = n - bases_[base].degree;
        if (q < 0 || word >= ring_->dim(q)) return std::nullopt;
        return offsets_[slot(n)][base] + word;
    }

    std::size_t index_of(int n, std::size_t base, std::size_t word) const {
        auto i = find(n, base, word);
        if (!i) throw InvariantViolation("chain (" + bases_[base].name + ", word " + std::to_string(word) +
                                         ") is outside degree " + std::to_string(n));
        return *i;
    }

    std::string label_string(int n, std::size_t i) const {
        const auto& l = labels(n)[i];
        const auto& word = ring_->basis(n - bases_[l.base].degree)[l.word];
        return ring_->to_string(word) + "⊗" + bases_[l.base].name;
    }

    // First total degree n with ∂_{n-1}∂_n ≠ 0, if any.
    std::optional<int> first_nonzero_square() const {
        for (int n = min_degree_ + 1; n <= cap_; ++n)
            if (!(boundaries_[slot(n - 1)] * boundaries_[slot(n)]).is_zero()) return n;
        return std::nullopt;
    }

    bool boundary_squares_zero() const { return !first_nonzero_square().has_value(); }

    // Every boundary term has filtration <= the filtration of its source.
    bool filtration_compatible() const {
        for (int n = min_degree_; n <= cap_; ++n) {
            const auto& src = labels_[slot(n)];
            const auto& cols = columns_[slot(n)];
            const auto& dst = labels(n - 1);
            for (std::size_t j = 0; j < src.size(); ++j)
                for (auto i : cols[j].ones())
                    if (dst[i].filtration > src[j].filtration) return false;
        }
        return true;
    }

    // Order in which bases appear inside each degree (filtration, then name).
    const std::vector<std::size_t>& base_order() const { return order_; }

private:
    bool in_range(int n) const { return n >= min_degree_ && n <= cap_; }
    std::size_t slot(int n) const { return static_cast<std::size_t>(n - min_degree_); }

    Ring ring_;
    std::vector<BaseGenerator> bases_;
    int cap_ = 0;
    int min_degree_ = 0;
    int min_filtration_ = 0;
    int max_filtration_ = 0;
    std::vector<std::size_t> order_;
    std::vector<std::vector<ChainLabel>> labels_;
    std::vector<std::vector<std::size_t>> offsets_;
    std::vector<std::vector<gf2::BitVector>> columns_;
    std::vector<gf2::F2Matrix> boundaries_;
};

}  // namespace loopfloer
