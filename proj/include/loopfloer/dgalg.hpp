// Differential graded coalgebras and algebras over GF(2).
//
// A DGCoalgebra is a finite model of a simply connected space; cobar() turns
// it into a free DGA modelling chains on the based loop space. DGAlgebra is a
// tensor product of factors, each either free (words in generators) or given
// by an explicit multiplication table. Everything is truncated at a mandatory
// degree cap; products past the cap raise CapOverflow.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "loopfloer/errors.hpp"
#include "loopfloer/gf2.hpp"

namespace loopfloer {

namespace detail {

// Sort and cancel equal pairs: the GF(2) normal form of a formal sum.
template <typename T>
void normalize_mod2(std::vector<T>& terms) {
    std::sort(terms.begin(), terms.end());
    std::vector<T> out;
    out.reserve(terms.size());
    for (std::size_t i = 0; i < terms.size();) {
        std::size_t j = i;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) % 2 == 1) out.push_back(terms[i]);
        i = j;
    }
    terms = std::move(out);
}

inline void check_name(const std::string& name, const std::string& what) {
    static const std::regex pattern("[A-Za-z0-9_]+");
    if (!std::regex_match(name, pattern)) throw InputError(what + " name '" + name + "' must match [A-Za-z0-9_]+");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Coalgebras

struct CoalgebraCell {
    std::string name;
    int degree = 0;
};

class DGCoalgebra {
public:
    using Index = std::size_t;
    using Tensor = std::pair<Index, Index>;

    using CoproductSpec = std::map<std::string, std::vector<std::pair<std::string, std::string>>>;
    using DifferentialSpec = std::map<std::string, std::vector<std::string>>;

    // Builds and validates. Omitted coproduct/differential entries are zero.
    static DGCoalgebra create(std::vector<CoalgebraCell> basis, const CoproductSpec& reduced_coproduct = {},
                              const DifferentialSpec& differential = {}) {
        DGCoalgebra c;
        c.basis_ = std::move(basis);
        for (std::size_t i = 0; i < c.basis_.size(); ++i) {
            const auto& cell = c.basis_[i];
            detail::check_name(cell.name, "coalgebra basis");
            if (cell.degree < 0) throw InputError("coalgebra element '" + cell.name + "' has negative degree");
            if (cell.degree == 1)
                throw InputError("coalgebra element '" + cell.name +
                                 "' has degree 1; models must be simply connected");
            if (!c.index_.emplace(cell.name, i).second) throw InputError("duplicate coalgebra name '" + cell.name + "'");
        }
        std::size_t units = 0;
        for (std::size_t i = 0; i < c.basis_.size(); ++i)
            if (c.basis_[i].degree == 0) {
                ++units;
                c.unit_ = i;
            }
        if (units != 1) throw InputError("coalgebra needs exactly one degree-0 element, found " + std::to_string(units));

        c.coproduct_.assign(c.basis_.size(), {});
        c.differential_.assign(c.basis_.size(), {});
        for (const auto& [name, terms] : reduced_coproduct) {
            auto i = c.lookup(name);
            for (const auto& [l, r] : terms) c.coproduct_[i].emplace_back(c.lookup(l), c.lookup(r));
            detail::normalize_mod2(c.coproduct_[i]);
        }
        for (const auto& [name, terms] : differential) {
            auto i = c.lookup(name);
            for (const auto& t : terms) c.differential_[i].push_back(c.lookup(t));
            detail::normalize_mod2(c.differential_[i]);
        }
        c.validate();
        return c;
    }

    static DGCoalgebra point(const std::string& unit = "1") { return create({{unit, 0}}); }

    // H_*(S^n): unit and one primitive class in degree n.
    static DGCoalgebra sphere(int n, const std::string& name = "x") {
        if (n < 2) throw InputError("sphere coalgebra needs n >= 2, got " + std::to_string(n));
        return create({{"1", 0}, {name, n}});
    }

    // Tensor coalgebra of two models; cells named by concatenating non-unit names.
    static DGCoalgebra product(const DGCoalgebra& a, const DGCoalgebra& b) {
        std::vector<CoalgebraCell> basis;
        auto pair_name = [&](Index i, Index j) {
            if (i == a.unit_ && j == b.unit_) return std::string("1");
            if (i == a.unit_) return b.basis_[j].name;
            if (j == b.unit_) return a.basis_[i].name;
            return a.basis_[i].name + b.basis_[j].name;
        };
        for (Index i = 0; i < a.size(); ++i)
            for (Index j = 0; j < b.size(); ++j) basis.push_back({pair_name(i, j), a.degree(i) + b.degree(j)});

        CoproductSpec coproduct;
        DifferentialSpec differential;
        for (Index i = 0; i < a.size(); ++i) {
            for (Index j = 0; j < b.size(); ++j) {
                const auto name = pair_name(i, j);
                auto full_a = a.full_coproduct(i);
                auto full_b = b.full_coproduct(j);
                std::vector<std::pair<std::string, std::string>> terms;
                for (auto [a1, a2] : full_a)
                    for (auto [b1, b2] : full_b) {
                        bool left_unit = a1 == a.unit_ && b1 == b.unit_;
                        bool right_unit = a2 == a.unit_ && b2 == b.unit_;
                        if (left_unit || right_unit) continue;
                        terms.emplace_back(pair_name(a1, b1), pair_name(a2, b2));
                    }
                detail::normalize_mod2(terms);
                if (!terms.empty()) coproduct[name] = terms;
                std::vector<std::string> d;
                for (auto t : a.differential(i)) d.push_back(pair_name(t, j));
                for (auto t : b.differential(j)) d.push_back(pair_name(i, t));
                detail::normalize_mod2(d);
                if (!d.empty()) differential[name] = d;
            }
        }
        return create(std::move(basis), coproduct, differential);
    }

    std::size_t size() const { return basis_.size(); }
    const CoalgebraCell& cell(Index i) const { return basis_.at(i); }
    const std::vector<CoalgebraCell>& basis() const { return basis_; }
    int degree(Index i) const { return basis_.at(i).degree; }
    Index unit() const { return unit_; }
    const std::vector<Tensor>& reduced_coproduct(Index i) const { return coproduct_.at(i); }
    const std::vector<Index>& differential(Index i) const { return differential_.at(i); }

    std::optional<Index> find(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    int max_degree() const {
        int m = 0;
        for (const auto& c : basis_) m = std::max(m, c.degree);
        return m;
    }

    // Δc = c⊗1 + 1⊗c + Δ̄c for c ≠ 1, and Δ1 = 1⊗1.
    std::vector<Tensor> full_coproduct(Index i) const {
        if (i == unit_) return {{unit_, unit_}};
        std::vector<Tensor> out{{i, unit_}, {unit_, i}};
        out.insert(out.end(), coproduct_[i].begin(), coproduct_[i].end());
        return out;
    }

    friend bool operator==(const DGCoalgebra& a, const DGCoalgebra& b) {
        if (a.basis_.size() != b.basis_.size()) return false;
        for (std::size_t i = 0; i < a.basis_.size(); ++i)
            if (a.basis_[i].name != b.basis_[i].name || a.basis_[i].degree != b.basis_[i].degree) return false;
        return a.coproduct_ == b.coproduct_ && a.differential_ == b.differential_;
    }

private:
    Index lookup(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) throw InputError("unknown coalgebra element '" + name + "'");
        return it->second;
    }

    void validate() const {
        for (Index i = 0; i < size(); ++i) {
            const auto& name = basis_[i].name;
            for (auto [l, r] : coproduct_[i]) {
                if (l == unit_ || r == unit_)
                    throw InvariantViolation("reduced coproduct of '" + name + "' contains the unit");
                if (degree(l) + degree(r) != degree(i))
                    throw InvariantViolation("coproduct term of '" + name + "' has the wrong degree");
            }
            for (auto t : differential_[i])
                if (degree(t) != degree(i) - 1)
                    throw InvariantViolation("differential of '" + name + "' does not lower degree by one");
        }
        if (!coproduct_[unit_].empty() || !differential_[unit_].empty())
            throw InvariantViolation("the unit must be primitive-free and a cycle");

        for (Index i = 0; i < size(); ++i) {
            const auto& name = basis_[i].name;
            // Coassociativity of the reduced coproduct.
            std::vector<std::tuple<Index, Index, Index>> left, right;
            for (auto [l, r] : coproduct_[i]) {
                for (auto [ll, lr] : coproduct_[l]) left.emplace_back(ll, lr, r);
                for (auto [rl, rr] : coproduct_[r]) right.emplace_back(l, rl, rr);
            }
            left.insert(left.end(), right.begin(), right.end());
            detail::normalize_mod2(left);
            if (!left.empty()) throw InvariantViolation("reduced coproduct is not coassociative on '" + name + "'");

            // d² = 0.
            std::vector<Index> dd;
            for (auto t : differential_[i]) dd.insert(dd.end(), differential_[t].begin(), differential_[t].end());
            detail::normalize_mod2(dd);
            if (!dd.empty()) throw InvariantViolation("coalgebra differential does not square to zero on '" + name + "'");

            // Coderivation: Δ̄d = (d⊗1 + 1⊗d)Δ̄.
            std::vector<Tensor> lhs;
            for (auto t : differential_[i]) lhs.insert(lhs.end(), coproduct_[t].begin(), coproduct_[t].end());
            for (auto [l, r] : coproduct_[i]) {
                for (auto t : differential_[l])
                    if (t != unit_) lhs.emplace_back(t, r);
                for (auto t : differential_[r])
                    if (t != unit_) lhs.emplace_back(l, t);
            }
            detail::normalize_mod2(lhs);
            if (!lhs.empty()) throw InvariantViolation("differential is not a coderivation on '" + name + "'");
        }
    }

    std::vector<CoalgebraCell> basis_;
    std::map<std::string, Index> index_;
    Index unit_ = 0;
    std::vector<std::vector<Tensor>> coproduct_;
    std::vector<std::vector<Index>> differential_;
};

// ---------------------------------------------------------------------------
// Algebras

using Letter = std::uint16_t;
using Word = std::vector<Letter>;
// One word per tensor factor. For table factors the word is empty (unit) or a
// single basis index.
using Monomial = std::vector<Word>;

struct FreeFactor {
    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<std::vector<Word>> differential;  // per generator, GF(2) sum of words
    friend bool operator==(const FreeFactor&, const FreeFactor&) = default;
};

// Finite algebra with explicit basis; index 0 is the unit.
struct TableFactor {
    std::vector<std::string> names;
    std::vector<int> degrees;
    std::vector<std::vector<std::vector<Letter>>> product;  // [i][j], i,j >= 1, GF(2) sum of basis indices
    std::vector<std::vector<Letter>> differential;          // per basis element
    friend bool operator==(const TableFactor&, const TableFactor&) = default;
};

using Factor = std::variant<FreeFactor, TableFactor>;

class DGAlgebra;
using Ring = std::shared_ptr<const DGAlgebra>;

class DGAlgebra {
    struct Private {};

public:
    enum class Kind { free_tensor, table };

    DGAlgebra(Private, std::vector<Factor> factors, int cap) : factors_(std::move(factors)), cap_(cap) {}

    // Single free factor. Generators must have degree >= 1.
    static Ring free(std::vector<std::string> names, std::vector<int> degrees,
                     const std::map<std::string, std::vector<std::vector<std::string>>>& differential, int cap) {
        FreeFactor f;
        f.names = std::move(names);
        f.degrees = std::move(degrees);
        if (f.names.size() != f.degrees.size()) throw InputError("generator names and degrees differ in length");
        f.differential.assign(f.names.size(), {});
        std::map<std::string, Letter> idx;
        for (std::size_t i = 0; i < f.names.size(); ++i) {
            if (f.degrees[i] < 1) throw InputError("free generator '" + f.names[i] + "' must have degree >= 1");
            if (!idx.emplace(f.names[i], static_cast<Letter>(i)).second)
                throw InputError("duplicate generator '" + f.names[i] + "'");
        }
        for (const auto& [g, words] : differential) {
            auto it = idx.find(g);
            if (it == idx.end()) throw InputError("differential given for unknown generator '" + g + "'");
            for (const auto& w : words) {
                Word word;
                for (const auto& l : w) {
                    auto jt = idx.find(l);
                    if (jt == idx.end()) throw InputError("unknown generator '" + l + "' in differential");
                    word.push_back(jt->second);
                }
                f.differential[it->second].push_back(std::move(word));
            }
            detail::normalize_mod2(f.differential[it->second]);
        }
        return make({std::move(f)}, cap);
    }

    // GF(2) concentrated in degree 0.
    static Ring trivial(int cap) { return make({}, cap); }

    // Finite algebra from a multiplication table. `basis` excludes the unit,
    // which is implicit (name "1"). Products and differentials are sums of names,
    // "1" denoting the unit.
    static Ring table(const std::vector<std::pair<std::string, int>>& basis,
                      const std::map<std::pair<std::string, std::string>, std::vector<std::string>>& products,
                      const std::map<std::string, std::vector<std::string>>& differential, int cap) {
        TableFactor t;
        t.names.push_back("1");
        t.degrees.push_back(0);
        std::map<std::string, Letter> idx{{"1", 0}};
        for (const auto& [name, deg] : basis) {
            if (deg < 1) throw InputError("table element '" + name + "' must have degree >= 1");
            if (!idx.emplace(name, static_cast<Letter>(t.names.size())).second)
                throw InputError("duplicate table element '" + name + "'");
            t.names.push_back(name);
            t.degrees.push_back(deg);
        }
        auto lookup = [&](const std::string& n) {
            auto it = idx.find(n);
            if (it == idx.end()) throw InputError("unknown table element '" + n + "'");
            return it->second;
        };
        const auto n = t.names.size();
        t.product.assign(n, std::vector<std::vector<Letter>>(n));
        t.differential.assign(n, {});
        for (const auto& [key, sum] : products) {
            auto i = lookup(key.first), j = lookup(key.second);
            if (i == 0 || j == 0) throw InputError("products with the unit are implicit");
            for (const auto& s : sum) t.product[i][j].push_back(lookup(s));
            detail::normalize_mod2(t.product[i][j]);
        }
        for (const auto& [name, sum] : differential) {
            auto i = lookup(name);
            for (const auto& s : sum) t.differential[i].push_back(lookup(s));
            detail::normalize_mod2(t.differential[i]);
        }
        return make({std::move(t)}, cap);
    }

    static Ring make(std::vector<Factor> factors, int cap) {
        if (cap < 0) throw InputError("degree cap must be non-negative");
        auto ring = std::make_shared<DGAlgebra>(Private{}, std::move(factors), cap);
        ring->index_letters();
        ring->validate_factors();
        ring->enumerate_basis();
        ring->validate_boundary_squares();
        return ring;
    }

    // Same generators and relations, different truncation.
    Ring with_cap(int cap) const { return make(factors_, cap); }

    int degree_cap() const { return cap_; }
    const std::vector<Factor>& factors() const { return factors_; }

    Kind kind() const {
        for (const auto& f : factors_)
            if (std::holds_alternative<TableFactor>(f)) return Kind::table;
        return Kind::free_tensor;
    }

    // Basis monomials of degree q in canonical (lexicographic) order.
    const std::vector<Monomial>& basis(int q) const {
        if (q < 0) return empty_basis();
        if (q > cap_)
            throw CapOverflow("degree " + std::to_string(q) + " exceeds algebra cap " + std::to_string(cap_));
        return basis_[static_cast<std::size_t>(q)];
    }

    std::size_t dim(int q) const { return q < 0 ? 0 : basis(q).size(); }

    std::size_t index_of(const Monomial& m) const {
        auto q = degree(m);
        const auto& table = index_.at(static_cast<std::size_t>(q));
        auto it = table.find(m);
        if (it == table.end()) throw InvariantViolation("monomial is not a basis element");
        return it->second;
    }

    int degree(const Monomial& m) const {
        int d = 0;
        for (std::size_t f = 0; f < factors_.size(); ++f)
            for (auto l : m[f]) d += letter_degree(f, l);
        return d;
    }

    Monomial unit_monomial() const { return Monomial(factors_.size()); }

    // GF(2) normal form of the product of two monomials.
    std::vector<Monomial> multiply(const Monomial& a, const Monomial& b) const {
        const int d = degree(a) + degree(b);
        if (d > cap_)
            throw CapOverflow("product of degree " + std::to_string(d) + " exceeds algebra cap " + std::to_string(cap_));
        std::vector<Monomial> partial{Monomial{}};
        for (std::size_t f = 0; f < factors_.size(); ++f) {
            std::vector<Word> options;
            if (const auto* free = std::get_if<FreeFactor>(&factors_[f])) {
                (void)free;
                Word w = a[f];
                w.insert(w.end(), b[f].begin(), b[f].end());
                options.push_back(std::move(w));
            } else {
                const auto& t = std::get<TableFactor>(factors_[f]);
                if (a[f].empty()) {
                    options.push_back(b[f]);
                } else if (b[f].empty()) {
                    options.push_back(a[f]);
                } else {
                    for (auto k : t.product[a[f][0]][b[f][0]]) options.push_back(k == 0 ? Word{} : Word{k});
                }
            }
            std::vector<Monomial> next;
            for (const auto& p : partial)
                for (const auto& o : options) {
                    auto m = p;
                    m.push_back(o);
                    next.push_back(std::move(m));
                }
            partial = std::move(next);
        }
        detail::normalize_mod2(partial);
        return partial;
    }

    // Derivation extension of the generator/table differentials.
    std::vector<Monomial> boundary(const Monomial& m) const {
        std::vector<Monomial> out;
        for (std::size_t f = 0; f < factors_.size(); ++f) {
            for (auto& part : boundary_of_part(f, m[f])) {
                auto copy = m;
                copy[f] = std::move(part);
                out.push_back(std::move(copy));
            }
        }
        detail::normalize_mod2(out);
        return out;
    }

    struct LetterRef {
        std::size_t factor;
        Letter letter;
    };

    std::optional<LetterRef> find_letter(const std::string& name) const {
        auto it = letters_.find(name);
        if (it == letters_.end()) return std::nullopt;
        return it->second;
    }

    const std::string& letter_name(std::size_t factor, Letter l) const {
        return std::visit([&](const auto& f) -> const std::string& { return f.names[l]; }, factors_[factor]);
    }

    int letter_degree(std::size_t factor, Letter l) const {
        return std::visit([&](const auto& f) { return f.degrees[l]; }, factors_[factor]);
    }

    // Non-unit letters in canonical order (factor, index).
    std::vector<LetterRef> letters() const {
        std::vector<LetterRef> out;
        for (std::size_t f = 0; f < factors_.size(); ++f) {
            if (const auto* free = std::get_if<FreeFactor>(&factors_[f])) {
                for (std::size_t i = 0; i < free->names.size(); ++i) out.push_back({f, static_cast<Letter>(i)});
            } else {
                const auto& t = std::get<TableFactor>(factors_[f]);
                for (std::size_t i = 1; i < t.names.size(); ++i) out.push_back({f, static_cast<Letter>(i)});
            }
        }
        return out;
    }

    Monomial letter_monomial(LetterRef ref) const {
        auto m = unit_monomial();
        m[ref.factor] = Word{ref.letter};
        return m;
    }

    std::string to_string(const Monomial& m) const {
        std::string s;
        for (std::size_t f = 0; f < factors_.size(); ++f)
            for (auto l : m[f]) {
                if (!s.empty()) s += "*";
                s += letter_name(f, l);
            }
        return s.empty() ? "1" : s;
    }

    friend bool operator==(const DGAlgebra& a, const DGAlgebra& b) {
        return a.cap_ == b.cap_ && a.factors_ == b.factors_;
    }

private:
    static const std::vector<Monomial>& empty_basis() {
        static const std::vector<Monomial> empty;
        return empty;
    }

    std::vector<Word> boundary_of_part(std::size_t f, const Word& w) const {
        std::vector<Word> out;
        if (const auto* free = std::get_if<FreeFactor>(&factors_[f])) {
            for (std::size_t j = 0; j < w.size(); ++j) {
                for (const auto& t : free->differential[w[j]]) {
                    Word r(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(j));
                    r.insert(r.end(), t.begin(), t.end());
                    r.insert(r.end(), w.begin() + static_cast<std::ptrdiff_t>(j) + 1, w.end());
                    out.push_back(std::move(r));
                }
            }
        } else if (!w.empty()) {
            const auto& t = std::get<TableFactor>(factors_[f]);
            for (auto k : t.differential[w[0]]) out.push_back(k == 0 ? Word{} : Word{k});
        }
        detail::normalize_mod2(out);
        return out;
    }

    void index_letters() {
        for (std::size_t f = 0; f < factors_.size(); ++f) {
            std::visit(
                [&](const auto& fac) {
                    using T = std::decay_t<decltype(fac)>;
                    const std::size_t first = std::is_same_v<T, TableFactor> ? 1 : 0;
                    for (std::size_t i = first; i < fac.names.size(); ++i)
                        if (!letters_.emplace(fac.names[i], LetterRef{f, static_cast<Letter>(i)}).second)
                            throw InputError("letter name '" + fac.names[i] +
                                             "' occurs in more than one tensor factor; rename one of them");
                },
                factors_[f]);
        }
    }

    void validate_factors() const {
        for (const auto& fac : factors_) {
            if (const auto* free = std::get_if<FreeFactor>(&fac)) {
                for (std::size_t g = 0; g < free->names.size(); ++g) {
                    if (free->degrees[g] < 1)
                        throw InputError("free generator '" + free->names[g] + "' must have degree >= 1");
                    for (const auto& w : free->differential[g]) {
                        int d = 0;
                        for (auto l : w) d += free->degrees[l];
                        if (d != free->degrees[g] - 1)
                            throw InvariantViolation("differential of '" + free->names[g] +
                                                     "' is not of degree -1");
                    }
                }
            } else {
                const auto& t = std::get<TableFactor>(fac);
                const auto n = t.names.size();
                for (std::size_t i = 1; i < n; ++i) {
                    for (auto k : t.differential[i])
                        if (t.degrees[k] != t.degrees[i] - 1)
                            throw InvariantViolation("table differential of '" + t.names[i] + "' is not of degree -1");
                    for (std::size_t j = 1; j < n; ++j)
                        for (auto k : t.product[i][j])
                            if (t.degrees[k] != t.degrees[i] + t.degrees[j])
                                throw InvariantViolation("table product " + t.names[i] + "*" + t.names[j] +
                                                         " is not additive in degree");
                }
                auto mul = [&](const std::vector<Letter>& xs, Letter y, bool y_left) {
                    std::vector<Letter> out;
                    for (auto x : xs) {
                        if (x == 0) {
                            out.push_back(y);
                            continue;
                        }
                        const auto& p = y_left ? t.product[y][x] : t.product[x][y];
                        out.insert(out.end(), p.begin(), p.end());
                    }
                    detail::normalize_mod2(out);
                    return out;
                };
                for (std::size_t i = 1; i < n; ++i)
                    for (std::size_t j = 1; j < n; ++j) {
                        for (std::size_t k = 1; k < n; ++k) {
                            auto lhs = mul(t.product[i][j], static_cast<Letter>(k), false);
                            auto rhs = mul(t.product[j][k], static_cast<Letter>(i), true);
                            if (lhs != rhs)
                                throw InvariantViolation("table product is not associative on (" + t.names[i] + "," +
                                                         t.names[j] + "," + t.names[k] + ")");
                        }
                        // Leibniz: ∂(ij) = (∂i)j + i(∂j).
                        std::vector<Letter> lhs;
                        for (auto k : t.product[i][j])
                            lhs.insert(lhs.end(), t.differential[k].begin(), t.differential[k].end());
                        auto a = mul(t.differential[i], static_cast<Letter>(j), false);
                        auto b = mul(t.differential[j], static_cast<Letter>(i), true);
                        lhs.insert(lhs.end(), a.begin(), a.end());
                        lhs.insert(lhs.end(), b.begin(), b.end());
                        detail::normalize_mod2(lhs);
                        if (!lhs.empty())
                            throw InvariantViolation("table differential violates Leibniz on (" + t.names[i] + "," +
                                                     t.names[j] + ")");
                    }
            }
        }
    }

    // Basis words of one factor by degree.
    std::vector<std::vector<Word>> factor_words(std::size_t f) const {
        std::vector<std::vector<Word>> by_degree(static_cast<std::size_t>(cap_) + 1);
        by_degree[0].push_back(Word{});
        if (const auto* free = std::get_if<FreeFactor>(&factors_[f])) {
            // words of degree d = g · (word of degree d - deg g); lexicographic by construction.
            for (int d = 1; d <= cap_; ++d)
                for (std::size_t g = 0; g < free->names.size(); ++g) {
                    int rest = d - free->degrees[g];
                    if (rest < 0) continue;
                    for (const auto& tail : by_degree[static_cast<std::size_t>(rest)]) {
                        Word w{static_cast<Letter>(g)};
                        w.insert(w.end(), tail.begin(), tail.end());
                        by_degree[static_cast<std::size_t>(d)].push_back(std::move(w));
                    }
                }
        } else {
            const auto& t = std::get<TableFactor>(factors_[f]);
            for (std::size_t i = 1; i < t.names.size(); ++i)
                if (t.degrees[i] <= cap_) by_degree[static_cast<std::size_t>(t.degrees[i])].push_back(Word{static_cast<Letter>(i)});
        }
        return by_degree;
    }

    void enumerate_basis() {
        const auto top = static_cast<std::size_t>(cap_) + 1;
        // Monomials over the first k factors, by degree.
        std::vector<std::vector<Monomial>> acc(top);
        acc[0].push_back(Monomial{});
        for (std::size_t f = 0; f < factors_.size(); ++f) {
            auto words = factor_words(f);
            std::vector<std::vector<Monomial>> next(top);
            for (std::size_t d1 = 0; d1 < top; ++d1)
                for (const auto& m : acc[d1])
                    for (std::size_t d2 = 0; d1 + d2 < top; ++d2)
                        for (const auto& w : words[d2]) {
                            auto x = m;
                            x.push_back(w);
                            next[d1 + d2].push_back(std::move(x));
                        }
            acc = std::move(next);
        }
        basis_.resize(top);
        index_.resize(top);
        for (std::size_t d = 0; d < top; ++d) {
            std::sort(acc[d].begin(), acc[d].end());
            basis_[d] = std::move(acc[d]);
            for (std::size_t i = 0; i < basis_[d].size(); ++i) index_[d].emplace(basis_[d][i], i);
        }
    }

    void validate_boundary_squares() const {
        for (int q = 1; q <= cap_; ++q)
            for (const auto& m : basis_[static_cast<std::size_t>(q)]) {
                std::vector<Monomial> dd;
                for (const auto& t : boundary(m)) {
                    auto b = boundary(t);
                    dd.insert(dd.end(), b.begin(), b.end());
                }
                detail::normalize_mod2(dd);
                if (!dd.empty()) throw InvariantViolation("algebra differential does not square to zero on " + to_string(m));
            }
    }

    std::vector<Factor> factors_;
    int cap_;
    std::map<std::string, LetterRef> letters_;
    std::vector<std::vector<Monomial>> basis_;
    std::vector<std::map<Monomial, std::size_t>> index_;
};

inline bool same_ring(const Ring& a, const Ring& b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------------------
// Elements

class AlgElement {
public:
    AlgElement(Ring ring, int degree) : ring_(std::move(ring)), degree_(degree) {}

    static AlgElement unit(const Ring& ring) { return from_monomial(ring, ring->unit_monomial()); }

    static AlgElement from_monomial(const Ring& ring, Monomial m) {
        AlgElement e(ring, ring->degree(m));
        e.terms_.insert(std::move(m));
        return e;
    }

    static AlgElement from_terms(const Ring& ring, int degree, const std::vector<Monomial>& terms) {
        AlgElement e(ring, degree);
        for (const auto& t : terms) e.toggle(t);
        return e;
    }

    static AlgElement letter(const Ring& ring, const std::string& name) {
        auto ref = ring->find_letter(name);
        if (!ref) throw InputError("unknown generator '" + name + "'");
        return from_monomial(ring, ring->letter_monomial(*ref));
    }

    // Ordered product of letters; the empty word is the unit.
    static AlgElement word(const Ring& ring, const std::vector<std::string>& letters) {
        auto e = unit(ring);
        for (const auto& l : letters) e = e * letter(ring, l);
        return e;
    }

    const Ring& ring() const { return ring_; }
    int degree() const { return degree_; }
    const std::set<Monomial>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_unit() const { return terms_.size() == 1 && *terms_.begin() == ring_->unit_monomial(); }

    void toggle(const Monomial& m) {
        if (ring_->degree(m) != degree_)
            throw InvariantViolation("term " + ring_->to_string(m) + " is not of degree " + std::to_string(degree_));
        if (auto it = terms_.find(m); it != terms_.end())
            terms_.erase(it);
        else
            terms_.insert(m);
    }

    AlgElement& operator+=(const AlgElement& other) {
        check_compatible(other);
        if (other.degree_ != degree_ && !other.is_zero() && !is_zero())
            throw InvariantViolation("cannot add elements of degrees " + std::to_string(degree_) + " and " +
                                     std::to_string(other.degree_));
        if (is_zero() && !other.is_zero()) degree_ = other.degree_;
        for (const auto& t : other.terms_) toggle(t);
        return *this;
    }

    friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }

    friend AlgElement operator*(const AlgElement& a, const AlgElement& b) {
        a.check_compatible(b);
        const int d = a.degree_ + b.degree_;
        if (d > a.ring_->degree_cap())
            throw CapOverflow("product of degree " + std::to_string(d) + " exceeds algebra cap " +
                              std::to_string(a.ring_->degree_cap()));
        AlgElement out(a.ring_, d);
        for (const auto& x : a.terms_)
            for (const auto& y : b.terms_)
                for (const auto& t : a.ring_->multiply(x, y)) out.toggle(t);
        return out;
    }

    friend bool operator==(const AlgElement& a, const AlgElement& b) {
        if (!same_ring(a.ring_, b.ring_)) return false;
        if (a.is_zero() && b.is_zero()) return true;
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    // Coefficient vector in the canonical basis of the element's degree.
    gf2::BitVector to_vector() const {
        gf2::BitVector v(ring_->dim(degree_));
        for (const auto& t : terms_) v.set(ring_->index_of(t));
        return v;
    }

    static AlgElement from_vector(const Ring& ring, int degree, const gf2::BitVector& v) {
        AlgElement e(ring, degree);
        const auto& basis = ring->basis(degree);
        for (auto i : v.ones()) e.terms_.insert(basis[i]);
        return e;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (const auto& t : terms_) {
            if (!s.empty()) s += " + ";
            s += ring_->to_string(t);
        }
        return s;
    }

private:
    void check_compatible(const AlgElement& other) const {
        if (!same_ring(ring_, other.ring_)) throw InvariantViolation("elements belong to different algebras");
    }

    Ring ring_;
    int degree_;
    std::set<Monomial> terms_;
};

inline AlgElement boundary(const AlgElement& x) {
    AlgElement out(x.ring(), x.degree() - 1);
    for (const auto& t : x.terms())
        for (const auto& b : x.ring()->boundary(t)) out.toggle(b);
    return out;
}

// Matrix of ∂: R_q → R_{q-1} in canonical bases.
inline gf2::F2Matrix boundary_matrix(const DGAlgebra& ring, int q) {
    const auto& src = ring.basis(q);
    gf2::F2Matrix m(ring.dim(q - 1), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
        for (const auto& t : ring.boundary(src[j])) m.set(ring.index_of(t), j);
    return m;
}

struct DegreeDim {
    int degree;
    std::size_t dim;
    friend bool operator==(const DegreeDim&, const DegreeDim&) = default;
};

// dim H_q for 0 <= q <= cap; needs the algebra through degree cap + 1.
inline std::vector<DegreeDim> homology_dims(const DGAlgebra& ring, int cap) {
    if (cap + 1 > ring.degree_cap())
        throw CapOverflow("homology through degree " + std::to_string(cap) + " needs algebra cap " +
                          std::to_string(cap + 1) + ", have " + std::to_string(ring.degree_cap()));
    std::vector<std::size_t> ranks(static_cast<std::size_t>(cap) + 2, 0);
    for (int q = 1; q <= cap + 1; ++q) ranks[static_cast<std::size_t>(q)] = gf2::rank(boundary_matrix(ring, q));
    std::vector<DegreeDim> out;
    for (int q = 0; q <= cap; ++q)
        out.push_back({q, ring.dim(q) - ranks[static_cast<std::size_t>(q)] - ranks[static_cast<std::size_t>(q) + 1]});
    return out;
}

// ---------------------------------------------------------------------------
// Constructions

// Adams cobar construction: T(s⁻¹C̄) with ∂(s⁻¹c) = s⁻¹(dc) + Σ s⁻¹c'·s⁻¹c''.
// Generator i corresponds to the i-th non-unit cell and is named "s" + name.
inline Ring cobar(const DGCoalgebra& c, int cap) {
    FreeFactor f;
    std::vector<std::optional<Letter>> letter_of(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i == c.unit()) continue;
        letter_of[i] = static_cast<Letter>(f.names.size());
        f.names.push_back("s" + c.cell(i).name);
        f.degrees.push_back(c.degree(i) - 1);
    }
    f.differential.assign(f.names.size(), {});
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i == c.unit()) continue;
        auto& d = f.differential[*letter_of[i]];
        for (auto t : c.differential(i)) d.push_back(Word{*letter_of[t]});
        for (auto [l, r] : c.reduced_coproduct(i)) d.push_back(Word{*letter_of[l], *letter_of[r]});
        detail::normalize_mod2(d);
    }
    return DGAlgebra::make({std::move(f)}, cap);
}

// Letter s⁻¹c of cobar(c) for a non-unit cell.
inline Monomial cobar_letter(const DGCoalgebra& c, std::size_t cell) {
    if (cell == c.unit()) throw InputError("the unit has no cobar generator");
    Letter l = 0;
    for (std::size_t i = 0; i < cell; ++i)
        if (i != c.unit()) ++l;
    return Monomial{Word{l}};
}

// A ⊗ B with componentwise product (no Koszul signs over GF(2)).
inline Ring tensor_algebras(const DGAlgebra& a, const DGAlgebra& b) {
    if (!a.factors().empty() && !b.factors().empty() && a.kind() != b.kind())
        throw InputError("cannot tensor a free-type algebra with a table-type algebra");
    auto factors = a.factors();
    factors.insert(factors.end(), b.factors().begin(), b.factors().end());
    return DGAlgebra::make(std::move(factors), std::min(a.degree_cap(), b.degree_cap()));
}

// Image of x ∈ source inside a ring whose factor list contains source's factors
// starting at `offset` (e.g. the left or right slot of a tensor product).
inline AlgElement embed(const AlgElement& x, const Ring& target, std::size_t offset) {
    const auto& src = *x.ring();
    if (offset + src.factors().size() > target->factors().size()) throw InputError("embedding exceeds target factors");
    for (std::size_t f = 0; f < src.factors().size(); ++f)
        if (!(src.factors()[f] == target->factors()[offset + f])) throw InputError("embedding factor mismatch");
    AlgElement out(target, x.degree());
    for (const auto& t : x.terms()) {
        auto m = target->unit_monomial();
        for (std::size_t f = 0; f < t.size(); ++f) m[offset + f] = t[f];
        out.toggle(m);
    }
    return out;
}

// Same terms, re-homed in a ring with identical factors (typically a different cap).
inline AlgElement rehome(const AlgElement& x, const Ring& target) { return embed(x, target, 0); }

// ---------------------------------------------------------------------------
// Morphisms

// Multiplicative, degree-0 chain map determined by letter images.
class DGAMorphism {
public:
    // Letters missing from `images` map to zero.
    static DGAMorphism create(Ring source, Ring target, const std::map<std::string, AlgElement>& images) {
        DGAMorphism f;
        f.source_ = std::move(source);
        f.target_ = std::move(target);
        for (const auto& ref : f.source_->letters()) {
            const auto& name = f.source_->letter_name(ref.factor, ref.letter);
            const int deg = f.source_->letter_degree(ref.factor, ref.letter);
            auto it = images.find(name);
            AlgElement img = it == images.end() ? AlgElement(f.target_, deg) : it->second;
            if (!same_ring(img.ring(), f.target_))
                throw InputError("image of '" + name + "' does not live in the target algebra");
            if (!img.is_zero() && img.degree() != deg)
                throw InvariantViolation("image of '" + name + "' has degree " + std::to_string(img.degree()) +
                                         ", expected " + std::to_string(deg));
            f.images_.emplace(std::make_pair(ref.factor, ref.letter), AlgElement(f.target_, deg) + img);
        }
        for (const auto& [name, img] : images)
            if (!f.source_->find_letter(name)) throw InputError("morphism image given for unknown letter '" + name + "'");
        f.check();
        return f;
    }

    static DGAMorphism identity(const Ring& ring) {
        std::map<std::string, AlgElement> images;
        for (const auto& ref : ring->letters())
            images.emplace(ring->letter_name(ref.factor, ref.letter), AlgElement::from_monomial(ring, ring->letter_monomial(ref)));
        return create(ring, ring, images);
    }

    const Ring& source() const { return source_; }
    const Ring& target() const { return target_; }

    // The same letter images over both algebras truncated at new caps.
    DGAMorphism with_caps(int source_cap, int target_cap) const {
        if (source_cap == source_->degree_cap() && target_cap == target_->degree_cap()) return *this;
        auto src = source_->with_cap(source_cap);
        auto tgt = target_->with_cap(target_cap);
        std::map<std::string, AlgElement> images;
        for (const auto& [ref, img] : images_) {
            if (img.is_zero()) continue;
            if (img.degree() > target_cap) throw CapOverflow("letter image exceeds the requested target cap");
            images.emplace(source_->letter_name(ref.first, ref.second), rehome(img, tgt));
        }
        return create(src, tgt, images);
    }

    AlgElement apply(const Monomial& m) const {
        auto out = AlgElement::unit(target_);
        for (std::size_t f = 0; f < m.size(); ++f)
            for (auto l : m[f]) out = out * images_.at({f, l});
        return out;
    }

    AlgElement apply(const AlgElement& x) const {
        if (!same_ring(x.ring(), source_)) throw InputError("element does not live in the morphism source");
        AlgElement out(target_, x.degree());
        for (const auto& t : x.terms()) out += apply(t);
        return out;
    }

    const AlgElement& image(const std::string& letter) const {
        auto ref = source_->find_letter(letter);
        if (!ref) throw InputError("unknown letter '" + letter + "'");
        return images_.at({ref->factor, ref->letter});
    }

private:
    void check() const {
        const int cap = target_->degree_cap();
        for (const auto& ref : source_->letters()) {
            const auto& name = source_->letter_name(ref.factor, ref.letter);
            const auto gen = source_->letter_monomial(ref);
            // f∂ = ∂f on letters.
            AlgElement lhs(target_, source_->letter_degree(ref.factor, ref.letter) - 1);
            for (const auto& t : source_->boundary(gen)) lhs += apply(t);
            if (lhs != boundary(images_.at({ref.factor, ref.letter})))
                throw InvariantViolation("morphism does not commute with the differential on '" + name + "'");
        }
        // Multiplicativity on table products, commutation across tensor factors.
        const auto letters = source_->letters();
        for (const auto& x : letters)
            for (const auto& y : letters) {
                const auto& fx = images_.at({x.factor, x.letter});
                const auto& fy = images_.at({y.factor, y.letter});
                if (fx.degree() + fy.degree() > cap || fx.degree() + fy.degree() > source_->degree_cap()) continue;
                if (x.factor != y.factor) {
                    if (fx * fy != fy * fx)
                        throw InvariantViolation("images of letters in different tensor factors do not commute");
                } else if (std::holds_alternative<TableFactor>(source_->factors()[x.factor])) {
                    AlgElement lhs(target_, fx.degree() + fy.degree());
                    for (const auto& t : source_->multiply(source_->letter_monomial(x), source_->letter_monomial(y)))
                        lhs += apply(t);
                    if (lhs != fx * fy) throw InvariantViolation("morphism is not multiplicative on the table product");
                }
            }
    }

    Ring source_;
    Ring target_;
    std::map<std::pair<std::size_t, Letter>, AlgElement> images_;
};

}  // namespace loopfloer
