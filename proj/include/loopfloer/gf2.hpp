// Dense linear algebra over the two-element field.
//
// Vectors are bit-packed into 64-bit words. Subspaces are held in reduced
// row-echelon form (pivot = lowest set index, pivot columns cleared in every
// other row), which makes the stored basis a canonical representative: two
// subspaces are equal iff their basis vectors are bit-identical.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "loopfloer/errors.hpp"

namespace loopfloer::gf2 {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    static BitVector from_bits(std::initializer_list<int> bits) {
        BitVector v(bits.size());
        std::size_t i = 0;
        for (int b : bits) {
            if (b & 1) v.set(i);
            ++i;
        }
        return v;
    }

    std::size_t size() const { return size_; }

    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    void flip(std::size_t i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }
    void assign(std::size_t i, bool value) { value ? set(i) : reset(i); }

    BitVector& operator^=(const BitVector& other) {
        check_size(other);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    // XOR restricted to words at or after `from_word`; callers use it when
    // `other` is known to vanish below that word.
    void xor_from(const BitVector& other, std::size_t from_word) {
        for (std::size_t w = from_word; w < words_.size(); ++w) words_[w] ^= other.words_[w];
    }

    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

    bool is_zero() const {
        return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
    }

    // Index of the lowest set bit, or size() when zero.
    std::size_t first_set() const { return first_set_from(0); }

    std::size_t first_set_from(std::size_t start) const {
        if (start >= size_) return size_;
        std::size_t w = start >> 6;
        std::uint64_t word = words_[w] & (~std::uint64_t{0} << (start & 63));
        while (true) {
            if (word != 0) return (w << 6) + static_cast<std::size_t>(std::countr_zero(word));
            if (++w >= words_.size()) return size_;
            word = words_[w];
        }
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool dot(const BitVector& other) const {
        check_size(other);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
        return std::popcount(acc) & 1;
    }

    // Copy of bits [begin, end).
    BitVector slice(std::size_t begin, std::size_t end) const {
        BitVector out(end - begin);
        for (std::size_t i = first_set_from(begin); i < end; i = first_set_from(i + 1)) out.set(i - begin);
        return out;
    }

    // Copy padded (or truncated) to `new_size`, bits placed at `offset`.
    BitVector embedded(std::size_t new_size, std::size_t offset = 0) const {
        BitVector out(new_size);
        for (std::size_t i = first_set(); i < size_; i = first_set_from(i + 1)) out.set(i + offset);
        return out;
    }

    std::vector<std::size_t> ones() const {
        std::vector<std::size_t> out;
        for (std::size_t i = first_set(); i < size_; i = first_set_from(i + 1)) out.push_back(i);
        return out;
    }

    std::span<const std::uint64_t> words() const { return words_; }

    friend bool operator==(const BitVector&, const BitVector&) = default;
    friend auto operator<=>(const BitVector& a, const BitVector& b) {
        if (auto c = a.size_ <=> b.size_; c != 0) return c;
        return a.words_ <=> b.words_;
    }

    std::string to_string() const {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

private:
    void check_size(const BitVector& other) const {
        if (other.size_ != size_)
            throw DimensionMismatch("bit vector sizes differ: " + std::to_string(size_) + " vs " +
                                    std::to_string(other.size_));
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}

    static F2Matrix identity(std::size_t n) {
        F2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    static F2Matrix from_rows(std::size_t cols, std::vector<BitVector> rows) {
        F2Matrix m;
        m.rows_ = rows.size();
        m.cols_ = cols;
        for (const auto& r : rows)
            if (r.size() != cols) throw DimensionMismatch("row length differs from column count");
        m.data_ = std::move(rows);
        return m;
    }

    static F2Matrix from_columns(std::size_t rows, std::span<const BitVector> columns) {
        F2Matrix m(rows, columns.size());
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (columns[c].size() != rows) throw DimensionMismatch("column length differs from row count");
            for (auto r : columns[c].ones()) m.set(r, c);
        }
        return m;
    }

    static F2Matrix from_ints(std::initializer_list<std::initializer_list<int>> rows) {
        std::vector<BitVector> data;
        std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
        for (const auto& r : rows) data.push_back(BitVector::from_bits(r));
        return from_rows(cols, std::move(data));
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool at(std::size_t r, std::size_t c) const { return data_[r].get(c); }
    void set(std::size_t r, std::size_t c) { data_[r].set(c); }
    void flip(std::size_t r, std::size_t c) { data_[r].flip(c); }

    const BitVector& row(std::size_t r) const { return data_[r]; }
    BitVector& row(std::size_t r) { return data_[r]; }
    const std::vector<BitVector>& row_vectors() const { return data_; }

    BitVector column(std::size_t c) const {
        BitVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            if (data_[r].get(c)) out.set(r);
        return out;
    }

    F2Matrix transposed() const {
        F2Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (auto c : data_[r].ones()) t.set(c, r);
        return t;
    }

    // m * v for a column vector v of length cols().
    BitVector apply(const BitVector& v) const {
        if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
        BitVector out(rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            if (data_[r].dot(v)) out.set(r);
        return out;
    }

    friend F2Matrix operator*(const F2Matrix& a, const F2Matrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product size mismatch");
        F2Matrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (auto k : a.data_[r].ones()) out.data_[r] ^= b.data_[k];
        return out;
    }

    friend F2Matrix operator+(F2Matrix a, const F2Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum size mismatch");
        for (std::size_t r = 0; r < a.rows_; ++r) a.data_[r] ^= b.data_[r];
        return a;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const BitVector& r) { return r.is_zero(); });
    }

    // Rows [row_begin, row_end) restricted to columns [col_begin, col_end).
    F2Matrix block(std::size_t row_begin, std::size_t row_end, std::size_t col_begin, std::size_t col_end) const {
        F2Matrix out(row_end - row_begin, col_end - col_begin);
        for (std::size_t r = row_begin; r < row_end; ++r) out.data_[r - row_begin] = data_[r].slice(col_begin, col_end);
        return out;
    }

    friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BitVector> data_;
};

namespace detail {

// In-place reduction of `rows` to reduced row-echelon form. Zero rows are
// dropped; the survivors are sorted by pivot. Returns the pivot columns.
inline std::vector<std::size_t> reduce_rows(std::vector<BitVector>& rows, std::size_t width) {
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    std::size_t col = 0;
    while (rank < rows.size() && col < width) {
        // Find the row (at or below `rank`) with the smallest leading index.
        std::size_t best = rows.size();
        std::size_t best_lead = width;
        for (std::size_t r = rank; r < rows.size(); ++r) {
            auto lead = rows[r].first_set_from(col);
            if (lead < best_lead) {
                best_lead = lead;
                best = r;
                if (lead == col) break;
            }
        }
        if (best == rows.size()) break;
        col = best_lead;
        std::swap(rows[rank], rows[best]);
        const auto& pivot_row = rows[rank];
        const std::size_t word = col >> 6;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (r != rank && rows[r].get(col)) rows[r].xor_from(pivot_row, word);
        pivots.push_back(col);
        ++rank;
        ++col;
    }
    rows.resize(rank);
    return pivots;
}

}  // namespace detail

class F2Subspace {
public:
    F2Subspace() = default;
    explicit F2Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

    static F2Subspace span(std::size_t ambient_dim, std::vector<BitVector> vectors) {
        for (const auto& v : vectors)
            if (v.size() != ambient_dim) throw DimensionMismatch("spanning vector has wrong ambient dimension");
        F2Subspace s(ambient_dim);
        s.pivots_ = detail::reduce_rows(vectors, ambient_dim);
        s.basis_ = std::move(vectors);
        return s;
    }

    static F2Subspace full(std::size_t ambient_dim) { return coordinate(ambient_dim, 0, ambient_dim); }

    // Span of the unit vectors e_begin .. e_{end-1}.
    static F2Subspace coordinate(std::size_t ambient_dim, std::size_t begin, std::size_t end) {
        F2Subspace s(ambient_dim);
        for (std::size_t i = begin; i < end; ++i) {
            BitVector v(ambient_dim);
            v.set(i);
            s.basis_.push_back(std::move(v));
            s.pivots_.push_back(i);
        }
        return s;
    }

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<BitVector>& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    // v minus its projection along the echelon basis; zero iff v is in the subspace.
    BitVector reduce(BitVector v) const {
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (v.get(pivots_[i])) v.xor_from(basis_[i], pivots_[i] >> 6);
        return v;
    }

    bool contains(const BitVector& v) const {
        check_ambient(v.size());
        return reduce(v).is_zero();
    }

    bool contains(const F2Subspace& other) const {
        check_ambient(other.ambient_);
        return std::all_of(other.basis_.begin(), other.basis_.end(), [&](const BitVector& v) { return contains(v); });
    }

    friend bool operator==(const F2Subspace&, const F2Subspace&) = default;

private:
    void check_ambient(std::size_t n) const {
        if (n != ambient_)
            throw DimensionMismatch("ambient dimensions differ: " + std::to_string(ambient_) + " vs " + std::to_string(n));
    }

    friend F2Subspace sum(const F2Subspace& a, const F2Subspace& b);
    friend F2Subspace intersection(const F2Subspace& a, const F2Subspace& b);

    std::size_t ambient_ = 0;
    std::vector<BitVector> basis_;
    std::vector<std::size_t> pivots_;
};

inline std::size_t rank(const F2Matrix& m) {
    auto rows = m.row_vectors();
    return detail::reduce_rows(rows, m.cols()).size();
}

inline F2Subspace row_space(const F2Matrix& m) { return F2Subspace::span(m.cols(), m.row_vectors()); }

// Column space of m, as a subspace of GF(2)^rows.
inline F2Subspace image(const F2Matrix& m) { return row_space(m.transposed()); }

inline F2Subspace kernel(const F2Matrix& m) {
    auto rows = m.row_vectors();
    const std::size_t n = m.cols();
    auto pivots = detail::reduce_rows(rows, n);
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<BitVector> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        BitVector v(n);
        v.set(free);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].get(free)) v.set(pivots[i]);
        basis.push_back(std::move(v));
    }
    return F2Subspace::span(n, std::move(basis));
}

// Image of a subspace under m.
inline F2Subspace image_of(const F2Matrix& m, const F2Subspace& s) {
    if (s.ambient_dim() != m.cols()) throw DimensionMismatch("subspace does not live in the matrix domain");
    std::vector<BitVector> images;
    images.reserve(s.dim());
    for (const auto& v : s.basis()) images.push_back(m.apply(v));
    return F2Subspace::span(m.rows(), std::move(images));
}

inline F2Subspace sum(const F2Subspace& a, const F2Subspace& b) {
    a.check_ambient(b.ambient_);
    auto rows = a.basis_;
    rows.insert(rows.end(), b.basis_.begin(), b.basis_.end());
    return F2Subspace::span(a.ambient_, std::move(rows));
}

// Zassenhaus: reduce [a|a] over [b|0]; rows with vanishing left half carry a∩b.
inline F2Subspace intersection(const F2Subspace& a, const F2Subspace& b) {
    a.check_ambient(b.ambient_);
    const std::size_t n = a.ambient_;
    if (a.dim() == 0 || b.dim() == 0) return F2Subspace(n);
    std::vector<BitVector> rows;
    rows.reserve(a.dim() + b.dim());
    for (const auto& v : a.basis_) {
        BitVector r(2 * n);
        for (auto i : v.ones()) {
            r.set(i);
            r.set(n + i);
        }
        rows.push_back(std::move(r));
    }
    for (const auto& v : b.basis_) rows.push_back(v.embedded(2 * n));
    detail::reduce_rows(rows, 2 * n);
    std::vector<BitVector> out;
    for (const auto& r : rows)
        if (r.first_set() >= n) out.push_back(r.slice(n, 2 * n));
    return F2Subspace::span(n, std::move(out));
}

// {v : m v ∈ target}: kernel of [m | T] projected onto its first cols() coordinates,
// where the columns of T span the target.
inline F2Subspace preimage_subspace(const F2Matrix& m, const F2Subspace& target) {
    if (target.ambient_dim() != m.rows())
        throw DimensionMismatch("preimage target lives in dimension " + std::to_string(target.ambient_dim()) +
                                ", matrix has " + std::to_string(m.rows()) + " rows");
    const std::size_t n = m.cols();
    const std::size_t k = target.dim();
    F2Matrix augmented(m.rows(), n + k);
    for (std::size_t r = 0; r < m.rows(); ++r) augmented.row(r) = m.row(r).embedded(n + k);
    for (std::size_t j = 0; j < k; ++j)
        for (auto r : target.basis()[j].ones()) augmented.set(r, n + j);
    auto ker = kernel(augmented);
    std::vector<BitVector> projected;
    for (const auto& v : ker.basis()) projected.push_back(v.slice(0, n));
    return F2Subspace::span(n, std::move(projected));
}

struct SumIntersectQuotient {
    F2Subspace sum;
    F2Subspace intersection;
    // dim((a+b) / (c ∩ (a+b)))
    std::size_t quotient_dim = 0;
};

inline SumIntersectQuotient sum_intersect_quotient(const F2Subspace& a, const F2Subspace& b, const F2Subspace& c) {
    if (a.ambient_dim() != b.ambient_dim() || a.ambient_dim() != c.ambient_dim())
        throw DimensionMismatch("sum_intersect_quotient needs equal ambient dimensions");
    SumIntersectQuotient out;
    out.sum = sum(a, b);
    out.intersection = intersection(a, b);
    out.quotient_dim = out.sum.dim() - intersection(c, out.sum).dim();
    return out;
}

// Coordinates on a quotient numerator/denominator (den ⊆ num). The chosen
// representatives are the numerator basis vectors that survive reduction
// modulo the denominator, in echelon order.
class QuotientBasis {
public:
    QuotientBasis(const F2Subspace& num, const F2Subspace& den) : ambient_(num.ambient_dim()) {
        if (den.ambient_dim() != ambient_) throw DimensionMismatch("quotient spaces differ in ambient dimension");
        // Echelon rows carry tags recording which representatives they contain.
        for (const auto& v : den.basis()) insert(v, std::nullopt);
        for (const auto& v : num.basis()) {
            auto r = reduce_untagged(v);
            if (!r.is_zero()) {
                representatives_.push_back(v);
                insert(v, representatives_.size() - 1);
            }
        }
        if (representatives_.size() + den.dim() != num.dim())
            throw InvariantViolation("quotient denominator is not contained in the numerator");
        for (auto& t : tags_) t = t.embedded(representatives_.size());
    }

    std::size_t dim() const { return representatives_.size(); }
    std::size_t ambient_dim() const { return ambient_; }
    const std::vector<BitVector>& representatives() const { return representatives_; }

    // Coordinates of the class of v; nullopt if v is not in the numerator.
    std::optional<BitVector> coordinates(BitVector v) const {
        if (v.size() != ambient_) throw DimensionMismatch("vector does not live in the quotient ambient space");
        BitVector tag(representatives_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (v.get(pivots_[i])) {
                v.xor_from(rows_[i], pivots_[i] >> 6);
                tag ^= tags_[i];
            }
        }
        if (!v.is_zero()) return std::nullopt;
        return tag;
    }

private:
    BitVector reduce_untagged(BitVector v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (v.get(pivots_[i])) v.xor_from(rows_[i], pivots_[i] >> 6);
        return v;
    }

    // Echelon insertion (not reduced): keeps each row's pivot as its lowest bit.
    void insert(BitVector v, std::optional<std::size_t> rep) {
        // Tags are sized lazily; grow to the current representative count.
        const std::size_t width = representatives_.size();
        BitVector tag(width);
        if (rep) tag.set(*rep);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (v.get(pivots_[i])) {
                v.xor_from(rows_[i], pivots_[i] >> 6);
                auto t = tags_[i].embedded(width);
                tag ^= t;
            }
        }
        auto p = v.first_set();
        if (p == v.size()) return;
        rows_.push_back(std::move(v));
        pivots_.push_back(p);
        tags_.push_back(std::move(tag));
        // Keep rows ordered by pivot so a single forward pass reduces fully.
        for (std::size_t i = rows_.size() - 1; i > 0 && pivots_[i - 1] > pivots_[i]; --i) {
            std::swap(rows_[i - 1], rows_[i]);
            std::swap(pivots_[i - 1], pivots_[i]);
            std::swap(tags_[i - 1], tags_[i]);
        }
    }

    std::size_t ambient_;
    std::vector<BitVector> representatives_;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<BitVector> tags_;
};

}  // namespace loopfloer::gf2
