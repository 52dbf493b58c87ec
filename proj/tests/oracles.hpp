// Independent brute-force references used by the tests: exhaustive
// enumeration over GF(2)^n, word counting and graded convolution.

#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "loopfloer/gf2.hpp"

namespace oracle {

using loopfloer::gf2::BitVector;
using loopfloer::gf2::F2Matrix;

inline BitVector from_mask(std::size_t n, std::uint64_t mask) {
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1u) v.set(i);
    return v;
}

inline std::uint64_t to_mask(const BitVector& v) {
    std::uint64_t m = 0;
    for (auto i : v.ones()) m |= std::uint64_t{1} << i;
    return m;
}

// Every element of span(vectors), as bit masks (n <= 20).
inline std::set<std::uint64_t> span_set(const std::vector<BitVector>& vectors) {
    std::set<std::uint64_t> out{0};
    for (const auto& v : vectors) {
        const auto m = to_mask(v);
        std::set<std::uint64_t> next = out;
        for (auto x : out) next.insert(x ^ m);
        out = std::move(next);
    }
    return out;
}

inline std::size_t log2_size(std::size_t count) {
    std::size_t d = 0;
    while ((std::size_t{1} << d) < count) ++d;
    return d;
}

inline BitVector apply(const F2Matrix& m, const BitVector& v) {
    BitVector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        bool bit = false;
        for (std::size_t c = 0; c < m.cols(); ++c) bit ^= m.at(r, c) && v.get(c);
        if (bit) out.set(r);
    }
    return out;
}

// {v ∈ GF(2)^cols : m v = 0} by enumeration.
inline std::set<std::uint64_t> kernel_set(const F2Matrix& m) {
    std::set<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m.cols()); ++mask)
        if (apply(m, from_mask(m.cols(), mask)).is_zero()) out.insert(mask);
    return out;
}

// {m v : v ∈ GF(2)^cols} by enumeration.
inline std::set<std::uint64_t> image_set(const F2Matrix& m) {
    std::set<std::uint64_t> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m.cols()); ++mask)
        out.insert(to_mask(apply(m, from_mask(m.cols(), mask))));
    return out;
}

inline BitVector random_vector(std::mt19937_64& rng, std::size_t n, double density = 0.5) {
    std::bernoulli_distribution bit(density);
    BitVector v(n);
    for (std::size_t i = 0; i < n; ++i)
        if (bit(rng)) v.set(i);
    return v;
}

inline F2Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density = 0.5) {
    std::vector<BitVector> r;
    for (std::size_t i = 0; i < rows; ++i) r.push_back(random_vector(rng, cols, density));
    return F2Matrix::from_rows(cols, r);
}

inline std::vector<BitVector> random_vectors(std::mt19937_64& rng, std::size_t count, std::size_t n) {
    std::vector<BitVector> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(random_vector(rng, n));
    return out;
}

// Number of words of total degree q in letters of the given degrees.
inline std::vector<std::size_t> word_counts(const std::vector<int>& letter_degrees, int cap) {
    std::vector<std::size_t> c(static_cast<std::size_t>(cap) + 1, 0);
    c[0] = 1;
    for (int q = 1; q <= cap; ++q)
        for (int d : letter_degrees)
            if (d <= q) c[static_cast<std::size_t>(q)] += c[static_cast<std::size_t>(q - d)];
    return c;
}

// (a * b)_q = Σ a_i b_{q-i}.
inline std::vector<std::size_t> convolve(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                                         std::size_t len) {
    std::vector<std::size_t> out(len, 0);
    for (std::size_t q = 0; q < len; ++q)
        for (std::size_t i = 0; i <= q; ++i)
            if (i < a.size() && q - i < b.size()) out[q] += a[i] * b[q - i];
    return out;
}

}  // namespace oracle
