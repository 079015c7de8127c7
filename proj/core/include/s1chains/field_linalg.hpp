#pragma once

#include "s1chains/matrix.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace s1chains {

// Exact Gaussian elimination over a field K (Rat or Fp). All routines are
// deterministic: pivots are the first nonzero entry scanning down a column.

template <class K>
struct Echelon {
    Mat<K> r;                        // reduced row echelon form
    std::vector<std::size_t> pivots; // pivot column per pivot row
};

template <class K>
Echelon<K> rref(Mat<K> m) {
    Echelon<K> e;
    std::size_t rows = m.rows(), cols = m.cols();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t piv = row;
        while (piv < rows && field_ops<K>::is_zero(m(piv, col))) ++piv;
        if (piv == rows) continue;
        if (piv != row)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(row, j), m(piv, j));
        K inv = field_ops<K>::one(m(row, col)) / m(row, col);
        for (std::size_t j = col; j < cols; ++j) m(row, j) = m(row, j) * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || field_ops<K>::is_zero(m(i, col))) continue;
            K f = m(i, col);
            for (std::size_t j = col; j < cols; ++j) m(i, j) -= f * m(row, j);
        }
        e.pivots.push_back(col);
        ++row;
    }
    e.r = std::move(m);
    return e;
}

template <class K>
std::size_t rank(const Mat<K>& m) {
    return rref(m).pivots.size();
}

/// Basis of {v : Mv = 0}; size cols - rank. `one` supplies the field unit
/// (F_p elements carry their modulus, so it cannot be conjured from a zero).
template <class K>
std::vector<std::vector<K>> kernel_basis(const Mat<K>& m, const K& one) {
    Echelon<K> e = rref(m);
    std::size_t cols = m.cols();
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivots) is_pivot[c] = true;
    std::vector<std::vector<K>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<K> v(cols, K());
        v[free] = one;
        for (std::size_t pr = 0; pr < e.pivots.size(); ++pr)
            v[e.pivots[pr]] = -e.r(pr, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// One solution x of M x = b, if any.
template <class K>
std::optional<std::vector<K>> solve(const Mat<K>& m, const std::vector<K>& b) {
    Mat<K> aug(m.rows(), m.cols() + 1);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    Echelon<K> e = rref(aug);
    for (auto c : e.pivots)
        if (c == m.cols()) return std::nullopt;  // inconsistent
    std::vector<K> x(m.cols(), K());
    for (std::size_t pr = 0; pr < e.pivots.size(); ++pr) x[e.pivots[pr]] = e.r(pr, m.cols());
    return x;
}

/// Column indices of M forming a basis of its column span.
template <class K>
std::vector<std::size_t> column_basis(const Mat<K>& m) {
    return rref(m).pivots;
}

/// True iff v lies in the column span of M.
template <class K>
bool in_span(const Mat<K>& m, const std::vector<K>& v) {
    return solve(m, v).has_value();
}

}  // namespace s1chains
