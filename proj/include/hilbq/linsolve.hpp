#pragma once

#include <optional>
#include <vector>

#include "hilbq/rational.hpp"
#include "hilbq/tscalar.hpp"

namespace hilbq {

// Exact Gauss-Jordan elimination over the scalar's own arithmetic. For
// Rational this is ordinary elimination over Q. For TScalar the ring only
// divides by Laurent monomials in t; the pairing matrices this is used on
// keep all pivots monomial, and a non-monomial pivot is reported as an error
// rather than approximated.

template <typename K>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
    static bool invertible(const Rational& x) { return !x.is_zero(); }
    static Rational inverse(const Rational& x) { return Rational(1) / x; }
};

template <>
struct ScalarOps<TScalar> {
    static bool invertible(const TScalar& x) { return x.is_monomial(); }
    static TScalar inverse(const TScalar& x) { return TScalar(1) / x; }
};

template <typename K>
using Matrix = std::vector<std::vector<K>>;

// Inverts a square matrix; throws on singularity or (for TScalar) when no
// monomial pivot is available in some column.
template <typename K>
Matrix<K> invert_matrix(Matrix<K> m) {
    const size_t n = m.size();
    Matrix<K> inv(n, std::vector<K>(n, K(0)));
    for (size_t i = 0; i < n; ++i) inv[i][i] = K(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t r = col; r < n; ++r) {
            if (ScalarOps<K>::invertible(m[r][col])) { piv = r; break; }
        }
        if (piv == n) {
            for (size_t r = col; r < n; ++r)
                if (!(m[r][col] == K(0)))
                    throw std::domain_error(
                        "invert_matrix: no invertible pivot (non-monomial entry)");
            throw std::domain_error("invert_matrix: singular matrix");
        }
        std::swap(m[piv], m[col]);
        std::swap(inv[piv], inv[col]);
        K d = ScalarOps<K>::inverse(m[col][col]);
        for (size_t j = 0; j < n; ++j) {
            m[col][j] = m[col][j] * d;
            inv[col][j] = inv[col][j] * d;
        }
        for (size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            K f = m[r][col];
            if (f == K(0)) continue;
            for (size_t j = 0; j < n; ++j) {
                m[r][j] = m[r][j] - f * m[col][j];
                inv[r][j] = inv[r][j] - f * inv[col][j];
            }
        }
    }
    return inv;
}

enum class LinSolveStatus { Unique, Underdetermined, Inconsistent };

template <typename K>
struct LinSolveResult {
    LinSolveStatus status = LinSolveStatus::Inconsistent;
    std::vector<K> solution;  // valid unless Inconsistent; free variables are 0
    std::vector<size_t> free_columns;
};

// Solves A x = b by row-reduction with pivots chosen in column order, so the
// returned solution is supported on the earliest possible columns; callers
// that order columns graded-lexicographically get a deterministic
// graded-lex-minimal representative.
template <typename K>
LinSolveResult<K> solve_least_support(Matrix<K> a, std::vector<K> b) {
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    LinSolveResult<K> res;
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = rows;
        for (size_t i = r; i < rows; ++i)
            if (ScalarOps<K>::invertible(a[i][c])) { piv = i; break; }
        if (piv == rows) {
            for (size_t i = r; i < rows; ++i)
                if (!(a[i][c] == K(0)))
                    throw std::domain_error("solve_least_support: non-invertible pivot");
            continue;
        }
        std::swap(a[piv], a[r]);
        std::swap(b[piv], b[r]);
        K d = ScalarOps<K>::inverse(a[r][c]);
        for (size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * d;
        b[r] = b[r] * d;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            K f = a[i][c];
            if (f == K(0)) continue;
            for (size_t j = c; j < cols; ++j) a[i][j] = a[i][j] - f * a[r][j];
            b[i] = b[i] - f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (size_t i = r; i < rows; ++i)
        if (!(b[i] == K(0))) {
            res.status = LinSolveStatus::Inconsistent;
            return res;
        }
    res.solution.assign(cols, K(0));
    for (size_t i = 0; i < pivot_col.size(); ++i) res.solution[pivot_col[i]] = b[i];
    for (size_t c = 0, pi = 0; c < cols; ++c) {
        if (pi < pivot_col.size() && pivot_col[pi] == c) ++pi;
        else res.free_columns.push_back(c);
    }
    res.status = res.free_columns.empty() ? LinSolveStatus::Unique
                                          : LinSolveStatus::Underdetermined;
    return res;
}

}  // namespace hilbq
