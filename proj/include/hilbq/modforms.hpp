#pragma once

#include <map>
#include <string>
#include <vector>

#include "hilbq/pqseries.hpp"
#include "hilbq/rational.hpp"
#include "hilbq/zseries.hpp"

namespace hilbq {

// Bernoulli numbers for the convention (z/2)(e^z+1)/(e^z-1) = sum B_n z^n/n!,
// i.e. the standard numbers with B_1 = 0.
Rational bernoulli(int n);

// Eisenstein series G_k = -B_k/(2k) + sum_{n>=1} sigma_{k-1}(n) q^n for even
// k >= 2. Odd k errors unless zero_for_odd, which returns the zero series.
PQSeries eisenstein(int k, int q_order, bool zero_for_odd = false);

// Normalized Jacobi theta function
//   (p^{1/2}-p^{-1/2}) prod_{m>=1} (1-p q^m)(1-p^{-1} q^m)/(1-q^m)^2,
// exact per q-order (finitely many p-terms each). p_window < 0 keeps all.
PQSeries theta_series(int q_order, int p_window = -1);

// Fourier expansion of the weight-n quasi-Jacobi generator:
//   A_n = B_n/n + delta_{n,1} (1/2)(p+1)/(p-1)
//         - sum_{k,d>=1} d^{n-1} (p^k + (-1)^n p^{-k}) q^{kd}.
// The n=1 rational term is expanded ascending, -1/2 - p - p^2 - ..., to the
// given window; for n >= 2 the result is exact and the window is unused.
PQSeries jacobi_a_fourier(int n, int q_order, int p_window);

// The two pieces of A_1's singular term: its ascending p-expansion, and its
// exact p = e^z form 1/z + sum_{k>=1} B_k z^{k-1}/k!.
PQSeries a1_singular_part_p(int q_order, int p_window);
ZSeries a1_singular_part_z(int q_order, int z_order);

// A_n without the n=1 singular term (exact for every n).
PQSeries jacobi_a_regular(int n, int q_order);

// A_n(p^s) for any integer s. s < 0 uses the parity A_n(p^{-1}) = (-1)^n A_n;
// s = 0 is the z -> 0 limit: B_n/n - 2 sum_{k,d} d^{n-1} q^{kd} for even n,
// zero for odd n >= 3 (n = 1 at s = 0 is singular and rejected).
PQSeries jacobi_a_dilated(int n, int s, int q_order, int p_window);

// Taylor expansion around z = 0 (p = e^z):
//   A_n = delta_{n,1}/z - 2 sum_{0<=m<n-1} z^m/m! (q d/dq)^m G_{n-m}
//         - 2 sum_{g>=1} z^{2g-2+n}/(2g-2+n)! (q d/dq)^{n-1} G_{2g}.
ZSeries jacobi_a_taylor(int n, int q_order, int z_order);

// ---- quasi-Jacobi fitting -------------------------------------------------

// Generator of the dilated quasi-Jacobi ring: A_n(p^s) (n = 1..3,
// 1 <= s <= dilation_bound) or G_k (k = 2, 4). Weight of A_n is n, of G_k is k.
struct QJacGenerator {
    enum Kind { A, G } kind;
    int index;     // n for A, k for G
    int dilation;  // s for A (1 for G)

    int weight() const { return index; }
    std::string name() const;
    bool operator==(const QJacGenerator&) const = default;
};

struct QJacMonomial {
    std::vector<std::pair<QJacGenerator, int>> powers;  // generator, exponent >= 1

    int weight() const;
    std::string name() const;  // e.g. "A_1^2*G_2", "1" for the empty monomial
};

// All monomials in the generators of total weight <= weight_bound, duplicate
// free, in graded lexicographic order (weight first, then exponent vector).
struct QJacMonomialBasis {
    int weight_bound = 0;
    int dilation_bound = 1;
    std::vector<QJacMonomial> monomials;

    static QJacMonomialBasis build(int weight_bound, int dilation_bound);
};

enum class QJacFitStatus { Unique, Underdetermined, NoSolution };

struct QJacFitResult {
    QJacFitStatus status = QJacFitStatus::NoSolution;
    // monomial index in the basis -> exact coefficient (zeros omitted)
    std::map<size_t, Rational> coeffs;
    size_t equations = 0;  // number of (q,p)-coefficient constraints used
    std::string describe(const QJacMonomialBasis& basis) const;
};

// Expresses target exactly in the span of the basis monomials on the window
// q <= target.q_order(), |p-exponent| <= p_window. The target must be
// p-integral. Underdetermined-but-consistent systems report the graded-lex
// least-support solution together with the distinct status. Every returned
// fit has been residual-checked coefficientwise on the window.
QJacFitResult qjac_fit(const PQSeries& target, const QJacMonomialBasis& basis,
                       int p_window);

// The basis monomial evaluated as a series; exact on |p-exp| <= p_window.
PQSeries qjac_monomial_series(const QJacMonomial& m, int q_order, int p_window);

}  // namespace hilbq
