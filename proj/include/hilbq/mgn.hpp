#pragma once

#include <vector>

#include "hilbq/pqseries.hpp"
#include "hilbq/rational.hpp"

namespace hilbq {

// Ramification profile (a_1, ..., a_n): nonzero integers summing to zero; the
// first part is the one carrying the unit insertion.
struct DRProfile {
    int g = 1;
    std::vector<int> a;

    void validate() const;
};

enum class DRFlavor { UnitPoint, AlphaBeta };

// Socle evaluation
//   int lambda_g lambda_{g-1} kappa_{b0} psi_1^{b_1+1}..psi_n^{b_n+1}
//     = (-1)^{g+1} (2g-2+n)! B_{2g} / (2^{2g-1} (2g)! prod_{i=0}^n (2b_i+1)!!),
// valid when b_0 + sum(b_i + 1) + (2g-1) = 3g-3+n and all b_i >= 0.
Rational socle_kappa(int g, int b0, const std::vector<int>& b);

// Socle evaluation
//   int lambda_g lambda_{g-1} psi_1^{b_1+1}..psi_n^{b_n+1}
//     = (-1)^{g+1} (2g-3+n)! B_{2g} / (2^{2g-1} (2g)! prod_i (2b_i+1)!!),
// valid on balance sum(b_i + 1) + (2g-1) = 3g-3+n with at most one b_i = -1.
Rational socle_psi(int g, const std::vector<int>& b);

// Closed evaluation of the Hodge-DR integrals: the result is
//   scalar * (q d/dq)^{n-2} G_{2g},  with
//   scalar = pref/(a_1..a_n) * sum_S (-1)^{|S|} a_S^{2g-2+n} * (-1)^{g-1+n}/(2g-2+n)!
// where pref = a_1^2 for the unit/point flavor and -a_i a_j for alpha/beta.
struct HodgeDRResult {
    Rational scalar;
    int derivative_order = 0;   // n - 2
    int eisenstein_weight = 2;  // 2g

    PQSeries as_series(int q_order) const;
};

HodgeDRResult dr_hodge_closed(const DRProfile& p, DRFlavor flavor, int i = 1, int j = 2);

// The same integral through the pushforward combinatorics: terms (A), (B),
// (C) summed over compositions, multiplied by the common factor
// (-1)^{g+1}/2^{2g-2} (q d/dq)^{n-2} G_{2g}. `simplified` switches to the
// factorial-form displays (third derivation path); both must agree with the
// closed form.
PQSeries dr_hodge_combinatorial(const DRProfile& p, int q_order, DRFlavor flavor,
                                bool simplified = false, int i = 1, int j = 2);

// Checks sum_S (-1)^{|S|} A_r(p^{a_S}) = -2 sum_{k,d} d^{r-1} q^{kd}
// (1-p^{a_1 k})..(1-p^{a_r k}) on the window.
bool averaging_check(int r, const std::vector<int>& a, int q_order, int p_window);

// sum_S (-1)^{|S|} a_S^k, zero for k < n.
Rational subset_sum_power(const std::vector<int>& a, int k);

}  // namespace hilbq
