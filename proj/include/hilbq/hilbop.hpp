#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "hilbq/fock.hpp"
#include "hilbq/pqseries.hpp"

namespace hilbq {

// Level-preserving matrix over the Nakajima basis of H*(S^[n]) with PQSeries
// entries; entry (i, j) is the coefficient of basis[i] in O(basis[j]).
class OperatorSeries {
public:
    OperatorSeries(const SurfaceModel& s, int level, int q_order);

    int level() const { return level_; }
    int q_order() const { return q_order_; }
    const std::vector<FockMonomial>& basis() const { return basis_; }
    const std::map<std::pair<int, int>, PQSeries>& entries() const { return e_; }

    int index_of(const FockMonomial& m) const;

    void add_entry(int row, int col, const PQSeries& ser);
    void add_term(int row, int col, int d, int dp, const TScalar& c);
    PQSeries entry(int row, int col) const;

    // (O lambda, mu) with both vectors expanded in the stored basis.
    PQSeries bracket(const SurfaceModel& s, const FockVector& lambda,
                     const FockVector& mu) const;

    OperatorSeries scaled(const PQSeries& c) const;
    OperatorSeries scaled(const TScalar& c) const;
    OperatorSeries derived_q() const;  // entrywise q d/dq
    OperatorSeries derived_p() const;  // entrywise p d/dp

    friend OperatorSeries operator+(const OperatorSeries& a, const OperatorSeries& b);
    friend OperatorSeries operator-(const OperatorSeries& a, const OperatorSeries& b);

private:
    OperatorSeries transformed(const std::function<PQSeries(const PQSeries&)>& f) const;

    int level_;
    int q_order_;
    std::vector<FockMonomial> basis_;
    std::map<FockMonomial, int> index_;
    std::map<std::pair<int, int>, PQSeries> e_;
};

// Entrywise comparison on |doubled p-exponent| <= dp_max; empty when equal.
std::string op_first_mismatch(const OperatorSeries& a, const OperatorSeries& b,
                              int dp_max);

// p,q-free operator matrices (classical multiplication).
using FockMatrix = std::map<std::pair<int, int>, TScalar>;

FockMatrix matrix_of(const SurfaceModel& s, const std::vector<FockMonomial>& basis,
                     const std::function<FockVector(const FockVector&)>& op);

// Word of Nakajima operators applied right to left; creations and
// annihilations both allowed.
using NakajimaWord = std::vector<std::pair<int, SurfaceClass>>;
FockVector apply_word(const SurfaceModel& s, const NakajimaWord& w, const FockVector& v);

// Normal-ordered application of q_{b_1}...q_{b_r}(T) for a TensorClass T:
// slots distribute onto the operators in order, the word is stably sorted by
// index descending, and crossing two odd symbols flips the sign.
FockVector apply_normal_ordered(const SurfaceModel& s, const std::vector<int>& b,
                                const TensorClass& t, const FockVector& v);

// Classical multiplication by D(alpha): e_alpha = -sum_{m>0} q_m q_{-m}(D. alpha).
FockMatrix lehn_divisor(const SurfaceModel& s, const SurfaceClass& alpha, int n);

// Classical multiplication by delta = c_1(O^[n]):
//   e_delta = -1/6 sum_{i+j+k=0} :q_i q_j q_k(D_123): - 1/2 sum_{m>0} (m-1) q_m q_{-m}(D. K).
FockMatrix lehn_delta(const SurfaceModel& s, int n);

// The class in H^{2r+2}(S^r) attached to (gamma, b_1..b_r):
//   sum_i b_i^2 pr_i*(point) prod_{l != i} pr_l*(gamma)
//   - sum_{i<j} b_i b_j pr_ij*(D^odd. gamma) prod_{l != i,j} pr_l*(gamma).
TensorClass star_class(const SurfaceModel& s, const SurfaceClass& gamma,
                       const std::vector<int>& b);

// The vertex operator sum over b_1 + ... + b_r = 0 (b_i != 0):
//   (1/r!) prod_i (p^{b_i/2} - p^{-b_i/2})/b_i : q_{b_1}..q_{b_r}(star(gamma)) :
// evaluated at p^{m}; entries are pure p-Laurent layers, keyed by r so the
// caller can attach the d^{r-1} homogeneity of gamma = d*f.
using PLayer = PQSeries::PLayer;
using PMatrix = std::map<std::pair<int, int>, PLayer>;
std::map<int, PMatrix> omega_matrix_by_r(const SurfaceModel& s, const SurfaceClass& gamma,
                                         int n, int m_dilation);

enum class QVariant { Compact, Exc };

// Two-point genus-0 operator of the Hilbert scheme in vertical classes
// df + kA, as a series in q and p:
//   Q^Hilb = sum_{k>0} ln((1-p^k)/(1-p)) q_k q_{-k}(D. K_S)
//            - (int_Sigma K_S) sum_{m,d>=1} q^{md}/(md)
//              [ omega_{df}(p^m) + (p^{m/2}-p^{-m/2})^2 e_{df} ].
// The Exc variant is the equivariant E x C evaluation,
//   Q^Hilb = -t^2 sum_{k>0} ln((1-p^k)/(1-p)) q_k q_{-k}(D_E)
//            + sum_{m,d>=1} q^{md}/(md) [ omega_{dt}(p^m) + (...)^2 d e_t ],
// with e_t = -t^2 sum_k q_k q_{-k}(D_E). q^0 layers are ascending in p,
// truncated above p_window.
OperatorSeries q_hilb(const SurfaceModel& s, int n, int q_order, int p_window,
                      QVariant variant);

// Stable-pairs two-point operator:
//   Q^PT = -sum_{k>0} ln(1-p^k) q_k q_{-k}(D. c1) + d_Sigma sum_{m,d} omega_{df}(p^m) q^{md}/(md).
OperatorSeries q_pt(const SurfaceModel& s, int n, int q_order, int p_window);

// Quantum multiplication by divisors via the divisor equation:
//   E_alpha = e_alpha + (alpha . f) q d/dq Q^Hilb,   E_delta = e_delta + p d/dp Q^Hilb.
OperatorSeries quantum_divisor_alpha(const SurfaceModel& s, const SurfaceClass& alpha,
                                     int n, int q_order, int p_window);
OperatorSeries quantum_divisor_delta(const SurfaceModel& s, int n, int q_order,
                                     int p_window);

// Extremal (q = 0) multiplication by delta:
//   -1/6 sum :qqq(D_123): + sum_{k>0} (k/2 (p^k+1)/(p^k-1) - 1/2 (p+1)/(p-1)) q_k q_{-k}(D. K),
// rational functions expanded ascending in p to p_window.
OperatorSeries extremal_delta(const SurfaceModel& s, int n, int q_order, int p_window);

// log((1-p) prod_r (1-p q^r)(1-p^{-1} q^r)/(1-q^r)^2): the factor mediating
// between the Hilbert-scheme and stable-pairs operators.
PQSeries wallcross_log_factor(int q_order, int p_window);

struct WallcrossData {
    PQSeries i0;              // prod (1-q^n)^{-d_Sigma}
    PQSeries i1_deg2_scalar;  // scalar multiplying D(c1) in [I_1]_{deg 2}
};
WallcrossData wallcross_data(const SurfaceModel& s, int q_order, int p_window);

// Structure constants <lambda, mu>_{0, df+kA}: (d, k) -> coefficient, where
// the (q^d p^k)-coefficient of (Q^Hilb lambda, mu) carries the sign (-p)^k.
// The (0,0) entry is excluded by definition.
std::map<std::pair<int, int>, TScalar> bracket_table(const SurfaceModel& s, int n,
                                                     const FockVector& lambda,
                                                     const FockVector& mu, int q_order,
                                                     int p_window);

// Internal cross-check assemblies: the operators whose coefficient form uses
// A_r(p^{b_S}) directly; publically Q^PT realizes them through q d/dq and
// p d/dp. Exposed for the divisor-equation consistency suite only.
namespace detail {
OperatorSeries t_operator(const SurfaceModel& s, int n, int q_order, int p_window);
OperatorSeries t_hat_operator(const SurfaceModel& s, int n, int q_order, int p_window);
}  // namespace detail

}  // namespace hilbq
