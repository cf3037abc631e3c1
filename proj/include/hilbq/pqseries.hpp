#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "hilbq/tscalar.hpp"

namespace hilbq {

class ZSeries;

struct SeriesOrderMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Truncated element of Q((p))[[q]]: power series in q up to q_order whose
// q-coefficients are Laurent polynomials in p with half-integer exponents.
// p-exponents are stored doubled (an entry dp stands for p^{dp/2}) so p^{1/2}
// is first class. q-degrees above q_order are discarded on construction;
// mixing two different q_orders in arithmetic is an error, never a coercion.
//
// No global p-window is imposed: each q-coefficient is an exact Laurent
// polynomial. The few operations that genuinely produce infinite ascending
// p-expansions (log/exp with p-dependent q^0 layer, rational functions of p)
// take an explicit p_window argument and document the ascending-expansion
// convention at the call site.
class PQSeries {
public:
    using PLayer = std::map<int, TScalar>;  // doubled p-exponent -> coefficient

    explicit PQSeries(int q_order) : q_order_(q_order) {
        if (q_order < 0) throw std::invalid_argument("PQSeries: negative q_order");
    }

    static PQSeries constant(int q_order, const TScalar& c) {
        PQSeries s(q_order);
        s.add_term(0, 0, c);
        return s;
    }
    static PQSeries monomial(int q_order, int d, int dp, const TScalar& c) {
        PQSeries s(q_order);
        s.add_term(d, dp, c);
        return s;
    }

    int q_order() const { return q_order_; }
    const std::map<int, PLayer>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    TScalar coeff(int d, int dp) const {
        auto it = c_.find(d);
        if (it == c_.end()) return TScalar();
        auto jt = it->second.find(dp);
        return jt == it->second.end() ? TScalar() : jt->second;
    }

    PLayer q_layer(int d) const {
        auto it = c_.find(d);
        return it == c_.end() ? PLayer() : it->second;
    }

    // Accumulates c into the (q^d, p^{dp/2}) slot; silently drops d > q_order
    // (the ring is truncated) and prunes zeros.
    void add_term(int d, int dp, const TScalar& c) {
        if (c.is_zero() || d > q_order_) return;
        if (d < 0) throw std::invalid_argument("PQSeries: negative q-exponent");
        auto& layer = c_[d];
        auto [it, inserted] = layer.emplace(dp, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) layer.erase(it);
        }
        if (layer.empty()) c_.erase(d);
    }

    bool has_half_integer_exponents() const {
        for (const auto& [d, layer] : c_)
            for (const auto& [dp, c] : layer)
                if (dp % 2 != 0) return true;
        return false;
    }

    int min_dp() const;  // most negative doubled p-exponent present (0 if none below 0)

    friend bool operator==(const PQSeries& a, const PQSeries& b) {
        return a.q_order_ == b.q_order_ && a.c_ == b.c_;
    }
    friend bool operator!=(const PQSeries& a, const PQSeries& b) { return !(a == b); }

    std::string str() const;

private:
    int q_order_;
    std::map<int, PLayer> c_;
};

PQSeries operator+(const PQSeries& a, const PQSeries& b);
PQSeries operator-(const PQSeries& a, const PQSeries& b);
PQSeries operator-(const PQSeries& a);
PQSeries operator*(const PQSeries& a, const PQSeries& b);
PQSeries operator*(const TScalar& c, const PQSeries& a);
inline PQSeries operator*(const PQSeries& a, const TScalar& c) { return c * a; }

// q d/dq and p d/dp (the latter multiplies p^{dp/2} terms by dp/2).
PQSeries derive_q(const PQSeries& a);
PQSeries derive_p(const PQSeries& a);

// Substitution q -> q^{m_q}, p -> p^{m_p}; m_q >= 1, m_p != 0; dilated
// q-exponents above q_order are dropped.
PQSeries dilate(const PQSeries& a, int m_q, int m_p);

// Drops all terms with doubled p-exponent above max_dp.
PQSeries truncate_p_above(const PQSeries& a, int max_dp);

// log(1+f): requires unit constant term; the q^0 layer of f must have only
// strictly positive p-exponents. When that layer is nonzero the expansion is
// ascending in p and truncated above p^p_window; the no-window overload
// requires an empty q^0 layer.
PQSeries series_log(const PQSeries& a);
PQSeries series_log(const PQSeries& a, int p_window);

// exp(f): requires zero constant term; same q^0-layer discipline as log.
PQSeries series_exp(const PQSeries& a);
PQSeries series_exp(const PQSeries& a, int p_window);

// p = e^z termwise: p^{dp/2} -> sum_j ((dp/2) z)^j / j!. Never creates poles;
// coefficients must be t-free.
ZSeries series_to_z(const PQSeries& a, int z_order);

// Coefficientwise equality on the window q <= q_max, |doubled p-exp| <= dp_max.
bool equal_on_window(const PQSeries& a, const PQSeries& b, int q_max, int dp_max);

// First (d, dp) with differing coefficient on the window, as a report string;
// empty when equal.
std::string first_mismatch(const PQSeries& a, const PQSeries& b, int q_max, int dp_max);

}  // namespace hilbq
