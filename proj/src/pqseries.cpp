#include "hilbq/pqseries.hpp"

#include <algorithm>
#include <sstream>

#include "hilbq/zseries.hpp"

namespace hilbq {

namespace {

void check_orders(const PQSeries& a, const PQSeries& b) {
    if (a.q_order() != b.q_order())
        throw SeriesOrderMismatch("PQSeries: mixed q truncation orders " +
                                  std::to_string(a.q_order()) + " vs " +
                                  std::to_string(b.q_order()));
}

// Product with terms above the doubled p-exponent cutoff discarded. Used by
// the log/exp loops, where the cutoff carries enough slack that discarded
// terms cannot influence the coefficients kept by the caller.
PQSeries mul_capped(const PQSeries& a, const PQSeries& b, long dp_cap) {
    check_orders(a, b);
    PQSeries r(a.q_order());
    for (const auto& [da, la] : a.coeffs()) {
        for (const auto& [db, lb] : b.coeffs()) {
            if (da + db > a.q_order()) break;
            for (const auto& [pa, ca] : la)
                for (const auto& [pb, cb] : lb) {
                    if (static_cast<long>(pa) + pb > dp_cap) continue;
                    r.add_term(da + db, pa + pb, ca * cb);
                }
        }
    }
    return r;
}

// The q^0 layer of the argument of log/exp must consist of strictly positive
// p-exponents; returns that layer's emptiness.
bool check_q0_positive(const PQSeries& f, const char* who) {
    auto layer = f.q_layer(0);
    for (const auto& [dp, c] : layer)
        if (dp <= 0)
            throw std::domain_error(std::string(who) +
                                    ": q^0 layer has non-positive p-exponent " +
                                    std::to_string(dp) + "/2");
    return layer.empty();
}

}  // namespace

int PQSeries::min_dp() const {
    int m = 0;
    for (const auto& [d, layer] : c_)
        if (!layer.empty()) m = std::min(m, layer.begin()->first);
    return m;
}

std::string PQSeries::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, layer] : c_) {
        for (const auto& [dp, c] : layer) {
            if (!first) os << " + ";
            first = false;
            bool plain = c.is_rational();
            os << (plain ? c.str() : "(" + c.str() + ")");
            if (dp != 0) {
                os << "*p^";
                if (dp % 2 == 0) os << dp / 2;
                else os << "(" << dp << "/2)";
            }
            if (d != 0) os << "*q^" << d;
        }
    }
    return os.str();
}

PQSeries operator+(const PQSeries& a, const PQSeries& b) {
    check_orders(a, b);
    PQSeries r = a;
    for (const auto& [d, layer] : b.coeffs())
        for (const auto& [dp, c] : layer) r.add_term(d, dp, c);
    return r;
}

PQSeries operator-(const PQSeries& a) {
    PQSeries r(a.q_order());
    for (const auto& [d, layer] : a.coeffs())
        for (const auto& [dp, c] : layer) r.add_term(d, dp, -c);
    return r;
}

PQSeries operator-(const PQSeries& a, const PQSeries& b) { return a + (-b); }

PQSeries operator*(const PQSeries& a, const PQSeries& b) {
    check_orders(a, b);
    PQSeries r(a.q_order());
    for (const auto& [da, la] : a.coeffs()) {
        for (const auto& [db, lb] : b.coeffs()) {
            if (da + db > a.q_order()) break;
            for (const auto& [pa, ca] : la)
                for (const auto& [pb, cb] : lb) r.add_term(da + db, pa + pb, ca * cb);
        }
    }
    return r;
}

PQSeries operator*(const TScalar& c, const PQSeries& a) {
    PQSeries r(a.q_order());
    if (c.is_zero()) return r;
    for (const auto& [d, layer] : a.coeffs())
        for (const auto& [dp, x] : layer) r.add_term(d, dp, c * x);
    return r;
}

PQSeries derive_q(const PQSeries& a) {
    PQSeries r(a.q_order());
    for (const auto& [d, layer] : a.coeffs()) {
        if (d == 0) continue;
        for (const auto& [dp, c] : layer) r.add_term(d, dp, Rational(d) * c);
    }
    return r;
}

PQSeries derive_p(const PQSeries& a) {
    PQSeries r(a.q_order());
    for (const auto& [d, layer] : a.coeffs())
        for (const auto& [dp, c] : layer) {
            if (dp == 0) continue;
            r.add_term(d, dp, Rational(dp, 2) * c);
        }
    return r;
}

PQSeries dilate(const PQSeries& a, int m_q, int m_p) {
    if (m_q < 1) throw std::invalid_argument("dilate: q dilation must be positive");
    if (m_p == 0) throw std::invalid_argument("dilate: p dilation must be nonzero");
    PQSeries r(a.q_order());
    for (const auto& [d, layer] : a.coeffs()) {
        if (static_cast<long>(d) * m_q > a.q_order()) continue;
        for (const auto& [dp, c] : layer) r.add_term(d * m_q, dp * m_p, c);
    }
    return r;
}

PQSeries truncate_p_above(const PQSeries& a, int max_dp) {
    PQSeries r(a.q_order());
    for (const auto& [d, layer] : a.coeffs())
        for (const auto& [dp, c] : layer)
            if (dp <= max_dp) r.add_term(d, dp, c);
    return r;
}

namespace {

// Shared core of log and exp. Terms above dp_cap are discarded during the
// power iteration; the cap includes slack q_order * |min p-exponent| so that
// within the q-truncation no discarded term can feed back below the cap the
// caller retains.
long dp_cap_for(const PQSeries& f, long dp_window) {
    long slack = static_cast<long>(f.q_order()) * (-static_cast<long>(f.min_dp()));
    return dp_window + slack;
}

}  // namespace

PQSeries series_log(const PQSeries& a) {
    if (!a.coeff(0, 0).is_rational() || a.coeff(0, 0).as_rational() != Rational(1))
        throw std::domain_error("series_log: constant term is not 1");
    PQSeries f = a - PQSeries::constant(a.q_order(), TScalar(1));
    if (!check_q0_positive(f, "series_log"))
        throw std::domain_error(
            "series_log: q^0 layer is p-dependent, a p_window is required");
    // With empty q^0 layer every power of f raises the q-degree.
    PQSeries r(a.q_order());
    PQSeries pw = f;
    for (int m = 1; !pw.is_zero(); ++m) {
        TScalar c(Rational((m % 2 == 1) ? 1 : -1, m));
        r = r + c * pw;
        pw = pw * f;
    }
    return r;
}

PQSeries series_log(const PQSeries& a, int p_window) {
    if (!a.coeff(0, 0).is_rational() || a.coeff(0, 0).as_rational() != Rational(1))
        throw std::domain_error("series_log: constant term is not 1");
    PQSeries f = a - PQSeries::constant(a.q_order(), TScalar(1));
    if (check_q0_positive(f, "series_log")) return series_log(a);
    const long cap = dp_cap_for(f, 2L * p_window);
    PQSeries r(a.q_order());
    PQSeries pw = truncate_p_above(f, static_cast<int>(cap));
    for (int m = 1; !pw.is_zero(); ++m) {
        TScalar c(Rational((m % 2 == 1) ? 1 : -1, m));
        r = r + c * pw;
        pw = mul_capped(pw, f, cap);
    }
    return truncate_p_above(r, 2 * p_window);
}

PQSeries series_exp(const PQSeries& a) {
    if (!a.coeff(0, 0).is_zero())
        throw std::domain_error("series_exp: nonzero constant term");
    if (!check_q0_positive(a, "series_exp"))
        throw std::domain_error(
            "series_exp: q^0 layer is p-dependent, a p_window is required");
    PQSeries r = PQSeries::constant(a.q_order(), TScalar(1));
    PQSeries term = a;
    for (int m = 1; !term.is_zero(); ++m) {
        r = r + term;
        term = TScalar(Rational(1, m + 1)) * (term * a);
    }
    return r;
}

PQSeries series_exp(const PQSeries& a, int p_window) {
    if (!a.coeff(0, 0).is_zero())
        throw std::domain_error("series_exp: nonzero constant term");
    if (check_q0_positive(a, "series_exp")) return series_exp(a);
    const long cap = dp_cap_for(a, 2L * p_window);
    PQSeries r = PQSeries::constant(a.q_order(), TScalar(1));
    PQSeries term = truncate_p_above(a, static_cast<int>(cap));
    for (int m = 1; !term.is_zero(); ++m) {
        r = r + term;
        term = TScalar(Rational(1, m + 1)) * mul_capped(term, a, cap);
    }
    return truncate_p_above(r, 2 * p_window);
}

ZSeries series_to_z(const PQSeries& a, int z_order) {
    ZSeries r(a.q_order(), z_order);
    for (const auto& [d, layer] : a.coeffs()) {
        for (const auto& [dp, c] : layer) {
            Rational rc = c.as_rational();
            Rational e(dp, 2);       // the exponent of p, as a rational
            Rational epow(1);        // e^j
            Rational jfact(1);       // j!
            for (int j = 0; j <= z_order; ++j) {
                if (j > 0) {
                    epow *= e;
                    jfact *= Rational(j);
                }
                Rational term = rc * epow / jfact;
                r.add_term(j, d, term);
                if (e.is_zero() && j == 0) break;  // constant: only z^0
            }
        }
    }
    return r;
}

bool equal_on_window(const PQSeries& a, const PQSeries& b, int q_max, int dp_max) {
    return first_mismatch(a, b, q_max, dp_max).empty();
}

std::string first_mismatch(const PQSeries& a, const PQSeries& b, int q_max, int dp_max) {
    for (int d = 0; d <= q_max; ++d) {
        auto la = a.q_layer(d);
        auto lb = b.q_layer(d);
        for (int dp = -dp_max; dp <= dp_max; ++dp) {
            TScalar ca = la.count(dp) ? la.at(dp) : TScalar();
            TScalar cb = lb.count(dp) ? lb.at(dp) : TScalar();
            if (ca != cb) {
                std::ostringstream os;
                os << "q^" << d << " p^(" << dp << "/2): " << ca.str() << " vs "
                   << cb.str();
                return os.str();
            }
        }
    }
    return {};
}

}  // namespace hilbq
