#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hilbq/rational.hpp"

namespace hilbq {

// Laurent polynomial in the equivariant weight t with Rational coefficients.
// This is the coefficient domain of the whole engine: plain rationals embed
// as the exponent-0 part, the E x C model carries genuine t-powers (the
// equivariant pairing divides by t, so negative exponents occur).
//
// It is a ring, not a field: division is only defined by nonzero monomials
// c*t^k, which is all the formulas ever need.
class TScalar {
public:
    TScalar() = default;
    TScalar(long n) { set_term(0, Rational(n)); }
    TScalar(const Rational& r) { set_term(0, r); }
    TScalar(long n, long d) { set_term(0, Rational(n, d)); }

    static TScalar t_power(int k, const Rational& c = Rational(1)) {
        TScalar s;
        s.set_term(k, c);
        return s;
    }

    const std::map<int, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    bool is_rational() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
    }

    Rational coeff(int k) const {
        auto it = terms_.find(k);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    // Exponent-0 part viewed as a rational; throws if genuine t-terms remain.
    Rational as_rational() const {
        if (!is_rational())
            throw std::domain_error("TScalar: not a plain rational: " + str());
        return coeff(0);
    }

    Rational eval_at_one() const {
        Rational s(0);
        for (const auto& [k, c] : terms_) s += c;
        return s;
    }

    int min_exponent() const {
        if (terms_.empty()) throw std::domain_error("TScalar: min_exponent of zero");
        return terms_.begin()->first;
    }
    int max_exponent() const {
        if (terms_.empty()) throw std::domain_error("TScalar: max_exponent of zero");
        return terms_.rbegin()->first;
    }

    TScalar& operator+=(const TScalar& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, c);
        return *this;
    }
    TScalar& operator-=(const TScalar& o) {
        for (const auto& [k, c] : o.terms_) add_term(k, -c);
        return *this;
    }

    friend TScalar operator+(TScalar a, const TScalar& b) { a += b; return a; }
    friend TScalar operator-(TScalar a, const TScalar& b) { a -= b; return a; }
    friend TScalar operator-(const TScalar& a) {
        TScalar r;
        for (const auto& [k, c] : a.terms_) r.set_term(k, -c);
        return r;
    }

    friend TScalar operator*(const TScalar& a, const TScalar& b) {
        TScalar r;
        for (const auto& [ka, ca] : a.terms_)
            for (const auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
        return r;
    }

    TScalar& operator*=(const TScalar& o) { *this = *this * o; return *this; }

    // Division by a Laurent monomial c*t^k: shifts exponents by -k and
    // divides coefficients by c. Anything else is unsupported ring division.
    friend TScalar operator/(const TScalar& a, const TScalar& b) {
        if (b.is_zero()) throw std::domain_error("TScalar: division by zero");
        if (!b.is_monomial())
            throw std::domain_error("TScalar: division by non-monomial " + b.str());
        const auto& [k, c] = *b.terms_.begin();
        TScalar r;
        for (const auto& [ka, ca] : a.terms_) r.set_term(ka - k, ca / c);
        return r;
    }

    friend bool operator==(const TScalar& a, const TScalar& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TScalar& a, const TScalar& b) { return !(a == b); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [k, c] : terms_) {
            if (!first) os << " + ";
            first = false;
            if (k == 0) {
                os << c.str();
            } else {
                os << c.str() << "*t";
                if (k != 1) os << "^" << k;
            }
        }
        return os.str();
    }

    void add_term(int k, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(k, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

private:
    void set_term(int k, const Rational& c) {
        if (!c.is_zero()) terms_[k] = c;
    }

    std::map<int, Rational> terms_;  // t-exponent -> coefficient, no zeros
};

inline TScalar operator*(const Rational& r, const TScalar& a) { return TScalar(r) * a; }
inline TScalar operator*(const TScalar& a, const Rational& r) { return a * TScalar(r); }

}  // namespace hilbq
