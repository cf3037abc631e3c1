#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hilbq/rational.hpp"

namespace hilbq {

// Laurent-in-z expansion with q-truncated power series coefficients, used to
// compare Fourier expansions against Taylor expansions under p = e^z. The
// only pole ever needed is the simple 1/z of the first quasi-Jacobi
// generator, so z-exponents are bounded below by -1.
class ZSeries {
public:
    ZSeries(int q_order, int z_order) : q_order_(q_order), z_order_(z_order) {}

    int q_order() const { return q_order_; }
    int z_order() const { return z_order_; }
    int pole_order() const {
        return (!c_.empty() && c_.begin()->first < 0) ? 1 : 0;
    }

    void add_term(int z_exp, int q_exp, const Rational& c) {
        if (c.is_zero() || z_exp > z_order_ || q_exp > q_order_) return;
        if (z_exp < -1) throw std::invalid_argument("ZSeries: pole order above 1");
        if (q_exp < 0) throw std::invalid_argument("ZSeries: negative q-exponent");
        auto& layer = c_[z_exp];
        auto [it, inserted] = layer.emplace(q_exp, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) layer.erase(it);
        }
        if (layer.empty()) c_.erase(z_exp);
    }

    Rational coeff(int z_exp, int q_exp) const {
        auto it = c_.find(z_exp);
        if (it == c_.end()) return Rational(0);
        auto jt = it->second.find(q_exp);
        return jt == it->second.end() ? Rational(0) : jt->second;
    }

    const std::map<int, std::map<int, Rational>>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    ZSeries& operator+=(const ZSeries& o) {
        if (o.q_order_ != q_order_ || o.z_order_ != z_order_)
            throw std::invalid_argument("ZSeries: mixed truncation orders");
        for (const auto& [z, layer] : o.c_)
            for (const auto& [q, c] : layer) add_term(z, q, c);
        return *this;
    }

    friend ZSeries operator+(ZSeries a, const ZSeries& b) { a += b; return a; }
    friend ZSeries operator-(const ZSeries& a) {
        ZSeries r(a.q_order_, a.z_order_);
        for (const auto& [z, layer] : a.c_)
            for (const auto& [q, c] : layer) r.add_term(z, q, -c);
        return r;
    }
    friend ZSeries operator-(ZSeries a, const ZSeries& b) { a += -b; return a; }

    friend bool operator==(const ZSeries& a, const ZSeries& b) {
        return a.q_order_ == b.q_order_ && a.z_order_ == b.z_order_ && a.c_ == b.c_;
    }
    friend bool operator!=(const ZSeries& a, const ZSeries& b) { return !(a == b); }

    std::string str() const {
        if (c_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [z, layer] : c_) {
            for (const auto& [q, c] : layer) {
                if (!first) os << " + ";
                first = false;
                os << c.str();
                if (z != 0) os << "*z^" << z;
                if (q != 0) os << "*q^" << q;
            }
        }
        return os.str();
    }

private:
    int q_order_;
    int z_order_;
    std::map<int, std::map<int, Rational>> c_;  // z-exp -> (q-exp -> coeff)
};

}  // namespace hilbq
