#pragma once

#include <map>
#include <string>
#include <vector>

#include "hilbq/surface.hpp"

namespace hilbq {

// Creation factor q_k(c) with k >= 1 and c a basis-class index.
struct FockFactor {
    int k;
    int cls;
    friend auto operator<=>(const FockFactor&, const FockFactor&) = default;
};

// Product of creation operators applied to the vacuum, in canonical order:
// k descending, class index ascending among equal k. A repeated odd factor
// squares to zero and never appears in a canonical monomial.
struct FockMonomial {
    std::vector<FockFactor> f;

    int level() const {
        int n = 0;
        for (const auto& x : f) n += x.k;
        return n;
    }
    int length() const { return static_cast<int>(f.size()); }
    friend auto operator<=>(const FockMonomial&, const FockMonomial&) = default;

    std::string render(const SurfaceModel& s) const;  // e.g. "q3(f) q1(sigma)"
};

class FockVector {
public:
    FockVector() = default;
    static FockVector vacuum() {
        FockVector v;
        v.terms_[FockMonomial{}] = TScalar(1);
        return v;
    }

    const std::map<FockMonomial, TScalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add(const FockMonomial& m, const TScalar& c) {
        if (c.is_zero()) return;
        auto [it, ins] = terms_.emplace(m, c);
        if (!ins) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    TScalar coeff(const FockMonomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? TScalar() : it->second;
    }

    FockVector& operator+=(const FockVector& o) {
        for (const auto& [m, c] : o.terms_) add(m, c);
        return *this;
    }
    friend FockVector operator+(FockVector a, const FockVector& b) { a += b; return a; }
    friend FockVector operator-(const FockVector& a) {
        FockVector r;
        for (const auto& [m, c] : a.terms_) r.add(m, -c);
        return r;
    }
    friend FockVector operator-(FockVector a, const FockVector& b) { a += -b; return a; }
    friend FockVector operator*(const TScalar& c, const FockVector& a) {
        FockVector r;
        for (const auto& [m, x] : a.terms_) r.add(m, c * x);
        return r;
    }
    friend bool operator==(const FockVector& a, const FockVector& b) {
        return a.terms_ == b.terms_;
    }

    std::string render(const SurfaceModel& s) const;

private:
    std::map<FockMonomial, TScalar> terms_;
};

// All canonical monomials of level n, in a fixed deterministic order.
std::vector<FockMonomial> fock_basis(const SurfaceModel& s, int n);

// q_k(c) for any nonzero k (creation for k > 0, annihilation for k < 0 via
// the supercommutation relation [q_k(a), q_l(b)] = k delta_{k+l,0} (a,b) Id),
// extended linearly over the class c. q_0 = 0.
FockVector nakajima_apply(const SurfaceModel& s, int k, const SurfaceClass& c,
                          const FockVector& v);
FockVector nakajima_apply_basis(const SurfaceModel& s, int k, int cls,
                                const FockVector& v);

// Poincare pairing via the adjoint rule (q_k(a) v, w) = (-1)^k (v, q_{-k}(a) w)
// and (vacuum, vacuum) = 1. Levels must agree.
TScalar fock_pairing(const SurfaceModel& s, const FockVector& v, const FockVector& w);

// Cohomology-weighted partition ((k_1, c_1), ..., (k_l, c_l)); its Fock class
// divides by prod k_i.
using WeightedPartition = std::vector<std::pair<int, SurfaceClass>>;
FockVector partition_class(const SurfaceModel& s, const WeightedPartition& wp);

// Unit of H*(S^[n]): the weighted partition (1,1)^n scaled by 1/n!.
FockVector hilb_unit(const SurfaceModel& s, int n);

// Doubled complex degree 2 deg_C = 2(n - l) + sum deg(c_i) + 2 (t-exponent of
// the coefficient); throws on inhomogeneous vectors. Doubling keeps the value
// integral for odd classes.
int complex_degree2(const SurfaceModel& s, const FockVector& v);

}  // namespace hilbq
