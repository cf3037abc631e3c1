#include "hilbq/fock.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace hilbq {

std::string FockMonomial::render(const SurfaceModel& s) const {
    if (f.empty()) return "vac";
    std::ostringstream os;
    bool first = true;
    for (const auto& x : f) {
        if (!first) os << " ";
        first = false;
        os << "q" << x.k << "(" << s.basis[x.cls].name << ")";
    }
    return os.str();
}

std::string FockVector::render(const SurfaceModel& s) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")*" << m.render(s);
    }
    return os.str();
}

namespace {

// Inserts a creation factor into a canonical monomial, tracking the Koszul
// sign of moving an odd symbol past the odd factors it crosses. Returns
// false when the insertion hits a repeated odd factor (the term is zero).
bool insert_creation(const SurfaceModel& s, FockMonomial& m, FockFactor nf, int& sign) {
    bool nf_odd = s.parity(nf.cls);
    size_t pos = 0;
    int crossed_odd = 0;
    while (pos < m.f.size()) {
        const FockFactor& cur = m.f[pos];
        if (cur.k > nf.k || (cur.k == nf.k && cur.cls < nf.cls)) {
            if (s.parity(cur.cls)) ++crossed_odd;
            ++pos;
            continue;
        }
        if (cur.k == nf.k && cur.cls == nf.cls && nf_odd) return false;
        break;
    }
    if (nf_odd && crossed_odd % 2 != 0) sign = -sign;
    m.f.insert(m.f.begin() + pos, nf);
    return true;
}

}  // namespace

FockVector nakajima_apply_basis(const SurfaceModel& s, int k, int cls,
                                const FockVector& v) {
    FockVector out;
    if (k == 0) return out;  // q_0 = 0
    if (k > 0) {
        for (const auto& [m, c] : v.terms()) {
            FockMonomial nm = m;
            int sign = 1;
            if (insert_creation(s, nm, {k, cls}, sign))
                out.add(nm, Rational(sign) * c);
        }
        return out;
    }
    // Annihilation: walk q_k(cls) rightward; crossing q_{k_i}(c_i) picks the
    // Koszul sign, and each factor with k_i = -k contributes the contraction
    // k * (cls, c_i) with the monomial shortened at that spot.
    const bool odd = s.parity(cls);
    SurfaceClass ca;
    ca[cls] = TScalar(1);
    for (const auto& [m, c] : v.terms()) {
        int sign = 1;
        for (size_t i = 0; i < m.f.size(); ++i) {
            const FockFactor& fac = m.f[i];
            if (fac.k == -k) {
                SurfaceClass cb;
                cb[fac.cls] = TScalar(1);
                TScalar contraction = Rational(k) * s.pair(ca, cb);
                if (!contraction.is_zero()) {
                    FockMonomial nm = m;
                    nm.f.erase(nm.f.begin() + i);
                    out.add(nm, Rational(sign) * contraction * c);
                }
            }
            if (odd && s.parity(fac.cls)) sign = -sign;
        }
        // moved past every factor: the annihilator hits the vacuum
    }
    return out;
}

FockVector nakajima_apply(const SurfaceModel& s, int k, const SurfaceClass& c,
                          const FockVector& v) {
    FockVector out;
    for (const auto& [cls, coeff] : c) out += coeff * nakajima_apply_basis(s, k, cls, v);
    return out;
}

std::vector<FockMonomial> fock_basis(const SurfaceModel& s, int n) {
    if (n < 0) throw std::invalid_argument("fock_basis: negative level");
    // partitions of n, parts descending
    std::vector<std::vector<int>> partitions;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            partitions.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n == 0 ? 1 : n);

    const int nb = static_cast<int>(s.dim());
    std::vector<FockMonomial> out;
    for (const auto& part : partitions) {
        // group equal parts
        std::vector<std::pair<int, int>> groups;  // (part, multiplicity)
        for (int p : part) {
            if (!groups.empty() && groups.back().first == p) groups.back().second++;
            else groups.push_back({p, 1});
        }
        std::vector<FockMonomial> acc = {FockMonomial{}};
        for (const auto& [p, mult] : groups) {
            std::vector<std::vector<int>> assigns;
            std::vector<int> pick;
            auto pickrec = [&](auto&& self, int i, int from) -> void {
                if (i == mult) {
                    assigns.push_back(pick);
                    return;
                }
                for (int c = from; c < nb; ++c) {
                    // repeats allowed for even classes only
                    if (!pick.empty() && pick.back() == c && s.parity(c)) continue;
                    pick.push_back(c);
                    self(self, i + 1, c);
                    pick.pop_back();
                }
            };
            pickrec(pickrec, 0, 0);
            std::vector<FockMonomial> next;
            for (const auto& base : acc)
                for (const auto& asg : assigns) {
                    FockMonomial m = base;
                    for (int c : asg) m.f.push_back({p, c});
                    next.push_back(std::move(m));
                }
            acc = std::move(next);
        }
        for (auto& m : acc) out.push_back(std::move(m));
    }
    return out;
}

TScalar fock_pairing(const SurfaceModel& s, const FockVector& v, const FockVector& w) {
    for (const auto& [m, c] : v.terms())
        for (const auto& [m2, c2] : w.terms())
            if (m.level() != m2.level())
                throw std::invalid_argument("fock_pairing: level mismatch");
    TScalar total;
    for (const auto& [m, c] : v.terms()) {
        // peel left factors by the graded adjoint rule
        //   (q_k(a) x, y) = (-1)^k (-1)^{|a||x|} (x, q_{-k}(a) y);
        // the Koszul factor is what makes cup operators self-adjoint and the
        // two-point brackets symmetric on classes with odd Nakajima factors.
        FockVector rhs = w;
        int sign = 1;
        bool dead = false;
        for (size_t i = 0; i < m.f.size(); ++i) {
            const FockFactor& fac = m.f[i];
            if (fac.k % 2 != 0) sign = -sign;
            if (s.parity(fac.cls)) {
                int rest_odd = 0;
                for (size_t j = i + 1; j < m.f.size(); ++j)
                    if (s.parity(m.f[j].cls)) ++rest_odd;
                if (rest_odd % 2 != 0) sign = -sign;
            }
            SurfaceClass ca;
            ca[fac.cls] = TScalar(1);
            rhs = nakajima_apply(s, -fac.k, ca, rhs);
            if (rhs.is_zero()) { dead = true; break; }
        }
        if (dead) continue;
        total += Rational(sign) * c * rhs.coeff(FockMonomial{});
    }
    return total;
}

FockVector partition_class(const SurfaceModel& s, const WeightedPartition& wp) {
    FockVector v = FockVector::vacuum();
    Rational norm(1);
    for (auto it = wp.rbegin(); it != wp.rend(); ++it) {
        if (it->first < 1)
            throw std::invalid_argument("partition_class: parts must be >= 1");
        v = nakajima_apply(s, it->first, it->second, v);
        norm *= Rational(it->first);
    }
    return TScalar(Rational(1) / norm) * v;
}

FockVector hilb_unit(const SurfaceModel& s, int n) {
    FockVector v = FockVector::vacuum();
    SurfaceClass one = s.cls("one");
    for (int i = 0; i < n; ++i) v = nakajima_apply(s, 1, one, v);
    return TScalar(Rational(1) / Rational(factorial(n))) * v;
}

int complex_degree2(const SurfaceModel& s, const FockVector& v) {
    if (v.is_zero()) throw std::invalid_argument("complex_degree2: zero vector");
    bool have = false;
    int deg = 0;
    for (const auto& [m, c] : v.terms()) {
        int base = 2 * (m.level() - m.length());
        for (const auto& fac : m.f) base += s.degree(fac.cls);
        for (const auto& [tk, coeff] : c.terms()) {
            int d = base + 2 * tk;
            if (!have) {
                deg = d;
                have = true;
            } else if (d != deg) {
                throw std::invalid_argument("complex_degree2: inhomogeneous vector");
            }
        }
    }
    return deg;
}

}  // namespace hilbq
