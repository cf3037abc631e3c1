#include "hilbq/mgn.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

#include "hilbq/modforms.hpp"

namespace hilbq {

void DRProfile::validate() const {
    if (g < 1) throw std::invalid_argument("DRProfile: genus must be >= 1");
    if (a.empty()) throw std::invalid_argument("DRProfile: empty profile");
    long sum = 0;
    for (int ai : a) {
        if (ai == 0) throw std::invalid_argument("DRProfile: zero part");
        sum += ai;
    }
    if (sum != 0) throw std::invalid_argument("DRProfile: parts must sum to zero");
}

Rational socle_kappa(int g, int b0, const std::vector<int>& b) {
    const int n = static_cast<int>(b.size());
    if (b0 < 0) throw std::invalid_argument("socle_kappa: negative kappa index");
    long codim = b0 + (2 * g - 1);
    for (int bi : b) {
        if (bi < 0) throw std::invalid_argument("socle_kappa: negative psi index");
        codim += bi + 1;
    }
    if (codim != 3 * g - 3 + n)
        throw std::invalid_argument("socle_kappa: codimension mismatch");
    mpz_class denom = int_pow(2, 2 * g - 1) * factorial(2 * g) * odd_double_factorial(b0);
    for (int bi : b) denom *= odd_double_factorial(bi);
    Rational sign((g + 1) % 2 == 0 ? 1 : -1);
    return sign * Rational(factorial(2 * g - 2 + n)) * bernoulli(2 * g) / Rational(denom);
}

Rational socle_psi(int g, const std::vector<int>& b) {
    const int n = static_cast<int>(b.size());
    long codim = 2 * g - 1;
    int negatives = 0;
    for (int bi : b) {
        if (bi < -1) throw std::invalid_argument("socle_psi: psi index below -1");
        if (bi == -1) ++negatives;
        codim += bi + 1;
    }
    if (negatives > 1) throw std::invalid_argument("socle_psi: two negative indices");
    if (codim != 3 * g - 3 + n)
        throw std::invalid_argument("socle_psi: codimension mismatch");
    mpz_class denom = int_pow(2, 2 * g - 1) * factorial(2 * g);
    for (int bi : b) denom *= odd_double_factorial(bi);
    Rational sign((g + 1) % 2 == 0 ? 1 : -1);
    return sign * Rational(factorial(2 * g - 3 + n)) * bernoulli(2 * g) / Rational(denom);
}

Rational subset_sum_power(const std::vector<int>& a, int k) {
    const int n = static_cast<int>(a.size());
    Rational total(0);
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        long as = 0;
        int par = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) { as += a[i]; ++par; }
        Rational term(int_pow(as, k));
        total += (par % 2 == 0) ? term : -term;
    }
    return total;
}

PQSeries HodgeDRResult::as_series(int q_order) const {
    PQSeries g = eisenstein(eisenstein_weight, q_order);
    for (int i = 0; i < derivative_order; ++i) g = derive_q(g);
    return TScalar(scalar) * g;
}

HodgeDRResult dr_hodge_closed(const DRProfile& p, DRFlavor flavor, int i, int j) {
    p.validate();
    const int n = static_cast<int>(p.a.size());
    const int g = p.g;
    Rational pref;
    if (flavor == DRFlavor::UnitPoint) {
        pref = Rational(static_cast<long>(p.a[0]) * p.a[0]);
    } else {
        if (!(1 <= i && i < j && j <= n))
            throw std::invalid_argument("dr_hodge_closed: need 1 <= i < j <= n");
        pref = Rational(-static_cast<long>(p.a[i - 1]) * p.a[j - 1]);
    }
    Rational prod(1);
    for (int ai : p.a) prod *= Rational(ai);
    Rational s = subset_sum_power(p.a, 2 * g - 2 + n);
    Rational sign((g - 1 + n) % 2 == 0 ? 1 : -1);
    HodgeDRResult r;
    r.scalar = pref / prod * s * sign / Rational(factorial(2 * g - 2 + n));
    r.derivative_order = n - 2;
    r.eisenstein_weight = 2 * g;
    return r;
}

namespace {

// Compositions b_0 + ... + b_m = g with b_i >= 0.
void compositions(int m_plus_1, int g, std::vector<int>& cur,
                  const std::function<void(const std::vector<int>&)>& emit) {
    if (static_cast<int>(cur.size()) == m_plus_1 - 1) {
        cur.push_back(g);
        emit(cur);
        cur.pop_back();
        return;
    }
    for (int v = 0; v <= g; ++v) {
        cur.push_back(v);
        compositions(m_plus_1, g - v, cur, emit);
        cur.pop_back();
    }
}

Rational a_pow(long base, int e) { return Rational(int_pow(base, e)); }

}  // namespace

PQSeries dr_hodge_combinatorial(const DRProfile& p, int q_order, DRFlavor flavor,
                                bool simplified, int i, int j) {
    p.validate();
    const int g = p.g;
    // Proof labeling: marking 0 carries the unit insertion, markings 1..m
    // carry point insertions; the profile's first part is a_0.
    const int m = static_cast<int>(p.a.size()) - 1;
    if (m < 1)
        throw std::invalid_argument("dr_hodge_combinatorial: profile needs >= 2 parts");
    const long a0 = p.a[0];
    std::vector<long> a(m);
    for (int k = 0; k < m; ++k) a[k] = p.a[k + 1];

    Rational total(0);
    std::vector<int> cur;

    if (!simplified) {
        // (A): kappa term, over b_0 + ... + b_m = g with b_0 > 0
        Rational termA(0);
        compositions(m + 1, g, cur, [&](const std::vector<int>& b) {
            if (b[0] == 0) return;
            Rational base = a_pow(a0, 2 * b[0]);
            mpz_class den = factorial(b[0]) * odd_double_factorial(b[0] - 1);
            for (int k = 1; k <= m; ++k) {
                base *= a_pow(a[k - 1], 2 * b[k]);
                den *= factorial(b[k]) * odd_double_factorial(b[k]);
            }
            for (int idx = 1; idx <= m; ++idx)
                termA += base * Rational(2 * b[idx] + 1) / Rational(den);
        });
        // (B) and (C): psi terms over b_1 + ... + b_m = g with b_i > 0
        Rational termBC(0);
        compositions(m, g, cur, [&](const std::vector<int>& b) {
            long sumf = -2;
            for (int k = 0; k < m; ++k) sumf += 2 * b[k] + 1;
            mpz_class den = mpz_class(2 * g - 2 + m);
            for (int k = 0; k < m; ++k) den *= factorial(b[k]) * odd_double_factorial(b[k]);
            for (int idx = 1; idx <= m; ++idx) {
                if (b[idx - 1] == 0) continue;
                Rational baseB(1), baseC(1);
                for (int k = 1; k <= m; ++k) {
                    baseB *= a_pow(a[k - 1], 2 * b[k - 1]);
                    baseC *= (k == idx) ? a_pow(a0 + a[k - 1], 2 * b[k - 1])
                                        : a_pow(a[k - 1], 2 * b[k - 1]);
                }
                Rational w = Rational(2 * b[idx - 1] + 1) * Rational(sumf) / Rational(den);
                termBC += (baseB - baseC) * w;
            }
        });
        total = (termA + termBC) / Rational(int_pow(2, g));
    } else {
        // simplified displays: factorials in place of double factorials
        Rational termA(0);
        compositions(m + 1, g, cur, [&](const std::vector<int>& b) {
            if (b[0] == 0) return;
            Rational base = a_pow(a0, 2 * b[0]);
            mpz_class den = factorial(2 * b[0]);
            for (int k = 1; k <= m; ++k) {
                base *= a_pow(a[k - 1], 2 * b[k]);
                den *= factorial(2 * b[k] + 1);
            }
            for (int idx = 1; idx <= m; ++idx)
                termA += base * Rational(2 * b[idx] + 1) / Rational(den);
        });
        Rational termBC(0);
        compositions(m, g, cur, [&](const std::vector<int>& b) {
            mpz_class den(1);
            for (int k = 0; k < m; ++k) den *= factorial(2 * b[k] + 1);
            for (int idx = 1; idx <= m; ++idx) {
                Rational baseB(1), baseC(1);
                for (int k = 1; k <= m; ++k) {
                    baseB *= a_pow(a[k - 1], 2 * b[k - 1]);
                    baseC *= (k == idx) ? a_pow(a0 + a[k - 1], 2 * b[k - 1])
                                        : a_pow(a[k - 1], 2 * b[k - 1]);
                }
                termBC += (baseB - baseC) * Rational(2 * b[idx - 1] + 1) / Rational(den);
            }
        });
        total = termA + termBC;
    }

    Rational common = Rational((g + 1) % 2 == 0 ? 1 : -1) /
                      Rational(int_pow(2, 2 * g - 2));
    Rational scalar = total * common;
    if (flavor == DRFlavor::AlphaBeta) {
        const int n = static_cast<int>(p.a.size());
        if (!(1 <= i && i < j && j <= n))
            throw std::invalid_argument("dr_hodge_combinatorial: need 1 <= i < j <= n");
        // even/odd ratio: replaces the a_1^2 prefactor by -a_i a_j
        scalar *= Rational(-static_cast<long>(p.a[i - 1]) * p.a[j - 1]) /
                  Rational(static_cast<long>(p.a[0]) * p.a[0]);
    }

    PQSeries gser = eisenstein(2 * g, q_order);
    for (int k = 0; k < m - 1; ++k) gser = derive_q(gser);
    return TScalar(scalar) * gser;
}

bool averaging_check(int r, const std::vector<int>& a, int q_order, int p_window) {
    if (r < 2 || static_cast<int>(a.size()) != r)
        throw std::invalid_argument("averaging_check: need r >= 2 parts");
    long sum = std::accumulate(a.begin(), a.end(), 0L);
    if (sum != 0) throw std::invalid_argument("averaging_check: parts must sum to zero");

    PQSeries lhs(q_order);
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        int bs = 0;
        int par = 0;
        for (int k = 0; k < r; ++k)
            if (mask & (1u << k)) { bs += a[k]; ++par; }
        PQSeries t = jacobi_a_dilated(r, bs, q_order, p_window);
        lhs = (par % 2 == 0) ? lhs + t : lhs - t;
    }

    PQSeries rhs(q_order);
    for (int k = 1; k <= q_order; ++k)
        for (int d = 1; k * d <= q_order; ++d) {
            // (1-p^{a_1 k})...(1-p^{a_r k})
            PQSeries::PLayer acc{{0, TScalar(1)}};
            for (int idx = 0; idx < r; ++idx) {
                PQSeries::PLayer next = acc;
                for (const auto& [e, c] : acc) {
                    auto [it, ins] = next.emplace(e + 2 * a[idx] * k, -c);
                    if (!ins) {
                        it->second += -c;
                        if (it->second.is_zero()) next.erase(it);
                    }
                }
                acc = std::move(next);
            }
            Rational w = Rational(-2) * Rational(int_pow(d, r - 1));
            for (const auto& [e, c] : acc) rhs.add_term(k * d, e, TScalar(w) * c);
        }

    return equal_on_window(lhs, rhs, q_order, 2 * p_window);
}

}  // namespace hilbq
