#include "hilbq/modforms.hpp"

#include <algorithm>
#include <sstream>

#include "hilbq/linsolve.hpp"

namespace hilbq {

Rational bernoulli(int n) {
    if (n < 0) throw std::domain_error("bernoulli: negative index");
    if (n == 1) return Rational(0);
    static std::vector<Rational> cache = {Rational(1), Rational(-1, 2)};
    // Standard recurrence sum_{j=0}^{m} C(m+1, j) B_j = 0 for the z/(e^z-1)
    // convention; only B_1 differs and is overridden above.
    while (static_cast<int>(cache.size()) <= n) {
        int m = static_cast<int>(cache.size());
        Rational s(0);
        for (int j = 0; j < m; ++j) {
            mpz_class binom;
            mpz_bin_uiui(binom.get_mpz_t(), m + 1, j);
            s += Rational(binom) * cache[j];
        }
        cache.push_back(-s / Rational(mpz_class(m + 1)));
    }
    return cache[n];
}

namespace {

// sigma_{k-1}(n) = sum over divisors d|n of d^{k-1}
Rational divisor_power_sum(int n, int k_minus_1) {
    mpz_class s = 0;
    for (int d = 1; d <= n; ++d)
        if (n % d == 0) s += int_pow(d, k_minus_1);
    return Rational(s);
}

}  // namespace

PQSeries eisenstein(int k, int q_order, bool zero_for_odd) {
    if (k < 2) throw std::domain_error("eisenstein: weight must be >= 2");
    if (k % 2 != 0) {
        if (zero_for_odd) return PQSeries(q_order);
        throw std::domain_error("eisenstein: odd weight " + std::to_string(k) +
                                " (G_odd = 0; pass zero_for_odd to request it)");
    }
    PQSeries g(q_order);
    g.add_term(0, 0, -bernoulli(k) / Rational(2 * k));
    for (int n = 1; n <= q_order; ++n) g.add_term(n, 0, divisor_power_sum(n, k - 1));
    return g;
}

PQSeries theta_series(int q_order, int p_window) {
    const int Q = q_order;
    PQSeries r(Q);
    r.add_term(0, 1, TScalar(1));
    r.add_term(0, -1, TScalar(-1));  // p^{1/2} - p^{-1/2}
    for (int m = 1; m <= Q; ++m) {
        PQSeries f(Q);
        f.add_term(0, 0, TScalar(1));
        f.add_term(m, 2, TScalar(-1));   // 1 - p q^m
        PQSeries g(Q);
        g.add_term(0, 0, TScalar(1));
        g.add_term(m, -2, TScalar(-1));  // 1 - p^{-1} q^m
        PQSeries h(Q);                    // (1 - q^m)^{-2} = sum_j (j+1) q^{mj}
        for (int j = 0; static_cast<long>(m) * j <= Q; ++j)
            h.add_term(m * j, 0, TScalar(j + 1));
        r = r * f * g * h;
    }
    if (p_window >= 0) r = truncate_p_above(r, 2 * p_window);
    return r;
}

PQSeries jacobi_a_regular(int n, int q_order) {
    if (n < 1) throw std::domain_error("jacobi_a: index must be >= 1");
    PQSeries a(q_order);
    a.add_term(0, 0, bernoulli(n) / Rational(n));
    int sign = (n % 2 == 0) ? 1 : -1;
    for (int k = 1; k <= q_order; ++k)
        for (int d = 1; k * d <= q_order; ++d) {
            Rational w(int_pow(d, n - 1));
            a.add_term(k * d, 2 * k, -w);
            a.add_term(k * d, -2 * k, Rational(-sign) * w);
        }
    return a;
}

PQSeries a1_singular_part_p(int q_order, int p_window) {
    // (1/2)(p+1)/(p-1) ascending in p: -1/2 - p - p^2 - ... - p^W
    PQSeries s(q_order);
    s.add_term(0, 0, Rational(-1, 2));
    for (int j = 1; j <= p_window; ++j) s.add_term(0, 2 * j, Rational(-1));
    return s;
}

ZSeries a1_singular_part_z(int q_order, int z_order) {
    // (1/2)(e^z+1)/(e^z-1) = 1/z + sum_{k>=1} B_k z^{k-1}/k!
    ZSeries s(q_order, z_order);
    s.add_term(-1, 0, Rational(1));
    Rational kfact(1);
    for (int k = 1; k - 1 <= z_order; ++k) {
        kfact *= Rational(k);
        s.add_term(k - 1, 0, bernoulli(k) / kfact);
    }
    return s;
}

PQSeries jacobi_a_fourier(int n, int q_order, int p_window) {
    PQSeries a = jacobi_a_regular(n, q_order);
    if (n == 1) a = a + a1_singular_part_p(q_order, p_window);
    return a;
}

PQSeries jacobi_a_dilated(int n, int s, int q_order, int p_window) {
    if (s == 0) {
        if (n == 1)
            throw std::domain_error("jacobi_a_dilated: A_1 is singular at p^0");
        // z -> 0 limit: -2 G_n(q) termwise, i.e. B_n/n - 2 sum d^{n-1} q^{kd}
        // for even n and 0 for odd n >= 3.
        PQSeries a(q_order);
        if (n % 2 != 0) return a;
        a.add_term(0, 0, bernoulli(n) / Rational(n));
        for (int k = 1; k <= q_order; ++k)
            for (int d = 1; k * d <= q_order; ++d)
                a.add_term(k * d, 0, Rational(-2) * Rational(int_pow(d, n - 1)));
        return a;
    }
    if (s < 0) {
        PQSeries a = jacobi_a_dilated(n, -s, q_order, p_window);
        return (n % 2 == 0) ? a : -a;
    }
    return dilate(jacobi_a_fourier(n, q_order, p_window), 1, s);
}

ZSeries jacobi_a_taylor(int n, int q_order, int z_order) {
    if (n < 1) throw std::domain_error("jacobi_a_taylor: index must be >= 1");
    ZSeries a(q_order, z_order);
    if (n == 1) a.add_term(-1, 0, Rational(1));
    Rational mfact(1);
    for (int m = 0; m < n - 1 && m <= z_order; ++m) {
        if (m > 0) mfact *= Rational(m);
        PQSeries g = eisenstein(n - m, q_order, /*zero_for_odd=*/true);
        for (int i = 0; i < m; ++i) g = derive_q(g);
        for (const auto& [d, layer] : g.coeffs())
            for (const auto& [dp, c] : layer)
                a.add_term(m, d, Rational(-2) / mfact * c.as_rational());
    }
    for (int g2 = 1; 2 * g2 - 2 + n <= z_order; ++g2) {
        int e = 2 * g2 - 2 + n;
        Rational efact(factorial(e));
        PQSeries g = eisenstein(2 * g2, q_order);
        for (int i = 0; i < n - 1; ++i) g = derive_q(g);
        for (const auto& [d, layer] : g.coeffs())
            for (const auto& [dp, c] : layer)
                a.add_term(e, d, Rational(-2) / efact * c.as_rational());
    }
    return a;
}

// ---- quasi-Jacobi fitting -------------------------------------------------

std::string QJacGenerator::name() const {
    std::ostringstream os;
    if (kind == A) {
        os << "A_" << index;
        if (dilation != 1) os << "(p^" << dilation << ")";
    } else {
        os << "G_" << index;
    }
    return os.str();
}

int QJacMonomial::weight() const {
    int w = 0;
    for (const auto& [g, e] : powers) w += g.weight() * e;
    return w;
}

std::string QJacMonomial::name() const {
    if (powers.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [g, e] : powers) {
        if (!first) os << "*";
        first = false;
        os << g.name();
        if (e > 1) os << "^" << e;
    }
    return os.str();
}

QJacMonomialBasis QJacMonomialBasis::build(int weight_bound, int dilation_bound) {
    if (dilation_bound < 1)
        throw std::invalid_argument("QJacMonomialBasis: dilation_bound must be >= 1");
    QJacMonomialBasis b;
    b.weight_bound = weight_bound;
    b.dilation_bound = dilation_bound;

    std::vector<QJacGenerator> gens;
    for (int n = 1; n <= 3; ++n)
        for (int s = 1; s <= dilation_bound; ++s)
            gens.push_back({QJacGenerator::A, n, s});
    gens.push_back({QJacGenerator::G, 2, 1});
    gens.push_back({QJacGenerator::G, 4, 1});

    // Exponent vectors with sum_i e_i * weight_i <= weight_bound, enumerated
    // recursively; sorted afterwards into graded-lex order.
    std::vector<QJacMonomial> out;
    std::vector<int> exps(gens.size(), 0);
    auto rec = [&](auto&& self, size_t i, int wleft) -> void {
        if (i == gens.size()) {
            QJacMonomial m;
            for (size_t j = 0; j < gens.size(); ++j)
                if (exps[j] > 0) m.powers.push_back({gens[j], exps[j]});
            out.push_back(std::move(m));
            return;
        }
        for (int e = 0; e * gens[i].weight() <= wleft; ++e) {
            exps[i] = e;
            self(self, i + 1, wleft - e * gens[i].weight());
        }
        exps[i] = 0;
    };
    rec(rec, 0, weight_bound);

    auto expvec = [&](const QJacMonomial& m) {
        std::vector<int> v(gens.size(), 0);
        for (const auto& [g, e] : m.powers) {
            for (size_t j = 0; j < gens.size(); ++j)
                if (gens[j] == g) { v[j] = e; break; }
        }
        return v;
    };
    std::sort(out.begin(), out.end(), [&](const QJacMonomial& x, const QJacMonomial& y) {
        if (x.weight() != y.weight()) return x.weight() < y.weight();
        return expvec(x) < expvec(y);
    });
    b.monomials = std::move(out);
    return b;
}

PQSeries qjac_monomial_series(const QJacMonomial& m, int q_order, int p_window) {
    // Slack: dilated A-generators reach p-exponent -s*d at q^d, so products
    // computed with cutoff 2*p_window + 2*S*q_order keep every coefficient
    // within the final window exact.
    int max_s = 1;
    for (const auto& [g, e] : m.powers)
        if (g.kind == QJacGenerator::A) max_s = std::max(max_s, g.dilation);
    const int internal_window = p_window + max_s * q_order;
    PQSeries r = PQSeries::constant(q_order, TScalar(1));
    for (const auto& [g, e] : m.powers) {
        PQSeries gs = (g.kind == QJacGenerator::A)
                          ? jacobi_a_dilated(g.index, g.dilation, q_order, internal_window)
                          : eisenstein(g.index, q_order);
        for (int i = 0; i < e; ++i)
            r = truncate_p_above(r * gs, 2 * internal_window);
    }
    return truncate_p_above(r, 2 * p_window);
}

std::string QJacFitResult::describe(const QJacMonomialBasis& basis) const {
    std::ostringstream os;
    switch (status) {
        case QJacFitStatus::Unique: os << "exact fit (unique)"; break;
        case QJacFitStatus::Underdetermined:
            os << "exact fit (underdetermined window: least-support representative)";
            break;
        case QJacFitStatus::NoSolution: os << "no solution on this window"; break;
    }
    if (status != QJacFitStatus::NoSolution) {
        os << ": ";
        bool first = true;
        for (const auto& [i, c] : coeffs) {
            if (!first) os << " + ";
            first = false;
            os << "(" << c.str() << ")*" << basis.monomials[i].name();
        }
        if (first) os << "0";
    }
    return os.str();
}

QJacFitResult qjac_fit(const PQSeries& target, const QJacMonomialBasis& basis,
                       int p_window) {
    if (target.has_half_integer_exponents())
        throw std::domain_error("qjac_fit: target has half-integer p-exponents");
    const int Q = target.q_order();
    std::vector<PQSeries> cols;
    cols.reserve(basis.monomials.size());
    for (const auto& m : basis.monomials)
        cols.push_back(qjac_monomial_series(m, Q, p_window));

    // Equation rows: the union of coefficient supports inside the window.
    std::vector<std::pair<int, int>> rows;
    {
        std::map<std::pair<int, int>, bool> seen;
        auto collect = [&](const PQSeries& s) {
            for (const auto& [d, layer] : s.coeffs())
                for (const auto& [dp, c] : layer)
                    if (std::abs(dp) <= 2 * p_window) seen[{d, dp}] = true;
        };
        collect(target);
        for (const auto& c : cols) collect(c);
        for (const auto& [k, v] : seen) rows.push_back(k);
    }

    Matrix<Rational> a(rows.size(), std::vector<Rational>(cols.size(), Rational(0)));
    std::vector<Rational> b(rows.size(), Rational(0));
    for (size_t i = 0; i < rows.size(); ++i) {
        auto [d, dp] = rows[i];
        for (size_t j = 0; j < cols.size(); ++j)
            a[i][j] = cols[j].coeff(d, dp).as_rational();
        b[i] = target.coeff(d, dp).as_rational();
    }

    QJacFitResult res;
    res.equations = rows.size();
    auto sol = solve_least_support(a, b);
    if (sol.status == LinSolveStatus::Inconsistent) {
        res.status = QJacFitStatus::NoSolution;
        return res;
    }
    res.status = (sol.status == LinSolveStatus::Unique) ? QJacFitStatus::Unique
                                                        : QJacFitStatus::Underdetermined;
    for (size_t j = 0; j < sol.solution.size(); ++j)
        if (!sol.solution[j].is_zero()) res.coeffs[j] = sol.solution[j];

    // Residual check of the combination against the target on the window.
    PQSeries combo(Q);
    for (const auto& [j, c] : res.coeffs) combo = combo + TScalar(c) * cols[j];
    if (!equal_on_window(combo, target, Q, 2 * p_window))
        throw std::logic_error("qjac_fit: residual check failed");
    return res;
}

}  // namespace hilbq
