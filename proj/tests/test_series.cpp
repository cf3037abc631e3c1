#include <doctest.h>

#include <random>

#include "hilbq/pqseries.hpp"
#include "hilbq/zseries.hpp"

using namespace hilbq;

namespace {

PQSeries p_pow(int q_order, int dp, long c = 1) {
    return PQSeries::monomial(q_order, 0, dp, TScalar(c));
}

PQSeries rnd_series(std::mt19937& rng, int q_order, bool halves = false) {
    std::uniform_int_distribution<int> d(0, q_order), dp(-4, 4), c(-5, 5);
    PQSeries s(q_order);
    for (int i = 0; i < 6; ++i) {
        int e = dp(rng);
        s.add_term(d(rng), halves ? e : 2 * e, TScalar(c(rng)));
    }
    return s;
}

}  // namespace

TEST_CASE("telescoping product") {
    const int N = 12;
    PQSeries geom(0);
    for (int k = 0; k <= N; ++k) geom.add_term(0, 2 * k, TScalar(1));
    PQSeries one_minus_p = PQSeries::constant(0, TScalar(1)) - p_pow(0, 2);
    PQSeries prod = one_minus_p * geom;
    PQSeries want = PQSeries::constant(0, TScalar(1)) - p_pow(0, 2 * (N + 1));
    CHECK(prod == want);
}

TEST_CASE("q truncation discards high degrees") {
    PQSeries q = PQSeries::monomial(1, 1, 0, TScalar(1));
    CHECK((q * q).is_zero());
    PQSeries q4 = PQSeries::monomial(4, 1, 0, TScalar(1));
    CHECK(!(q4 * q4).is_zero());
}

TEST_CASE("half-integer exponents combine to integers") {
    // (p^{1/2} - p^{-1/2})^2 = p - 2 + p^{-1}
    PQSeries s(0);
    s.add_term(0, 1, TScalar(1));
    s.add_term(0, -1, TScalar(-1));
    PQSeries sq = s * s;
    CHECK(sq.coeff(0, 2) == TScalar(1));
    CHECK(sq.coeff(0, 0) == TScalar(-2));
    CHECK(sq.coeff(0, -2) == TScalar(1));
    CHECK_FALSE(sq.has_half_integer_exponents());
}

TEST_CASE("mixed truncation orders are rejected") {
    PQSeries a(3), b(4);
    CHECK_THROWS_AS(a + b, SeriesOrderMismatch);
    CHECK_THROWS_AS(a * b, SeriesOrderMismatch);
}

TEST_CASE("log of 1-p is the Mercator series") {
    PQSeries a = PQSeries::constant(6, TScalar(1)) - p_pow(6, 2);
    PQSeries l = series_log(a, 4);
    for (int k = 1; k <= 4; ++k) CHECK(l.coeff(0, 2 * k) == TScalar(Rational(-1, k)));
    CHECK(l.coeff(0, 10).is_zero());
}

TEST_CASE("log is additive on products") {
    PQSeries one = PQSeries::constant(5, TScalar(1));
    PQSeries q = PQSeries::monomial(5, 1, 0, TScalar(1));
    PQSeries pq = PQSeries::monomial(5, 1, 2, TScalar(1));
    PQSeries lhs = series_log((one - q) * (one - pq));
    PQSeries rhs = series_log(one - q) + series_log(one - pq);
    CHECK(lhs == rhs);
}

TEST_CASE("log difference feeding the extremal check") {
    // 8(log(1-p) - log(1-p^2)): coefficient -8/k at odd k, +8/k at even k
    const int W = 12;
    PQSeries one = PQSeries::constant(0, TScalar(1));
    PQSeries l = TScalar(8) * (series_log(one - p_pow(0, 2), W) -
                               series_log(one - p_pow(0, 4), W));
    for (int k = 1; k <= W; ++k) {
        Rational want = (k % 2 == 1) ? Rational(-8, k) : Rational(8, k);
        CHECK(l.coeff(0, 2 * k) == TScalar(want));
    }
}

TEST_CASE("exp inverts log and reproduces the Euler product") {
    PQSeries one = PQSeries::constant(5, TScalar(1));
    PQSeries q = PQSeries::monomial(5, 1, 0, TScalar(1));
    CHECK(series_exp(PQSeries(5)) == one);
    CHECK(series_exp(series_log(one - q)) == one - q);

    // exp(-2 sum sigma(d)/d q^d) = prod (1-q^m)^2: 1 - 2q - q^2 + 2q^3 + q^4 + 2q^5 ...
    const int Q = 6;
    PQSeries arg(Q);
    for (int m = 1; m <= Q; ++m)
        for (int j = 1; m * j <= Q; ++j) arg.add_term(m * j, 0, Rational(-2, j));
    PQSeries got = series_exp(arg);
    long want[] = {1, -2, -1, 2, 1, 2, -2};
    for (int d = 0; d <= Q; ++d) CHECK(got.coeff(d, 0) == TScalar(want[d]));
}

TEST_CASE("derivations") {
    PQSeries s = PQSeries::monomial(4, 3, 2, TScalar(1));  // q^3 p
    CHECK(derive_q(s) == TScalar(3) * s);
    PQSeries h = PQSeries::monomial(0, 0, 1, TScalar(1));  // p^{1/2}
    CHECK(derive_p(h) == TScalar(Rational(1, 2)) * h);
}

TEST_CASE("Leibniz rule on random series") {
    std::mt19937 rng(99);
    for (int trial = 0; trial < 30; ++trial) {
        PQSeries a = rnd_series(rng, 4), b = rnd_series(rng, 4);
        CHECK(derive_q(a * b) == derive_q(a) * b + a * derive_q(b));
        CHECK(derive_p(a * b) == derive_p(a) * b + a * derive_p(b));
    }
}

TEST_CASE("dilation") {
    PQSeries anti(3);
    anti.add_term(0, 2, TScalar(1));
    anti.add_term(0, -2, TScalar(-1));
    PQSeries flip = dilate(anti, 1, -1);
    CHECK(flip == -anti);

    PQSeries q = PQSeries::monomial(6, 1, 0, TScalar(1));
    PQSeries q3 = dilate(q, 3, 1);
    CHECK(q3.coeff(3, 0) == TScalar(1));
    CHECK(dilate(q, 7, 1).is_zero());

    // A_2's q^1 layer -(p + p^{-1}) dilated to p^2
    PQSeries a2q1(1);
    a2q1.add_term(1, 2, TScalar(-1));
    a2q1.add_term(1, -2, TScalar(-1));
    PQSeries d2 = dilate(a2q1, 1, 2);
    CHECK(d2.coeff(1, 4) == TScalar(-1));
    CHECK(d2.coeff(1, -4) == TScalar(-1));
}

TEST_CASE("dilation is a ring morphism") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        PQSeries a = rnd_series(rng, 6), b = rnd_series(rng, 6);
        // q-dilation interacts with truncation, so check the pure-p case plus
        // a joint case whose products stay inside the window
        CHECK(dilate(a * b, 1, 2) == dilate(a, 1, 2) * dilate(b, 1, 2));
        CHECK(dilate(a * b, 1, -3) == dilate(a, 1, -3) * dilate(b, 1, -3));
    }
}

TEST_CASE("z-expansion of half powers") {
    // p^{1/2} - p^{-1/2} = 2 sinh(z/2) = z + z^3/24 + ...
    PQSeries s(2);
    s.add_term(0, 1, TScalar(1));
    s.add_term(0, -1, TScalar(-1));
    ZSeries z = series_to_z(s, 5);
    CHECK(z.coeff(0, 0) == Rational(0));
    CHECK(z.coeff(1, 0) == Rational(1));
    CHECK(z.coeff(2, 0) == Rational(0));
    CHECK(z.coeff(3, 0) == Rational(1, 24));
    CHECK(z.pole_order() == 0);

    ZSeries one = series_to_z(PQSeries::constant(2, TScalar(1)), 5);
    CHECK(one.coeff(0, 0) == Rational(1));
    CHECK(one.coeff(1, 0) == Rational(0));

    // -(p - p^{-1}) = -2 sinh(z) = -2z - z^3/3 - ...
    PQSeries a1q1(2);
    a1q1.add_term(0, 2, TScalar(-1));
    a1q1.add_term(0, -2, TScalar(1));
    ZSeries za = series_to_z(a1q1, 5);
    CHECK(za.coeff(1, 0) == Rational(-2));
    CHECK(za.coeff(3, 0) == Rational(-1, 3));
    CHECK(za.coeff(5, 0) == Rational(-1, 60));
}

TEST_CASE("exp/log round trip with p-dependent layer") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 10; ++trial) {
        PQSeries f(3);
        std::uniform_int_distribution<int> dp(1, 3), d(1, 3), c(-3, 3);
        for (int i = 0; i < 3; ++i) f.add_term(0, 2 * dp(rng), TScalar(c(rng)));
        for (int i = 0; i < 3; ++i) f.add_term(d(rng), 2 * (dp(rng) - 2), TScalar(c(rng)));
        const int W = 10;
        PQSeries a = PQSeries::constant(3, TScalar(1)) + f;
        PQSeries back = series_exp(series_log(a, W + 3 * 2), W);
        CHECK(equal_on_window(back, a, 3, 2 * W));
    }
}
