#include <doctest.h>

#include "hilbq/modforms.hpp"

using namespace hilbq;

TEST_CASE("bernoulli convention") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(0));  // the one departure from z/(e^z-1)
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(3) == Rational(0));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("eisenstein series") {
    PQSeries g2 = eisenstein(2, 4);
    CHECK(g2.coeff(0, 0) == TScalar(Rational(-1, 24)));
    CHECK(g2.coeff(1, 0) == TScalar(1));
    CHECK(g2.coeff(2, 0) == TScalar(3));
    CHECK(g2.coeff(3, 0) == TScalar(4));
    CHECK(g2.coeff(4, 0) == TScalar(7));

    PQSeries g4 = eisenstein(4, 2);
    CHECK(g4.coeff(0, 0) == TScalar(Rational(1, 240)));
    CHECK(g4.coeff(1, 0) == TScalar(1));
    CHECK(g4.coeff(2, 0) == TScalar(9));

    CHECK_THROWS(eisenstein(3, 4));
    CHECK(eisenstein(3, 4, true).is_zero());

    // q d/dq G_2 has q^2-coefficient 2 sigma_1(2) = 6
    CHECK(derive_q(eisenstein(2, 4)).coeff(2, 0) == TScalar(6));
}

TEST_CASE("jacobi A_n Fourier coefficients") {
    // A_2 constant term B_2/2 = 1/12
    CHECK(jacobi_a_fourier(2, 3, 8).coeff(0, 0) == TScalar(Rational(1, 12)));
    // A_1's q^1 layer is -(p - p^{-1})
    PQSeries a1 = jacobi_a_fourier(1, 3, 8);
    CHECK(a1.coeff(1, 2) == TScalar(-1));
    CHECK(a1.coeff(1, -2) == TScalar(1));
    // A_1 singular part ascending: -1/2 - p - p^2 - ...
    CHECK(a1.coeff(0, 0) == TScalar(Rational(-1, 2)));
    CHECK(a1.coeff(0, 2) == TScalar(-1));
    CHECK(a1.coeff(0, 16) == TScalar(-1));
    CHECK(a1.coeff(0, 18).is_zero());  // window 8
    // A_3 q^2 layer: -(p^2 - p^{-2}) - 4(p - p^{-1})
    PQSeries a3 = jacobi_a_fourier(3, 3, 8);
    CHECK(a3.coeff(2, 4) == TScalar(-1));
    CHECK(a3.coeff(2, -4) == TScalar(1));
    CHECK(a3.coeff(2, 2) == TScalar(-4));
    CHECK(a3.coeff(2, -2) == TScalar(4));
    CHECK_THROWS(jacobi_a_fourier(0, 3, 8));
}

TEST_CASE("jacobi A_n Taylor coefficients") {
    ZSeries a1 = jacobi_a_taylor(1, 4, 5);
    CHECK(a1.coeff(-1, 0) == Rational(1));
    CHECK(a1.pole_order() == 1);
    // z^1-coefficient is -2 G_2 as a q-series
    PQSeries g2 = eisenstein(2, 4);
    for (int d = 0; d <= 4; ++d)
        CHECK(a1.coeff(1, d) == Rational(-2) * g2.coeff(d, 0).as_rational());

    ZSeries a2 = jacobi_a_taylor(2, 4, 5);
    CHECK(a2.pole_order() == 0);
    for (int d = 0; d <= 4; ++d)
        CHECK(a2.coeff(0, d) == Rational(-2) * g2.coeff(d, 0).as_rational());
}

TEST_CASE("A_r at p^0 is the z->0 limit") {
    PQSeries a2 = jacobi_a_dilated(2, 0, 4, 8);
    CHECK(a2.coeff(0, 0) == TScalar(Rational(1, 12)));
    CHECK(a2.coeff(1, 0) == TScalar(-2));       // -2 sigma_1(1)
    CHECK(a2.coeff(2, 0) == TScalar(-6));       // -2 sigma_1(2)
    CHECK(jacobi_a_dilated(3, 0, 4, 8).is_zero());
    CHECK_THROWS(jacobi_a_dilated(1, 0, 4, 8));
    // negative dilation via parity
    PQSeries a2m = jacobi_a_dilated(2, -1, 4, 8);
    CHECK(a2m == jacobi_a_regular(2, 4));
    PQSeries a3m = jacobi_a_dilated(3, -1, 4, 8);
    CHECK(a3m == -jacobi_a_regular(3, 4));
}

TEST_CASE("theta product expansion") {
    PQSeries th = theta_series(3);
    CHECK(th.coeff(0, 1) == TScalar(1));
    CHECK(th.coeff(0, -1) == TScalar(-1));
    CHECK(th.has_half_integer_exponents());
}

TEST_CASE("qjac monomial basis enumeration") {
    QJacMonomialBasis b = QJacMonomialBasis::build(2, 1);
    // weight 0: 1; weight 1: A_1; weight 2: A_1^2, A_2, G_2
    REQUIRE(b.monomials.size() == 5);
    CHECK(b.monomials[0].name() == "1");
    CHECK(b.monomials[1].name() == "A_1");
    CHECK(b.monomials[1].weight() == 1);
    bool has_g2 = false, has_a2 = false, has_a1sq = false;
    for (const auto& m : b.monomials) {
        if (m.name() == "G_2") has_g2 = true;
        if (m.name() == "A_2") has_a2 = true;
        if (m.name() == "A_1^2") has_a1sq = true;
    }
    CHECK(has_g2);
    CHECK(has_a2);
    CHECK(has_a1sq);

    QJacMonomialBasis b2 = QJacMonomialBasis::build(2, 2);
    // adds the dilated A_1(p^2), A_1 A_1(p^2), A_1(p^2)^2, A_2(p^2)
    bool has_dil = false;
    for (const auto& m : b2.monomials) has_dil = has_dil || m.name() == "A_1(p^2)";
    CHECK(has_dil);
    CHECK(b2.monomials.size() > b.monomials.size());
}

TEST_CASE("qjac_fit recovers eisenstein combinations") {
    const int Q = 6, W = 10;
    QJacMonomialBasis basis = QJacMonomialBasis::build(4, 1);
    // target G_2^2 + 3 G_4
    PQSeries target = eisenstein(2, Q) * eisenstein(2, Q) +
                      TScalar(3) * eisenstein(4, Q);
    auto fit = qjac_fit(target, basis, W);
    REQUIRE(fit.status != QJacFitStatus::NoSolution);
    Rational g2g2(0), g4(0);
    for (const auto& [i, c] : fit.coeffs) {
        if (basis.monomials[i].name() == "G_2^2") g2g2 = c;
        if (basis.monomials[i].name() == "G_4") g4 = c;
    }
    CHECK(g2g2 == Rational(1));
    CHECK(g4 == Rational(3));
}

TEST_CASE("qjac_fit flags garbage targets") {
    const int Q = 6, W = 10;
    QJacMonomialBasis basis = QJacMonomialBasis::build(2, 1);
    // q^5 alone is not a low-weight quasi-Jacobi form on this window
    PQSeries target = PQSeries::monomial(Q, 5, 0, TScalar(1));
    auto fit = qjac_fit(target, basis, W);
    CHECK(fit.status == QJacFitStatus::NoSolution);
    // half-integer targets are rejected outright
    PQSeries half = PQSeries::monomial(Q, 0, 1, TScalar(1));
    CHECK_THROWS(qjac_fit(half, basis, W));
}
