#include <doctest.h>

#include "hilbq/json_io.hpp"
#include "hilbq/modforms.hpp"
#include "hilbq/partition_expr.hpp"

using namespace hilbq;

TEST_CASE("rational and tscalar json round trip") {
    Rational r(-22, 7);
    CHECK(rational_from_json(rational_to_json(r)) == r);
    TScalar t = TScalar::t_power(-2, Rational(3, 5)) + TScalar(Rational(1, 7));
    CHECK(tscalar_from_json(tscalar_to_json(t)) == t);
}

TEST_CASE("series json round trips bit-exactly") {
    PQSeries s = theta_series(3) * jacobi_a_fourier(1, 3, 6);
    Json j = series_to_json(s);
    PQSeries back = series_from_json(j);
    CHECK(back == s);
    CHECK(series_to_json(back) == j);
    // deterministic: exponents ascend in the emitted arrays
    for (const auto& term : j["terms"]) {
        int prev = INT_MIN;
        for (const auto& e : term.at(1)) {
            CHECK(e.at(0).get<int>() > prev);
            prev = e.at(0).get<int>();
        }
    }
}

TEST_CASE("operator json shape") {
    SurfaceModel s = builtin_surface("p1xe");
    OperatorSeries o(s, 1, 2);
    o.add_term(0, 1, 1, 2, TScalar(Rational(3, 4)));
    Json j = operator_to_json(o, s);
    CHECK(j["level"] == 1);
    CHECK(j["basis"].size() == 8);
    CHECK(j["rows"].size() == 1);
    CHECK(j["rows"][0]["row"] == 0);
}

TEST_CASE("partition expression grammar") {
    SurfaceModel s = builtin_surface("p1xe");
    // (2,sigma) is the normalized weighted partition
    FockVector v = parse_partition_expr(s, 2, "(2,sigma)");
    FockVector want = TScalar(Rational(1, 2)) *
                      nakajima_apply(s, 2, s.cls("sigma"), FockVector::vacuum());
    CHECK(v == want);

    FockVector w = parse_partition_expr(s, 2, "(1,1)(1,p)");
    FockVector want2 = nakajima_apply(
        s, 1, s.cls("1"), nakajima_apply(s, 1, s.cls("p"), FockVector::vacuum()));
    CHECK(w == want2);

    // macros
    CHECK(parse_partition_expr(s, 2, "unit") == hilb_unit(s, 2));
    FockVector dW = parse_partition_expr(s, 2, "cup(delta, W)");
    FockVector m2 = TScalar(-2) * nakajima_apply(s, 2, s.cls("sigma"), FockVector::vacuum());
    CHECK(dW == m2);
    CHECK(parse_partition_expr(s, 2, "D(sigma)") ==
          parse_partition_expr(s, 2, "(1,sigma)(1,1)"));

    // errors carry positions
    CHECK_THROWS_AS(parse_partition_expr(s, 2, "(0,sigma)"), ParseError);
    CHECK_THROWS_AS(parse_partition_expr(s, 2, "(1,zeta)(1,1)"), ParseError);
    CHECK_THROWS_AS(parse_partition_expr(s, 2, "(1,1)"), ParseError);  // level 1 != 2
    CHECK_THROWS_AS(parse_partition_expr(s, 3, "W"), ParseError);
    CHECK_THROWS_AS(parse_partition_expr(s, 2, "(1,1)(1,p) junk"), ParseError);
}

TEST_CASE("fit report json") {
    QJacMonomialBasis basis = QJacMonomialBasis::build(2, 1);
    PQSeries a1 = jacobi_a_fourier(1, 5, 8);
    auto fit = qjac_fit(a1, basis, 8);
    Json j = fit_to_json(fit, basis);
    CHECK(j["status"] == "exact_fit");
    REQUIRE(j["terms"].size() == 1);
    CHECK(j["terms"][0]["monomial"] == "A_1");
    CHECK(rational_from_json(j["terms"][0]["coeff"]) == Rational(1));
}
