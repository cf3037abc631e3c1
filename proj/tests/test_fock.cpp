#include <doctest.h>

#include "hilbq/fock.hpp"
#include "hilbq/verify.hpp"

using namespace hilbq;

namespace {

FockVector q_apply(const SurfaceModel& s, int k, const char* cls, const FockVector& v) {
    return nakajima_apply(s, k, s.cls(cls), v);
}

}  // namespace

TEST_CASE("fock basis counts") {
    SurfaceModel p1 = builtin_surface("p1xe");
    CHECK(fock_basis(p1, 0).size() == 1);
    CHECK(fock_basis(p1, 1).size() == 8);
    // n=2 over 4 even + 4 odd classes: 8 + (10 + 16 + 6) = 40
    CHECK(fock_basis(p1, 2).size() == 40);

    SurfaceModel exc = builtin_surface("exc");
    // n=2 over 2 even + 2 odd: q_2: 4; q_1 q_1: Sym^2(even) 3 + mixed 4 + ext^2(odd) 1
    CHECK(fock_basis(exc, 2).size() == 12);
    // character of the free super-boson: prod (1-x^k)^{-2} (1+x^k)^2
    // dimensions 1, 4, 12, 32, ...
    CHECK(fock_basis(exc, 3).size() == 32);
}

TEST_CASE("nakajima relations on the vacuum side") {
    SurfaceModel s = builtin_surface("p1xe");
    FockVector v1 = q_apply(s, 1, "one", FockVector::vacuum());
    // q_{-1}(p) q_1(1) v = -(p,1) v = -v
    FockVector got = q_apply(s, -1, "point", v1);
    CHECK(got == TScalar(-1) * FockVector::vacuum());
    // q_0 = 0
    CHECK(nakajima_apply(s, 0, s.cls("point"), v1).is_zero());
    // repeated odd creation squares to zero
    FockVector a1 = q_apply(s, 1, "a", FockVector::vacuum());
    CHECK(q_apply(s, 1, "a", a1).is_zero());
}

TEST_CASE("pairing values") {
    SurfaceModel s = builtin_surface("p1xe");
    CHECK(fock_pairing(s, FockVector::vacuum(), FockVector::vacuum()) == TScalar(1));
    FockVector qp = q_apply(s, 1, "point", FockVector::vacuum());
    FockVector q1 = q_apply(s, 1, "one", FockVector::vacuum());
    CHECK(fock_pairing(s, qp, q1) == TScalar(1));
    FockVector q2one = q_apply(s, 2, "one", FockVector::vacuum());
    FockVector q2p = q_apply(s, 2, "point", FockVector::vacuum());
    CHECK(fock_pairing(s, q2one, q2p) == TScalar(-2));
    CHECK_THROWS(fock_pairing(s, q1, q2p));  // level mismatch
}

TEST_CASE("partition classes") {
    SurfaceModel s = builtin_surface("p1xe");
    FockVector w = partition_class(s, {{2, s.cls("sigma")}});
    FockVector direct = TScalar(Rational(1, 2)) *
                        q_apply(s, 2, "sigma", FockVector::vacuum());
    CHECK(w == direct);
    CHECK_THROWS(partition_class(s, {{0, s.cls("sigma")}}));

    // the exceptional-curve class A = q_2(p) q_1(p)^{n-2} v at n = 2
    FockVector a = q_apply(s, 2, "point", FockVector::vacuum());
    CHECK(partition_class(s, {{2, s.cls("point")}}) == TScalar(Rational(1, 2)) * a);
}

TEST_CASE("degrees") {
    SurfaceModel s = builtin_surface("p1xe");
    FockVector unit3 = hilb_unit(s, 3);
    CHECK(complex_degree2(s, unit3) == 0);
    FockVector q2one = q_apply(s, 2, "one", FockVector::vacuum());
    CHECK(complex_degree2(s, q2one) == 2);  // deg_C = 1
    FockVector pts = partition_class(s, {{1, s.cls("point")}, {1, s.cls("point")},
                                         {1, s.cls("point")}});
    CHECK(complex_degree2(s, pts) == 12);  // the point class of S^[n]: deg_C = 2n
    FockVector mixed = unit3 + pts;
    CHECK_THROWS(complex_degree2(s, mixed));
}

TEST_CASE("monomial rendering") {
    SurfaceModel s = builtin_surface("p1xe");
    FockVector v = q_apply(s, 1, "sigma", q_apply(s, 3, "f", FockVector::vacuum()));
    REQUIRE(v.terms().size() == 1);
    CHECK(v.terms().begin()->first.render(s) == "q3(f) q1(sigma)");
}

TEST_CASE("heisenberg property suite on both surfaces") {
    VerifyConfig cfg;
    cfg.n_max = 3;  // exhaustive level-4 run lives in the acceptance suite
    for (const char* name : {"p1xe", "exc"}) {
        CheckReport rep = verify_heisenberg(builtin_surface(name), cfg);
        for (const auto& l : rep.lines) {
            INFO(name << ": " << l.name << " " << l.detail);
            CHECK(l.pass);
        }
    }
}
