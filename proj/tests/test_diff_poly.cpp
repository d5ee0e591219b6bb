#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/random_objects.hpp"
#include "tcsolve/diff_poly.hpp"
#include "tcsolve/errors.hpp"

using namespace tcsolve;

namespace {

RationalFunction Z() { return RationalFunction::z(); }
RationalFunction C(long v) { return RationalFunction(v); }
RationalFunction C(long p, long q) { return RationalFunction(GaussianRational(Rational(p, q))); }
ExpPoly E(long p, long q = 1) { return ExpPoly::exp(GaussianRational(Rational(p, q)) * PuiseuxPoly::z()); }
DiffPoly F(unsigned k = 0) { return DiffPoly::f(k); }
DiffPoly K(const RationalFunction& c) { return DiffPoly(c); }

DiffPoly random_diff_poly(std::mt19937& rng, unsigned max_power = 2) {
    DiffPoly p;
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int t = 0; t < terms; ++t) {
        PowerVector pv(1 + rng() % 3, 0);
        for (auto& e : pv) e = rng() % (max_power + 1);
        p += DiffPoly(testgen::nonzero_rf(rng, 1), pv);
    }
    return p;
}

ExpFraction random_f(std::mt19937& rng) {
    ExpPoly num = testgen::small_exp_poly(rng);
    if (rng() % 5 != 0) return num;
    return ExpFraction(num, E(1) - ExpPoly(testgen::nonzero_rf(rng, 0, false)));
}

/// Linear exponents and polynomial coefficients; keeps fraction arithmetic small.
ExpFraction light_f(std::mt19937& rng) {
    ExpPoly num;
    int terms = 1 + static_cast<int>(rng() % 2);
    for (int t = 0; t < terms; ++t) {
        long a = static_cast<long>(rng() % 5) - 2;
        num += ExpPoly(RationalFunction(testgen::nonzero_poly(rng, 1), Poly(1)), GaussianRational(a) * PuiseuxPoly::z());
    }
    if (rng() % 5 != 0) return num;
    return ExpFraction(num, E(1) - ExpPoly(testgen::small_scalar(rng) + GaussianRational(4)));
}

}  // namespace

TEST_CASE("dp_degree_weight examples") {
    DiffPoly p1 = K(C(-1, 2)) * F(2) + K(C(9, 2)) * F(1) - K(C(10)) * F();
    auto d1 = dp_degree_weight(p1);
    CHECK(d1.degree == 1);
    CHECK(d1.weight == 3);
    auto d2 = dp_degree_weight(K(C(-64)) * F() * F(2));
    CHECK(d2.degree == 2);
    CHECK(d2.weight == 4);
    auto d3 = dp_degree_weight(DiffPoly());
    CHECK(d3.degree == 0);
    CHECK(d3.weight == 0);
}

TEST_CASE("dp_total_derivative examples") {
    CHECK(dp_total_derivative(F() * F()) == K(C(2)) * F() * F(1));
    CHECK(dp_total_derivative(K(Z()) * F(1)) == F(1) + K(Z()) * F(2));
    for (unsigned n = 2; n <= 6; ++n) {
        long nl = n;
        DiffPoly expected = K(C(nl)) * F(2) * F().pow(n - 1) + K(C(nl * (nl - 1))) * F(1).pow(2) * F().pow(n - 2);
        CHECK(dp_total_derivative(F().pow(n), 2) == expected);
    }
}

TEST_CASE("dp_substitute examples") {
    ExpFraction f(E(2), E(1) - ExpPoly(1));
    DiffPoly p = F(1) - K(C(3)) * F();
    CHECK((f.pow(2) + dp_substitute(p, f) - ExpFraction(E(2))).is_zero());
    CHECK(dp_substitute(F(1), ExpPoly(Z())) == ExpPoly(1));
    ExpPoly g = E(1, 4) + E(-1, 4);
    DiffPoly q = K(C(-64)) * F() * F(2) + K(C(2));
    CHECK(g.pow(4) + dp_substitute(q, g) == E(1) + E(-1));
}

TEST_CASE("printing") {
    DiffPoly p = K(C(-1, 2)) * F(2) + K(C(9, 2)) * F(1) - K(C(10)) * F();
    CHECK(p.str() == "-(1/2)*D2(f) + (9/2)*D1(f) - 10*f");
    CHECK((K(C(-64)) * F() * F(2) + K(C(2))).str() == "-64*f*D2(f) + 2");
}

TEST_CASE("dp_build_phi examples") {
    TCEquation eq2(2, DiffPoly(), E(2) + E(-2), LinearOde{C(-4), C(0), C(0)});
    DiffPoly phi = dp_build_phi(eq2);
    CHECK(phi == K(C(-4)) * F() * F() + K(C(2)) * F(2) * F() + K(C(2)) * F(1) * F(1));
    CHECK(dp_substitute(phi, E(1)).is_zero());

    RationalFunction r0 = C(3) / Z() + C(6), r1 = -(C(1) / Z() + C(5));
    ExpPoly h = E(3) + (C(3) * (Z() + C(1))) * E(2);
    TCEquation eq3(3, K(C(-2) * (Z() + C(1)).pow(2)) * F(2) - K((Z() + C(1)).pow(2)) * F(), h, LinearOde{r0, r1, C(0)});
    DiffPoly expected = K(r0) * F() * F() + K(C(3) * r1) * F(1) * F() + K(C(3)) * F(2) * F() + K(C(6)) * F(1) * F(1);
    CHECK(dp_build_phi(eq3) == expected);

    TCEquation bare(2, DiffPoly(), E(2));
    CHECK_THROWS_AS(dp_build_phi(bare), Error);
    CHECK_THROWS_AS(TCEquation(2, DiffPoly(), E(2), LinearOde{C(-1), C(0), C(0)}), Error);
}

TEST_CASE("phi_j and Q agree on solutions") {
    struct Case {
        TCEquation eq;
        ExpFraction f;
    };
    ExpFraction sharp(E(2), E(1) - ExpPoly(1));
    ExpFraction n4 = ExpFraction(E(1)) + ExpFraction(ExpPoly(1), E(1) - ExpPoly(1));
    ExpPoly cc = E(1) + ExpPoly(Z() + C(1));
    std::vector<Case> cases{
        {TCEquation(2, F(1) - K(C(3)) * F(), E(2)).with_derived_ode(), sharp},
        {TCEquation(3, K(C(-1, 2)) * F(2) + K(C(9, 2)) * F(1) - K(C(10)) * F(), E(3) + C(3) * E(2)).with_derived_ode(),
         sharp},
        {TCEquation(3, K(C(-1, 2)) * F(2) + K(C(3, 2)) * F(1) - K(C(4)) * F() - K(C(3)), E(3)).with_derived_ode(), n4},
        {TCEquation(3, K(C(-2) * (Z() + C(1)).pow(2)) * F(2) - K((Z() + C(1)).pow(2)) * F(),
                    E(3) + (C(3) * (Z() + C(1))) * E(2))
             .with_derived_ode(),
         ExpFraction(cc)},
    };
    for (const auto& c : cases) {
        REQUIRE(c.eq.residual(c.f).is_zero());
        DiffPoly q = dp_build_q(c.eq);
        ExpFraction qv = dp_substitute(q, c.f);
        for (unsigned j = 1; j <= 3; ++j) {
            ExpFraction v = dp_evaluate(dp_phi_member(c.eq, j), c.f);
            ExpFraction lhs = j <= c.eq.n() ? v * c.f.pow(c.eq.n() - j) : v / c.f.pow(j - c.eq.n());
            CHECK(lhs == qv);
        }
    }
}

TEST_CASE("dp_build_psi_abc examples") {
    RationalFunction r0 = C(3) / Z() + C(6), r1 = -(C(1) / Z() + C(5));
    ExpPoly h = E(3) + (C(3) * (Z() + C(1))) * E(2);
    TCEquation eq(3, K(C(-2) * (Z() + C(1)).pow(2)) * F(2) - K((Z() + C(1)).pow(2)) * F(), h, LinearOde{r0, r1, C(0)});
    ExpFraction f(E(1) + ExpPoly(Z() + C(1)));
    ExpFraction phi = dp_substitute(dp_build_phi(eq), f);
    REQUIRE_FALSE(phi.is_zero());
    auto abc = dp_build_psi_abc(eq, phi, f);
    CHECK(abc.consistent);
    CHECK(abc.c == ExpFraction(6));
    CHECK((abc.b * abc.b - ExpFraction(4) * abc.a * abc.c).is_zero());

    TCEquation eq2(2, DiffPoly(), E(2) + E(-2), LinearOde{C(-4), C(0), C(0)});
    ExpFraction g(E(1) + ExpPoly(1));
    auto abc2 = dp_build_psi_abc(eq2, ExpFraction(7), g);
    CHECK(abc2.b.is_zero());
    CHECK_FALSE(abc2.consistent);
    CHECK_THROWS_AS(dp_build_psi_abc(eq2, ExpFraction(), g), Error);
}

TEST_CASE("dp_liao_check examples") {
    CHECK(dp_liao_check(C(1), C(0), C(1), C(4)));
    // Direct expansion: 1*1*(1/z) + 1 = 1/z + 1.
    CHECK_FALSE(dp_liao_check(C(0), C(1), C(1), Z()));
    CHECK(dp_liao_check(C(3), C(0), C(-2), C(5, 7)));
    CHECK_THROWS_AS(dp_liao_check(C(1), C(1), C(0), C(1)), Error);
}

TEST_CASE("property: substitution is a homomorphism") {
    std::mt19937 rng(3001);
    for (int it = 0; it < 1000; ++it) {
        DiffPoly p1 = random_diff_poly(rng, 1), p2 = random_diff_poly(rng, 1);
        ExpPoly f = testgen::small_exp_poly(rng);
        REQUIRE(dp_substitute(p1 + p2, f) == dp_substitute(p1, f) + dp_substitute(p2, f));
        REQUIRE(dp_substitute(p1 * p2, f) == dp_substitute(p1, f) * dp_substitute(p2, f));
    }
}

TEST_CASE("property: chain compatibility") {
    std::mt19937 rng(3002);
    for (int it = 0; it < 1000; ++it) {
        ExpFraction f = random_f(rng);
        DiffPoly p = random_diff_poly(rng, f.is_exp_poly() ? 2 : 1);
        REQUIRE(dp_substitute(p, f).derivative() == dp_substitute(dp_total_derivative(p), f));
    }
}

TEST_CASE("property: degree and weight laws") {
    std::mt19937 rng(3003);
    for (int it = 0; it < 1000; ++it) {
        PowerVector a(1 + rng() % 4), b(1 + rng() % 4);
        for (auto& e : a) e = rng() % 3;
        for (auto& e : b) e = rng() % 3;
        DiffPoly ma(C(1), a), mb(C(1), b);
        auto da = dp_degree_weight(ma), db = dp_degree_weight(mb), dab = dp_degree_weight(ma * mb);
        REQUIRE(dab.degree == da.degree + db.degree);
        REQUIRE(dab.weight == da.weight + db.weight);
        if (da.degree == 0) continue;
        DiffPoly dma = dp_total_derivative(ma);
        for (const auto& [pv, c] : dma.terms()) {
            auto d = monomial_degree_weight(pv);
            REQUIRE(d.degree == da.degree);
            REQUIRE(d.weight == da.weight + 1);
        }
    }
}

TEST_CASE("property: pipeline identity") {
    std::mt19937 rng(3004);
    int checked = 0;
    for (int it = 0; it < 1000; ++it) {
        unsigned n = 2 + rng() % 3;
        LinearOde ode{testgen::small_rf(rng, 1, false), testgen::small_rf(rng, 1, false), C(0)};
        TCEquation eq(n, DiffPoly(), ExpPoly(), ode);
        ExpFraction f = light_f(rng);
        if (f.is_zero()) continue;
        ExpFraction phi = dp_substitute(dp_build_phi(eq), f);
        if (phi.is_zero()) continue;
        auto abc = dp_build_psi_abc(eq, phi, f);
        ExpFraction f1 = f.derivative();
        REQUIRE(abc.consistent);
        REQUIRE(abc.a * f * f + abc.b * f1 * f + abc.c * f1 * f1 == phi);
        ++checked;
    }
    CHECK(checked > 900);
}
