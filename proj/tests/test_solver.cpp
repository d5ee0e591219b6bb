#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support/golden.hpp"
#include "support/random_objects.hpp"
#include "tcsolve/errors.hpp"
#include "tcsolve/solver.hpp"

using namespace tcsolve;
using namespace golden;

namespace {

bool has_label(const SolutionReport& r, const std::string& label) {
    for (const auto& b : r.branch_trace)
        if (b.label == label) return true;
    return false;
}

/// Witness check: x is a nonzero scalar multiple of w.
bool scalar_multiple(const ExpPoly& x, const ExpPoly& w) {
    if (x.size() != w.size() || x.is_zero()) return false;
    auto [e, c] = w.leading_term();
    RationalFunction k = x.coeff_of(e) / c;
    return k.is_constant() && ExpPoly(k) * w == x;
}

}  // namespace

bool printed_inconsistent(const std::string& name) {
    return name == "rational h, n=2" || name == "half-order k=4" || name == "half-order k=3" ||
           name == "finitely many poles";
}

TEST_CASE("sol_verify on the golden displays") {
    for (const auto& inst : all()) {
        INFO(inst.name);
        CHECK(sol_verify(inst.eq, inst.solution) != printed_inconsistent(inst.name));
    }
    CHECK(sol_verify(rational_h_quadratic(true), rational_h_solution()));
    for (long k : {2, 3, 4, 5}) {
        Instance inst = half_order(k, true);
        INFO(inst.name);
        CHECK(sol_verify(inst.eq, inst.solution));
    }
}

TEST_CASE("printed displays that do not verify leave the predicted residual") {
    // g = 1/(e^z - 1) has g' = -g - g^2, so f = g + z gives -z^2 + z + 1
    CHECK(rational_h_quadratic().residual(rational_h_solution()) == ExpFraction(2));

    // printed f' coefficient minus the one forced by the f-equation: (k-2)/2 (1 + 1/z)
    for (long k : {3, 4, 5}) {
        Instance inst = half_order(k);
        RationalFunction extra = C(k - 2, 2) * (C(1) + Z().pow(-1));
        ExpFraction expected = ExpFraction(ExpPoly(extra)) * inst.solution.derivative();
        CHECK(inst.eq.residual(inst.solution) == expected);
    }

    // computed independently: P(f) = N / ((z-1)^3 (4z^4 - 4z^3 - 5z - 1)) e^(z^2) instead of e^(z^2)
    RationalFunction n7 = poly({1, 2, -15, 15, -18, 25, -14, 2});
    RationalFunction den = poly({-1, 1}).pow(3) * poly({-1, -5, 0, -4, 4});
    ExpFraction expected = ExpFraction(ExpPoly(n7 / den - C(1)) * E(1, 1, 2));
    CHECK(finite_poles_equation().residual(ExpFraction(finite_poles_solution())) == expected);
}

TEST_CASE("sol_verify rejects wrong candidates") {
    TCEquation eq(2, F(1) - K(C(3)) * F(), E(2, 1));
    CHECK_FALSE(sol_verify(eq, ExpFraction(E(1, 1))));
    CHECK(eq.residual(ExpFraction(E(1, 1))) == ExpFraction(ExpPoly(C(-2)) * E(1, 1)));
    for (const auto& inst : all()) {
        INFO(inst.name);
        CHECK_FALSE(sol_verify(inst.eq, inst.solution + ExpFraction(1)));
    }
}

TEST_CASE("sol_search_case1 examples") {
    auto a = sol_search_case1(all()[1].eq);
    CHECK(a.verdict == Verdict::NoCandidateFound);
    CHECK(a.solutions.empty());
    CHECK(has_label(a, "1(iii)"));
    REQUIRE(a.residual);

    // the printed display is inconsistent, so the only candidate fails verification
    auto b = sol_search_case1(finite_poles_equation());
    CHECK(b.verdict == Verdict::NoCandidateFound);
    CHECK(has_label(b, "1(iii)"));
    REQUIRE(b.residual);

    // the same search on an equation built from the candidate finds it
    TCEquation planted(3, finite_poles_equation().p(),
                       finite_poles_solution().pow(3) + dp_substitute(finite_poles_equation().p(), finite_poles_solution()));
    auto b2 = sol_search_case1(planted);
    REQUIRE(b2.verdict == Verdict::FoundSolutions);
    REQUIRE(b2.solutions.size() == 1);
    CHECK(b2.solutions[0] == finite_poles_solution());

    auto c = sol_search_case1(quartic_no_solution());
    CHECK(c.verdict == Verdict::NoCandidateFound);
    REQUIRE(c.residual);
    ExpPoly witness = ExpPoly(C(4)) * E(2, 1) + ExpPoly(C(4)) * E(1, 1) + ExpPoly(C(9));
    CHECK(scalar_multiple(*c.residual, witness));
    CHECK(c.branch_trace.back().exhaustive);
}

TEST_CASE("sol_search_case1 equal and unimodular leaders") {
    // equal leading coefficients, different lower terms
    ExpPoly h = E(1, 1, 2) + ExpPoly::exp(PuiseuxPoly(Poly(std::vector<GaussianRational>{0, 1, 1}), 1));
    auto r = sol_search_case1(TCEquation(3, DiffPoly(), h));
    CHECK(has_label(r, "1(i)"));
    ExpPoly h2 = E(1, 1) + ExpPoly::exp(PuiseuxPoly(Poly(std::vector<GaussianRational>{0, GaussianRational::i()}), 1));
    auto r2 = sol_search_case1(TCEquation(3, DiffPoly(), h2));
    CHECK(has_label(r2, "1(ii)"));
    CHECK(r2.verdict == Verdict::NoCandidateFound);
}

TEST_CASE("sol_search_case2 examples") {
    auto a = sol_search_case2(all()[5].eq);
    REQUIRE(a.verdict == Verdict::FoundSolutions);
    ExpPoly f = E(1, 4) + E(-1, 4);
    CHECK(std::find(a.solutions.begin(), a.solutions.end(), f) != a.solutions.end());
    for (const auto& s : a.solutions) CHECK(sol_verify(all()[5].eq, s));

    for (long k : {2, 4, 3}) {
        Instance inst = half_order(k, true);
        auto r = sol_search_case2(inst.eq);
        REQUIRE(r.verdict == Verdict::FoundSolutions);
        CHECK(r.solutions.front() == *inst.solution.as_exp_poly());
    }

    TCEquation bad(3, DiffPoly(), E(2, 1) + E(-1, 1));
    CHECK_THROWS_AS(sol_search_case2(bad), Error);
    try {
        sol_search_case2(bad);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::ShapeMismatch);
    }
}

TEST_CASE("sol_search_case3 examples") {
    auto a = sol_search_case3(cc_equation());
    REQUIRE(a.verdict == Verdict::FoundSolutions);
    REQUIRE(a.solutions.size() == 1);
    CHECK(a.solutions[0] == E(1, 1) + ExpPoly(poly({1, 1})));

    auto kind = [](const TCEquation& eq) {
        try {
            sol_search_case3(eq);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidInput;
    };
    CHECK(kind(TCEquation(3, DiffPoly(), E(2, 1) + E(1, 1))) == ErrorKind::RatioMismatch);
    CHECK(kind(quartic_no_solution()) == ErrorKind::RatioMismatch);
}

TEST_CASE("sol_decide examples") {
    auto q = sol_decide(quartic_no_solution());
    CHECK(q.theorem_coverage);
    REQUIRE(q.verdict == Verdict::NonexistenceEstablished);
    REQUIRE(q.residual);
    ExpPoly witness = ExpPoly(C(4)) * E(2, 1) + ExpPoly(C(4)) * E(1, 1) + ExpPoly(C(9));
    CHECK(scalar_multiple(*q.residual, witness));

    auto q_open = sol_decide(quartic_no_solution(), {false, std::nullopt});
    CHECK(q_open.verdict == Verdict::NoCandidateFound);

    auto cc = sol_decide(cc_equation());
    REQUIRE(cc.verdict == Verdict::FoundSolutions);
    REQUIRE(cc.solutions.size() == 1);
    CHECK(cc.solutions[0] == E(1, 1) + ExpPoly(poly({1, 1})));

    auto two = sol_decide(all()[0].eq);
    CHECK_FALSE(two.theorem_coverage);
    CHECK(two.coverage_note.find("n < 3") != std::string::npos);
    CHECK(two.verdict != Verdict::NonexistenceEstablished);

    auto a = sol_decide(cc_equation());
    auto b = sol_decide(cc_equation());
    REQUIRE(a.branch_trace.size() == b.branch_trace.size());
    for (size_t k = 0; k < a.branch_trace.size(); ++k) {
        CHECK(a.branch_trace[k].label == b.branch_trace[k].label);
        CHECK(a.branch_trace[k].outcome == b.branch_trace[k].outcome);
    }
}

TEST_CASE("property: planted solutions are found and verify") {
    std::mt19937 rng(5001);
    for (int it = 0; it < 200; ++it) {
        unsigned n = 3 + rng() % 2;
        // h built from a planted q e^alpha so some searches succeed
        RationalFunction q = testgen::nonzero_rf(rng, 1, false);
        long a = 1 + static_cast<long>(rng() % 2);
        ExpPoly f = ExpPoly(q, PuiseuxPoly::z_power(GaussianRational(a), 1));
        DiffPoly p = rng() % 2 ? K(testgen::nonzero_rf(rng, 1, false)) * F(1) : K(C(-1)) * F();
        ExpPoly h = f.pow(n) + dp_substitute(p, f);
        TCEquation eq(n, p, h);
        auto rep = sol_decide(eq);
        REQUIRE(rep.verdict == Verdict::FoundSolutions);
        REQUIRE(std::find(rep.solutions.begin(), rep.solutions.end(), f) != rep.solutions.end());
        for (const auto& s : rep.solutions) REQUIRE(sol_verify(eq, s));
        REQUIRE_FALSE(rep.branch_trace.empty());
    }
}
