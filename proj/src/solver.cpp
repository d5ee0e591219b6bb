#include "tcsolve/solver.hpp"

#include "tcsolve/errors.hpp"
#include "tcsolve/growth.hpp"

#include <algorithm>

namespace tcsolve {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Verified: return "Verified";
        case Verdict::FoundSolutions: return "FoundSolutions";
        case Verdict::NoCandidateFound: return "NoCandidateFound";
        case Verdict::NonexistenceEstablished: return "NonexistenceEstablished";
    }
    return "?";
}

namespace {

struct HTerm {
    PuiseuxPoly alpha;
    RationalFunction p;
};

/// h = p1 e^a1 (+ p2 e^a2) with non-constant exponents, most dominant first.
std::optional<std::vector<HTerm>> exp_terms(const ExpPoly& h) {
    if (h.size() < 1 || h.size() > 2) return std::nullopt;
    std::vector<HTerm> out;
    for (const auto& [e, c] : h.terms()) {
        if (e.is_constant()) return std::nullopt;
        out.push_back({e, c});
    }
    // dominance: higher degree, then larger |leading coefficient|
    if (out.size() == 2) {
        const auto &a = out[0].alpha, &b = out[1].alpha;
        bool swap = b.degree() > a.degree() || (b.degree() == a.degree() && b.lead().norm() > a.lead().norm());
        if (swap) std::swap(out[0], out[1]);
    }
    return out;
}

long rf_degree(const RationalFunction& r) { return std::max(r.num().degree(), r.den().degree()); }

unsigned default_cap(const TCEquation& eq) {
    long d = 0;
    for (const auto& [e, c] : eq.h().terms()) d = std::max(d, rf_degree(c));
    for (const auto& [pv, c] : eq.p().terms()) d = std::max(d, rf_degree(c));
    return static_cast<unsigned>(2 * d + 10);
}

SolutionReport fresh(const TCEquation& eq, const SolverOptions& opt) {
    SolutionReport rep;
    rep.degree_cap = opt.degree_cap ? *opt.degree_cap : default_cap(eq);
    return rep;
}

bool within_cap(const RationalFunction& q, unsigned cap) { return rf_degree(q) <= static_cast<long>(cap); }

ExpPoly numerator_of(const ExpFraction& x) {
    if (auto e = x.as_exp_poly()) return *e;
    return x.num();
}

/// Verifies f, recording a solution or keeping the first residual.
void try_candidate(const TCEquation& eq, const ExpPoly& f, SolutionReport& rep, int& found) {
    ExpFraction res = eq.residual(f);
    if (res.is_zero()) {
        if (std::find(rep.solutions.begin(), rep.solutions.end(), f) == rep.solutions.end()) rep.solutions.push_back(f);
        ++found;
    } else if (!rep.residual) {
        rep.residual = numerator_of(res);
    }
}

void finalize(SolutionReport& rep) {
    if (!rep.solutions.empty()) rep.verdict = Verdict::FoundSolutions;
    else rep.verdict = Verdict::NoCandidateFound;
}

/// n-th roots of p times the units of Q(i); exhaustive when all n roots of unity are units.
struct RootFamily {
    std::vector<RationalFunction> roots;
    bool complete = false;
    std::string note;
};

RootFamily root_family(const RationalFunction& p, unsigned n) {
    RootFamily fam;
    auto r = rf_nth_root(p, n);
    if (!r) {
        fam.note = "no " + std::to_string(n) + "-th root of " + p.str() + " over Q(i)";
        return fam;
    }
    auto units = unit_roots_of_unity(n);
    for (const auto& u : units) fam.roots.push_back(RationalFunction(u) * *r);
    fam.complete = units.size() == n;
    if (!fam.complete) fam.note = "roots of unity outside Q(i) unexplored";
    return fam;
}

std::string outcome_text(int found, int tried, const std::string& note) {
    std::string s = found > 0 ? std::to_string(found) + " verified of " + std::to_string(tried)
                              : "no candidate verified (" + std::to_string(tried) + " tried)";
    if (!note.empty()) s += "; " + note;
    return s;
}

/// f = q e^alpha with q^n = p.
void search_single(const TCEquation& eq, const std::string& label, const PuiseuxPoly& alpha, const RationalFunction& p,
                   SolutionReport& rep) {
    RootFamily fam = root_family(p, eq.n());
    int found = 0, tried = 0;
    for (const auto& q : fam.roots) {
        if (!within_cap(q, rep.degree_cap)) continue;
        ++tried;
        try_candidate(eq, ExpPoly(q, alpha), rep, found);
    }
    rep.branch_trace.push_back({label, outcome_text(found, tried, fam.note), fam.complete});
}

}  // namespace

bool sol_verify(const TCEquation& eq, const ExpFraction& f) { return eq.residual(f).is_zero(); }

SolutionReport sol_search_case1(const TCEquation& eq, const SolverOptions& opt) {
    SolutionReport rep = fresh(eq, opt);
    auto hs = exp_terms(eq.h());
    GaussianRational n(static_cast<long>(eq.n()));
    if (!hs) {
        rep.branch_trace.push_back({"1", "h is not p1 e^a1 + p2 e^a2 with non-constant exponents", false});
    } else if (hs->size() == 1) {
        search_single(eq, "1", (*hs)[0].alpha / n, (*hs)[0].p, rep);
    } else {
        const HTerm &t1 = (*hs)[0], &t2 = (*hs)[1];
        bool same_degree = t1.alpha.degree() == t2.alpha.degree();
        if (same_degree && t1.alpha.lead() == t2.alpha.lead()) {
            rep.branch_trace.push_back({"1(i)", "a1 = a2 but alpha1 != alpha2, so n alpha = alpha1 = alpha2 fails", true});
        } else if (same_degree && t1.alpha.lead().norm() == t2.alpha.lead().norm()) {
            rep.branch_trace.push_back({"1(ii)", "|a1| = |a2| with a1 != a2 is impossible", true});
        } else {
            search_single(eq, "1(iii)", t1.alpha / n, t1.p, rep);
        }
    }
    finalize(rep);
    return rep;
}

SolutionReport sol_search_case2(const TCEquation& eq, const SolverOptions& opt) {
    auto hs = exp_terms(eq.h());
    if (!hs || hs->size() != 2 || (*hs)[0].alpha != -(*hs)[1].alpha)
        fail(ErrorKind::ShapeMismatch, "case 2 needs h = p1 e^a + p2 e^-a");
    SolutionReport rep = fresh(eq, opt);
    GaussianRational n(static_cast<long>(eq.n()));
    for (int sign : {1, -1}) {
        const HTerm& top = sign > 0 ? (*hs)[0] : (*hs)[1];
        const HTerm& bottom = sign > 0 ? (*hs)[1] : (*hs)[0];
        PuiseuxPoly beta = top.alpha / n;
        RootFamily f1 = root_family(top.p, eq.n()), f2 = root_family(bottom.p, eq.n());
        int found = 0, tried = 0;
        for (const auto& q1 : f1.roots)
            for (const auto& q2 : f2.roots) {
                if (!within_cap(q1, rep.degree_cap) || !within_cap(q2, rep.degree_cap)) continue;
                ++tried;
                try_candidate(eq, ExpPoly(q1, beta) + ExpPoly(q2, -beta), rep, found);
            }
        std::string note = !f1.note.empty() ? f1.note : f2.note;
        rep.branch_trace.push_back({sign > 0 ? "2(+beta)" : "2(-beta)", outcome_text(found, tried, note),
                                    f1.complete && f2.complete});
    }
    finalize(rep);
    return rep;
}

SolutionReport sol_search_case3(const TCEquation& eq, const SolverOptions& opt) {
    auto hs = exp_terms(eq.h());
    if (!hs || hs->size() != 2) fail(ErrorKind::ShapeMismatch, "case 3 needs a two-term h");
    const HTerm &hi = (*hs)[0], &lo = (*hs)[1];
    long nl = eq.n();
    if (nl < 2) fail(ErrorKind::RatioMismatch, "case 3 needs n >= 2");
    Rational want = Rational(nl * nl, (nl - 1) * (nl - 1));
    want.canonicalize();
    if (hi.alpha.degree() != lo.alpha.degree() || hi.alpha.lead().norm() != want * lo.alpha.lead().norm())
        fail(ErrorKind::RatioMismatch, "max|a|/min|a| differs from " + std::to_string(nl) + "/" + std::to_string(nl - 1));

    SolutionReport rep = fresh(eq, opt);
    PuiseuxPoly beta = (hi.alpha + lo.alpha) / GaussianRational(2 * nl - 1);
    if (GaussianRational(nl) * beta != hi.alpha) {
        rep.branch_trace.push_back({"3", "n beta differs from the dominant exponent", true});
        finalize(rep);
        return rep;
    }
    bool closed_form = dp_degree_weight(eq.p()).degree + 2 <= eq.n();
    RootFamily fam = root_family(hi.p, eq.n());
    PuiseuxPoly next = GaussianRational(nl - 1) * beta;
    int found = 0, tried = 0;
    for (const auto& q1 : fam.roots) {
        if (!within_cap(q1, rep.degree_cap)) continue;
        // e^((n-1) beta): n q1^(n-1) q2 + [P(q1 e^beta)] = p_lo
        ExpPoly p_part = dp_substitute(eq.p(), ExpPoly(q1, beta));
        RationalFunction q2 = (lo.p - p_part.coeff_of(next)) / (RationalFunction(nl) * q1.pow(nl - 1));
        if (q2.is_zero() || !within_cap(q2, rep.degree_cap)) continue;
        ++tried;
        try_candidate(eq, ExpPoly(q1, beta) + ExpPoly(q2), rep, found);
    }
    std::string note = fam.note;
    if (!closed_form) note += std::string(note.empty() ? "" : "; ") + "deg P > n - 2, q2 from the P-free level only";
    rep.branch_trace.push_back({"3", outcome_text(found, tried, note), fam.complete && closed_form});
    finalize(rep);
    return rep;
}

SolutionReport sol_decide(const TCEquation& eq, const SolverOptions& opt) {
    SolutionReport rep = fresh(eq, opt);
    unsigned gamma = dp_degree_weight(eq.p()).degree;
    auto hs = exp_terms(eq.h());
    if (eq.n() < 3) rep.coverage_note = "search only, no theorem coverage: n < 3";
    else if (gamma + 2 > eq.n()) rep.coverage_note = "search only, no theorem coverage: deg P > n - 2";
    else if (!hs || hs->size() != 2) rep.coverage_note = "search only, no theorem coverage: h is not p1 e^a1 + p2 e^a2";
    rep.theorem_coverage = rep.coverage_note.empty();

    std::optional<Theo13Report> t13;
    if (eq.n() >= 3) {
        try {
            LinearOde ode = eq.ode() ? *eq.ode() : eq.with_derived_ode().ode().value();
            t13 = gc_theo13_classify(eq.n(), ode.r0, ode.r1);
        } catch (const Error& e) {
            rep.branch_trace.push_back({"theo1.3", std::string("unavailable: ") + e.what(), false});
        }
    }
    if (t13)
        for (const auto& b : t13->branches)
            rep.branch_trace.push_back({"theo1.3 " + b.label, (b.admissible ? "admissible: " : "inadmissible: ") + b.reason,
                                        true});

    bool all_exhaustive = true;
    auto merge = [&](const SolutionReport& part) {
        for (const auto& f : part.solutions)
            if (std::find(rep.solutions.begin(), rep.solutions.end(), f) == rep.solutions.end()) rep.solutions.push_back(f);
        if (!rep.residual && part.residual) rep.residual = part.residual;
        for (const auto& b : part.branch_trace) {
            rep.branch_trace.push_back(b);
            all_exhaustive = all_exhaustive && b.exhaustive;
        }
    };
    auto excluded = [&](const std::string& label, const std::string& why) {
        rep.branch_trace.push_back({label, why, true});
    };

    merge(sol_search_case1(eq, opt));

    if (t13 && !t13->branch("2(i)").admissible) {
        excluded("2", "skipped: theo1.3 2(i) inadmissible");
    } else {
        try {
            merge(sol_search_case2(eq, opt));
        } catch (const Error& e) {
            excluded("2", e.what());
        }
    }

    if (t13 && !t13->branch("2(ii)").admissible) {
        excluded("3", "skipped: theo1.3 2(ii) inadmissible");
    } else {
        try {
            merge(sol_search_case3(eq, opt));
        } catch (const Error& e) {
            excluded("3", e.what());
        }
    }

    for (const auto& f : rep.solutions)
        if (!sol_verify(eq, f)) fail(ErrorKind::InvalidInput, "internal: unverified solution " + f.str());

    if (!rep.solutions.empty()) {
        rep.verdict = Verdict::FoundSolutions;
        rep.residual.reset();
    } else if (rep.theorem_coverage && opt.assume_small_pole_count && all_exhaustive && rep.residual) {
        rep.verdict = Verdict::NonexistenceEstablished;
    } else {
        rep.verdict = Verdict::NoCandidateFound;
    }
    return rep;
}

}  // namespace tcsolve
