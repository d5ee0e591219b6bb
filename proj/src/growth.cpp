#include "tcsolve/growth.hpp"

#include "tcsolve/errors.hpp"

#include <algorithm>
#include <cmath>

namespace tcsolve {

namespace {

long count_poles(const RationalFunction& x, int multiplicity, long weight) {
    if (x.is_zero()) return 0;
    long total = 0;
    for (const auto& p : rf_pole_profile(x)) {
        if (p.multiplicity != multiplicity) continue;
        long points = p.location ? 1 : p.unresolved_degree;
        total += points * weight;
    }
    return total;
}

std::optional<Rational> exact_abs(const GaussianRational& c) { return rational_root(c.norm(), 2); }

double to_d(const Rational& r) { return r.get_d(); }

GrowthClass make_class(const Rational& order, double type, std::optional<Rational> exact, std::string source) {
    GrowthClass g;
    g.order = order;
    g.type_coeff = exact ? exact->get_d() : type;
    g.exact_type = std::move(exact);
    g.source = std::move(source);
    return g;
}

/// 2 sqrt|c| / denom.
GrowthClass sqrt_type_class(const Rational& order, const LeadingTerm& s, const Rational& denom, std::string source) {
    if (sgn(denom) <= 0) return make_class(order, 0.0, std::nullopt, std::move(source));
    std::optional<Rational> exact;
    if (s.exact)
        if (auto r = sqrt_abs_exact(*s.exact)) exact = Rational(2 * *r / denom);
    return make_class(order, 2.0 * std::sqrt(std::abs(s.coeff)) / to_d(denom), exact, std::move(source));
}

/// |c| / denom.
GrowthClass abs_type_class(const Rational& order, const LeadingTerm& c, const Rational& denom, std::string source) {
    if (sgn(denom) <= 0) return make_class(order, 0.0, std::nullopt, std::move(source));
    std::optional<Rational> exact;
    if (c.exact)
        if (auto a = exact_abs(*c.exact)) exact = Rational(*a / denom);
    return make_class(order, std::abs(c.coeff) / to_d(denom), exact, std::move(source));
}

bool feasible(const GrowthClass& g) { return g.order >= Rational(1, 2) && g.type_coeff > 0.0; }

}  // namespace

PoleCountBounds gc_lemma11_bounds(const RationalFunction& a, const RationalFunction& b) {
    long bound = count_poles(a, 1, 1) + count_poles(b, 2, 2);
    PoleCountBounds out;
    out.multi_zero_bound = bound;
    out.pole_bound = bound;
    out.simple_zero_only = (a.is_zero() || a.is_polynomial()) && (b.is_zero() || b.is_polynomial());
    return out;
}

GrowthVerdict gc_classify_l2(const RationalFunction& r, const RationalFunction& s) {
    if (s.is_zero()) fail(ErrorKind::ZeroS, "S must not vanish");
    if (!r.is_zero() && r.leading().exponent > -1)
        fail(ErrorKind::PreconditionViolated, "R must be O(1/z), got degree " + rational_str(r.leading().exponent));
    LeadingTerm ls = LeadingTerm::of(s);
    // -2 < m < -1 only occurs for ramified S and would give order below 1/2.
    if (ls.exponent < -1) return {true, std::nullopt};
    Rational order = 1 + ls.exponent / 2;
    return {false, sqrt_type_class(order, ls, ls.exponent + 2, "lemma l2")};
}

GrowthVerdict gc_classify_l3(const RationalFunction& s) {
    if (s.is_zero()) fail(ErrorKind::ZeroS, "S must not vanish");
    LeadingTerm ls = LeadingTerm::of(s);
    if (ls.exponent <= -1) return {true, std::nullopt};
    Rational order = 1 + ls.exponent;
    return {false, abs_type_class(order, ls, ls.exponent + 1, "lemma l3")};
}

LeadingTerm LeadingTerm::of(const RationalFunction& x) {
    LeadingBehavior lb = x.leading();
    return {lb.coeff.to_complex(), lb.exponent, lb.coeff};
}

bool possible_orders_case_applies(OrdersCase c, const Rational& n, const Rational& m) {
    switch (c) {
        case OrdersCase::SDominant: return m > 2 * n;
        case OrdersCase::Intermediate: return n <= m && m < 2 * n;
        // m < n alone overlaps the first case when n < 0; the dominance argument needs m < 2n too.
        case OrdersCase::RDominant: return m < n && m < 2 * n;
        case OrdersCase::Balanced: return m == 2 * n;
    }
    return false;
}

OrdersCase possible_orders_case(const Rational& n, const Rational& m) {
    for (OrdersCase c : {OrdersCase::SDominant, OrdersCase::Intermediate, OrdersCase::RDominant, OrdersCase::Balanced})
        if (possible_orders_case_applies(c, n, m)) return c;
    fail(ErrorKind::PreconditionViolated, "no possible-orders case applies");
}

std::vector<GrowthClass> gc_possible_orders(const RationalFunction& r, const RationalFunction& s) {
    if (s.is_zero()) fail(ErrorKind::ZeroS, "S must not vanish");
    std::optional<LeadingTerm> lr;
    if (!r.is_zero()) lr = LeadingTerm::of(r);
    return gc_possible_orders(lr, LeadingTerm::of(s));
}

std::vector<GrowthClass> gc_possible_orders(const std::optional<LeadingTerm>& r, const LeadingTerm& s) {
    if (std::abs(s.coeff) == 0.0) fail(ErrorKind::ZeroS, "S must not vanish");
    std::vector<GrowthClass> out;
    auto push = [&](GrowthClass g) {
        if (feasible(g)) out.push_back(std::move(g));
    };
    const Rational& m = s.exponent;
    if (!r) {
        push(sqrt_type_class(1 + m / 2, s, m + 2, "possible-orders case 1"));
        return out;
    }
    const Rational& n = r->exponent;
    switch (possible_orders_case(n, m)) {
        case OrdersCase::SDominant:
            push(sqrt_type_class(1 + m / 2, s, m + 2, "possible-orders case 1"));
            break;
        case OrdersCase::Intermediate: {
            push(abs_type_class(n + 1, *r, n + 1, "possible-orders case 2(i)"));
            Rational order = 1 + m - n;
            std::optional<Rational> exact;
            if (s.exact && r->exact) {
                auto as = exact_abs(*s.exact), ar = exact_abs(*r->exact);
                if (as && ar) exact = Rational(*as / (order * *ar));
            }
            push(make_class(order, std::abs(s.coeff) / (to_d(order) * std::abs(r->coeff)), exact,
                            "possible-orders case 2(ii)"));
            break;
        }
        case OrdersCase::RDominant:
            push(abs_type_class(n + 1, *r, n + 1, "possible-orders case 3"));
            break;
        case OrdersCase::Balanced: {
            // X^2 + C_R X + C_S = 0
            std::vector<GrowthClass> roots;
            bool exact_done = false;
            if (r->exact && s.exact) {
                GaussianRational disc = *r->exact * *r->exact - GaussianRational(4) * *s.exact;
                auto sq = nth_roots(disc, 2);
                if (disc.is_zero()) sq = {GaussianRational()};
                if (!sq.empty()) {
                    for (int sign : {1, -1}) {
                        GaussianRational x = (-*r->exact + GaussianRational(sign) * sq.front()) / GaussianRational(2);
                        LeadingTerm lx{x.to_complex(), 0, x};
                        roots.push_back(abs_type_class(n + 1, lx, n + 1, "possible-orders case 4"));
                    }
                    exact_done = true;
                }
            }
            if (!exact_done) {
                std::complex<double> cr = r->coeff, cs = s.coeff;
                std::complex<double> d = std::sqrt(cr * cr - 4.0 * cs);
                for (std::complex<double> x : {(-cr + d) / 2.0, (-cr - d) / 2.0})
                    roots.push_back(make_class(n + 1, std::abs(x) / to_d(n + 1), std::nullopt, "possible-orders case 4"));
            }
            std::sort(roots.begin(), roots.end(),
                      [](const GrowthClass& a, const GrowthClass& b) { return a.type_coeff < b.type_coeff; });
            for (auto& g : roots) {
                bool dup = !out.empty() && std::abs(out.back().type_coeff - g.type_coeff) <=
                                               1e-12 * std::max(1.0, g.type_coeff);
                if (!dup) push(std::move(g));
            }
            break;
        }
    }
    return out;
}

const BranchVerdict& Theo13Report::branch(const std::string& label) const {
    for (const auto& b : branches)
        if (b.label == label) return b;
    fail(ErrorKind::InvalidInput, "no branch " + label);
}

Theo13Report gc_theo13_classify(unsigned n, const RationalFunction& r0, const RationalFunction& r1) {
    if (r0.is_zero()) fail(ErrorKind::ZeroR0, "r0 must not vanish");
    if (n < 3) fail(ErrorKind::PreconditionViolated, "the classification needs n >= 3");
    Theo13Report rep;
    rep.n = n;
    LeadingBehavior l0 = r0.leading();
    rep.c0 = l0.coeff;
    rep.m = l0.exponent;
    long nl = n;
    rep.critical_ratio = Rational(nl * (nl - 1), (2 * nl - 1) * (2 * nl - 1));
    if (!r1.is_zero()) {
        LeadingBehavior l1 = r1.leading();
        rep.c1 = l1.coeff;
        rep.l = l1.exponent;
        rep.ratio = rep.c0 / (l1.coeff * l1.coeff);
    }

    BranchVerdict b1{"1", true, "f = q e^alpha is always possible", std::nullopt, "f = q(z) exp(alpha(z))"};
    rep.branches.push_back(b1);

    LeadingTerm lc0{rep.c0.to_complex(), rep.m, rep.c0};
    Rational order = 1 + rep.m / 2;

    BranchVerdict b2i{"2(i)", false, "", std::nullopt,
                      "f'' + R f' + S f = 0 with |R| comparable to |r1| and |S| ~ |r0|/" + std::to_string(nl * nl)};
    bool l_ok = !rep.l || *rep.l <= -1;
    if (l_ok && rep.m >= -1) {
        b2i.admissible = true;
        b2i.reason = "l <= -1 <= m";
        b2i.prediction = sqrt_type_class(order, lc0, Rational(nl) * (rep.m + 2), "theo1.3 2(i)");
    } else {
        b2i.reason = !l_ok ? "l = " + rational_str(*rep.l) + " > -1" : "m = " + rational_str(rep.m) + " < -1";
    }
    rep.branches.push_back(b2i);

    BranchVerdict b2ii{"2(ii)", false, "", std::nullopt,
                       "f' + S f = Q with |S| ~ |r1|/" + std::to_string(2 * nl - 1)};
    if (!rep.l) {
        b2ii.reason = "r1 vanishes";
    } else if (rep.m != 2 * *rep.l || rep.m < 0) {
        b2ii.reason = "m = " + rational_str(rep.m) + ", l = " + rational_str(*rep.l) + " violate m = 2l >= 0";
    } else if (*rep.ratio != GaussianRational(rep.critical_ratio)) {
        b2ii.reason = "C0/C1^2 = " + rep.ratio->str() + " differs from " + rational_str(rep.critical_ratio);
    } else {
        b2ii.admissible = true;
        b2ii.reason = "m = 2l >= 0 and C0/C1^2 = " + rational_str(rep.critical_ratio);
        // 2 sqrt|C0| / (sqrt(n(n-1)) (m+2))
        double type = 2.0 * std::sqrt(std::abs(lc0.coeff)) / (std::sqrt(double(nl * (nl - 1))) * to_d(rep.m + 2));
        std::optional<Rational> exact;
        auto s0 = sqrt_abs_exact(rep.c0);
        auto sn = rational_root(Rational(nl * (nl - 1)), 2);
        if (s0 && sn) exact = Rational(2 * *s0 / (*sn * (rep.m + 2)));
        b2ii.prediction = make_class(order, type, exact, "theo1.3 2(ii)");
    }
    rep.branches.push_back(b2ii);
    return rep;
}

double deficiency_sum(const DeficiencyInput& d) {
    return d.theta0 + 0.5 * static_cast<double>(d.j) * d.delta_inf + d.theta_inf;
}

bool gc_deficiency_gate(const DeficiencyInput& d, unsigned gamma_weight, unsigned n) {
    bool cond1 = deficiency_sum(d) > 2.0;
    bool cond2 = n >= 6 && gamma_weight + 5 <= n;
    return cond1 || cond2;
}

bool gc_theo10_bound_check(const std::vector<NevanlinnaSample>& samples, unsigned j, const Theo10Slack& slack) {
    double k = 2.0 / static_cast<double>(j);
    for (const auto& s : samples) {
        double bound = k * s.Nbar_zero_r + s.N_r + k * s.Nbar_r;
        double allowance = slack.epsilon * s.T_r + slack.log_factor * std::log(std::max(s.r, 1.0));
        if (s.T_r > bound + allowance) return false;
    }
    return true;
}

}  // namespace tcsolve
