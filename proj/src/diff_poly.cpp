#include "tcsolve/diff_poly.hpp"

#include "tcsolve/errors.hpp"

#include <algorithm>
#include <sstream>

namespace tcsolve {

namespace {

void trim(PowerVector& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

bool negative_leading(const RationalFunction& c) {
    const auto& l = c.num().lead();
    return sgn(l.re()) < 0 || (sgn(l.re()) == 0 && sgn(l.im()) < 0);
}

bool sign_can_be_pulled(const RationalFunction& c) {
    if (!c.is_constant()) return c.is_polynomial();
    return c.constant_value().is_real() || sgn(c.constant_value().re()) == 0;
}

std::string monomial_factors(const PowerVector& p) {
    std::string out;
    for (size_t s = 0; s < p.size(); ++s) {
        if (p[s] == 0) continue;
        if (!out.empty()) out += "*";
        out += s == 0 ? std::string("f") : "D" + std::to_string(s) + "(f)";
        if (p[s] > 1) out += "^" + std::to_string(p[s]);
    }
    return out;
}

}  // namespace

DegreeWeight monomial_degree_weight(const PowerVector& p) {
    DegreeWeight dw;
    for (size_t s = 0; s < p.size(); ++s) {
        dw.degree += p[s];
        dw.weight += static_cast<unsigned>(s + 1) * p[s];
    }
    return dw;
}

DiffPoly::DiffPoly(const RationalFunction& c) {
    if (!c.is_zero()) terms_.emplace(PowerVector{}, c);
}

DiffPoly::DiffPoly(const RationalFunction& coeff, PowerVector powers) {
    trim(powers);
    if (!coeff.is_zero()) terms_.emplace(std::move(powers), coeff);
}

DiffPoly DiffPoly::f(unsigned order) {
    PowerVector p(order + 1, 0);
    p[order] = 1;
    return {RationalFunction(1), p};
}

void DiffPoly::add_term(PowerVector p, const RationalFunction& c) {
    if (c.is_zero()) return;
    trim(p);
    auto it = terms_.find(p);
    if (it == terms_.end()) {
        terms_.emplace(std::move(p), c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

unsigned DiffPoly::max_order() const {
    unsigned k = 0;
    for (const auto& [p, c] : terms_)
        if (!p.empty()) k = std::max(k, static_cast<unsigned>(p.size() - 1));
    return k;
}

RationalFunction DiffPoly::constant_term() const {
    auto it = terms_.find(PowerVector{});
    return it == terms_.end() ? RationalFunction() : it->second;
}

DiffPoly DiffPoly::operator-() const {
    DiffPoly r = *this;
    for (auto& [p, c] : r.terms_) c = -c;
    return r;
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, c);
    return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& o) {
    for (const auto& [p, c] : o.terms_) add_term(p, -c);
    return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
    DiffPoly r;
    for (const auto& [pa, ca] : a.terms_) {
        for (const auto& [pb, cb] : b.terms_) {
            PowerVector p(std::max(pa.size(), pb.size()), 0);
            for (size_t s = 0; s < pa.size(); ++s) p[s] += pa[s];
            for (size_t s = 0; s < pb.size(); ++s) p[s] += pb[s];
            r.add_term(std::move(p), ca * cb);
        }
    }
    return r;
}

DiffPoly DiffPoly::pow(unsigned k) const {
    DiffPoly r(1), base = *this;
    while (k > 0) {
        if (k & 1U) r = r * base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return r;
}

std::string DiffPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // Highest degree first, then by power vector.
    std::vector<const TermMap::value_type*> order;
    for (const auto& t : terms_) order.push_back(&t);
    std::stable_sort(order.begin(), order.end(), [](auto* x, auto* y) {
        auto dx = monomial_degree_weight(x->first), dy = monomial_degree_weight(y->first);
        if (dx.degree != dy.degree) return dx.degree > dy.degree;
        return dx.weight > dy.weight;
    });
    for (const auto* t : order) {
        const auto& [p, c] = *t;
        bool neg = sign_can_be_pulled(c) && negative_leading(c);
        RationalFunction a = neg ? -c : c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        std::string factors = monomial_factors(p);
        if (factors.empty()) {
            std::string s = a.str();
            if ((neg || !first) && !a.is_atomic()) s = "(" + s + ")";
            os << s;
        } else if (a.is_one()) {
            os << factors;
        } else {
            std::string s = a.str();
            if (!a.is_atomic()) s = "(" + s + ")";
            os << s << "*" << factors;
        }
        first = false;
    }
    return os.str();
}

DegreeWeight dp_degree_weight(const DiffPoly& p) {
    DegreeWeight dw;
    for (const auto& [pv, c] : p.terms()) {
        auto m = monomial_degree_weight(pv);
        dw.degree = std::max(dw.degree, m.degree);
        dw.weight = std::max(dw.weight, m.weight);
    }
    return dw;
}

DiffPoly dp_total_derivative(const DiffPoly& p, unsigned order) {
    DiffPoly cur = p;
    for (unsigned k = 0; k < order; ++k) {
        DiffPoly next;
        for (const auto& [pv, c] : cur.terms()) {
            next += DiffPoly(c.derivative(), pv);
            // d/dz (f^(s))^m = m (f^(s))^(m-1) f^(s+1)
            for (size_t s = 0; s < pv.size(); ++s) {
                if (pv[s] == 0) continue;
                PowerVector q = pv;
                if (q.size() < s + 2) q.resize(s + 2, 0);
                q[s] -= 1;
                q[s + 1] += 1;
                next += DiffPoly(c * RationalFunction(static_cast<long>(pv[s])), q);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

ExpPoly dp_substitute(const DiffPoly& p, const ExpPoly& f) {
    if (p.is_zero()) return {};
    unsigned k = p.max_order();
    std::vector<ExpPoly> derivs{f};
    for (unsigned s = 1; s <= k; ++s) derivs.push_back(derivs.back().derivative());
    std::map<std::pair<size_t, unsigned>, ExpPoly> powers;
    auto power = [&](size_t s, unsigned m) -> const ExpPoly& {
        auto key = std::make_pair(s, m);
        auto it = powers.find(key);
        if (it == powers.end()) it = powers.emplace(key, derivs[s].pow(m)).first;
        return it->second;
    };
    ExpPoly out;
    for (const auto& [pv, c] : p.terms()) {
        ExpPoly term(c);
        for (size_t s = 0; s < pv.size() && !term.is_zero(); ++s)
            if (pv[s] > 0) term = term * power(s, pv[s]);
        out += term;
    }
    return out;
}

ExpFraction dp_substitute(const DiffPoly& p, const ExpFraction& f) {
    if (f.is_exp_poly()) return ExpFraction(dp_substitute(p, f.num()));
    if (p.is_zero()) return {};
    // f^(s) = N_s / D^(s+1) with N_{s+1} = N_s' D - (s+1) N_s D'.
    const ExpPoly& d = f.den();
    ExpPoly dd = d.derivative();
    unsigned k = p.max_order();
    std::vector<ExpPoly> nums{f.num()};
    for (unsigned s = 0; s < k; ++s)
        nums.push_back(nums[s].derivative() * d - RationalFunction(static_cast<long>(s + 1)) * nums[s] * dd);
    unsigned top = dp_degree_weight(p).weight;
    std::vector<ExpPoly> dpow{ExpPoly(1)};
    for (unsigned w = 1; w <= top; ++w) dpow.push_back(dpow.back() * d);
    ExpPoly out;
    for (const auto& [pv, c] : p.terms()) {
        ExpPoly term(c);
        for (size_t s = 0; s < pv.size(); ++s)
            if (pv[s] > 0) term = term * nums[s].pow(pv[s]);
        out += term * dpow[top - monomial_degree_weight(pv).weight];
    }
    while (top > 0) {
        auto q = try_divide(out, d);
        if (!q) break;
        out = std::move(*q);
        --top;
    }
    return ExpFraction(out, dpow[top]);
}

// ----------------------------------------------------------------- TCEquation

TCEquation::TCEquation(unsigned n, DiffPoly p, ExpPoly h, std::optional<LinearOde> ode)
    : n_(n), p_(std::move(p)), h_(std::move(h)), ode_(std::move(ode)) {
    if (n_ < 2) fail(ErrorKind::InvalidInput, "equation power n must be at least 2");
    if (ode_ && !ode_residual(*ode_, h_).is_zero())
        fail(ErrorKind::OdeMismatch, "h does not satisfy the supplied linear ODE");
}

TCEquation TCEquation::with_derived_ode() const { return with_ode(ep_ode_for(h_)); }

ExpFraction TCEquation::residual(const ExpFraction& f) const {
    return f.pow(n_) + dp_substitute(p_, f) - ExpFraction(h_);
}

std::string TCEquation::str() const {
    std::string lhs = "f^" + std::to_string(n_);
    if (!p_.is_zero()) {
        std::string ps = p_.str();
        if (ps.front() == '-') lhs += " - " + ps.substr(1);
        else lhs += " + " + ps;
    }
    return lhs + " = " + h_.str();
}

// ------------------------------------------------------------ proof pipeline

namespace {

const LinearOde& require_ode(const TCEquation& eq) {
    if (!eq.ode()) fail(ErrorKind::MissingOde, "the equation has no linear ODE for h");
    return *eq.ode();
}

}  // namespace

DiffPoly dp_build_phi(const TCEquation& eq) {
    const LinearOde& ode = require_ode(eq);
    RationalFunction n(static_cast<long>(eq.n()));
    DiffPoly f0 = DiffPoly::f(0), f1 = DiffPoly::f(1), f2 = DiffPoly::f(2);
    return DiffPoly(ode.r0) * f0 * f0 + DiffPoly(n * ode.r1) * f1 * f0 + DiffPoly(n) * f2 * f0 +
           DiffPoly(n * (n - RationalFunction(1))) * f1 * f1;
}

DiffPoly dp_build_q(const TCEquation& eq) {
    const LinearOde& ode = require_ode(eq);
    const DiffPoly& p = eq.p();
    DiffPoly sum = dp_total_derivative(p, 2) + DiffPoly(ode.r1) * dp_total_derivative(p) + DiffPoly(ode.r0) * p -
                   DiffPoly(ode.r2);
    return -sum;
}

PhiMember dp_phi_member(const TCEquation& eq, unsigned j) {
    if (j == 0) fail(ErrorKind::InvalidInput, "phi_j needs j >= 1");
    return {dp_build_phi(eq), static_cast<int>(j) - 2};
}

ExpFraction dp_evaluate(const PhiMember& m, const ExpFraction& f) {
    ExpFraction v = dp_substitute(m.phi, f);
    if (m.f_shift >= 0) return v * f.pow(static_cast<unsigned>(m.f_shift));
    return v / f.pow(static_cast<unsigned>(-m.f_shift));
}

PsiAbc dp_build_psi_abc(const TCEquation& eq, const ExpFraction& phi_value, const ExpFraction& f) {
    const LinearOde& ode = require_ode(eq);
    if (phi_value.is_zero()) fail(ErrorKind::PhiVanishes, "phi vanishes identically");
    if (f.is_zero()) fail(ErrorKind::PreconditionViolated, "f must not vanish identically");
    long n = eq.n();
    ExpFraction r1(ode.r1), r0(ode.r0);
    ExpFraction dphi = phi_value.derivative();
    ExpFraction f1 = f.derivative(), f2 = f1.derivative();
    ExpFraction psi = ((r1 * phi_value - ExpFraction(n - 1) * dphi) * f1 + ExpFraction(2 * n - 1) * phi_value * f2) / f;
    RationalFunction k1(GaussianRational(Rational(n, 2 * n - 1)));
    RationalFunction k2(GaussianRational(Rational(n * (n - 1), 2 * n - 1)));
    ExpFraction a = r0 + ExpFraction(k1) * (psi / phi_value);
    ExpFraction b = ExpFraction(k2) * (dphi / phi_value + ExpFraction(2) * r1);
    ExpFraction c(n * (n - 1));
    bool consistent = (a * f * f + b * f1 * f + c * f1 * f1 - phi_value).is_zero();
    return {psi.simplified(), a.simplified(), b.simplified(), c, consistent};
}

bool dp_liao_check(const RationalFunction& a, const RationalFunction& b, const RationalFunction& c,
                   const RationalFunction& d) {
    if ((c * d).is_zero()) fail(ErrorKind::PreconditionViolated, "liao identity needs c d != 0");
    RationalFunction disc = b * b - RationalFunction(4) * a * c;
    RationalFunction expr = c * disc * d.derivative() / d + b * disc - c * disc.derivative() + disc * c.derivative();
    return expr.is_zero();
}

}  // namespace tcsolve
