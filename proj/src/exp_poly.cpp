#include "tcsolve/exp_poly.hpp"

#include "tcsolve/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace tcsolve {

double ScaledValue::log_abs() const { return std::log(std::abs(mantissa)) + log_scale; }

// -------------------------------------------------------------------- ExpPoly

ExpPoly::ExpPoly(const RationalFunction& r) {
    if (!r.is_zero()) terms_.emplace(PuiseuxPoly(), r);
}

ExpPoly::ExpPoly(const RationalFunction& coeff, const PuiseuxPoly& exponent) {
    if (!exponent.constant_term().is_zero())
        fail(ErrorKind::NonzeroExponentConstant,
             "exponent " + exponent.str() + " has a nonzero constant term; e^c is not in Q(i)");
    if (!coeff.is_zero()) terms_.emplace(exponent, coeff);
}

void ExpPoly::add_term(const PuiseuxPoly& e, const RationalFunction& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
}

bool ExpPoly::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_zero());
}

std::optional<RationalFunction> ExpPoly::as_rational() const {
    if (terms_.empty()) return RationalFunction();
    if (!is_rational()) return std::nullopt;
    return terms_.begin()->second;
}

std::pair<PuiseuxPoly, RationalFunction> ExpPoly::leading_term() const {
    if (terms_.empty()) fail(ErrorKind::ZeroFunction, "leading term of 0");
    return *terms_.begin();
}

std::pair<PuiseuxPoly, RationalFunction> ExpPoly::trailing_term() const {
    if (terms_.empty()) fail(ErrorKind::ZeroFunction, "trailing term of 0");
    return *terms_.rbegin();
}

RationalFunction ExpPoly::coeff_of(const PuiseuxPoly& exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? RationalFunction() : it->second;
}

ExpPoly ExpPoly::operator-() const {
    ExpPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

ExpPoly& ExpPoly::operator+=(const ExpPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

ExpPoly& ExpPoly::operator-=(const ExpPoly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

ExpPoly operator*(const ExpPoly& a, const ExpPoly& b) {
    ExpPoly r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
    return r;
}

ExpPoly operator*(const RationalFunction& s, const ExpPoly& a) {
    ExpPoly r;
    if (s.is_zero()) return r;
    for (const auto& [e, c] : a.terms_) r.terms_.emplace(e, s * c);
    return r;
}

bool operator==(const ExpPoly& a, const ExpPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto it = b.terms_.begin();
    for (const auto& [e, c] : a.terms_) {
        if (e != it->first || c != it->second) return false;
        ++it;
    }
    return true;
}

ExpPoly ExpPoly::pow(unsigned k) const {
    ExpPoly result(1);
    ExpPoly base = *this;
    while (k > 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

ExpPoly ExpPoly::derivative(unsigned order) const {
    ExpPoly cur = *this;
    for (unsigned s = 0; s < order; ++s) {
        ExpPoly next;
        for (const auto& [e, c] : cur.terms_) {
            RationalFunction d = c.derivative();
            if (!e.is_zero()) d += c * e.derivative();
            next.add_term(e, d);
        }
        cur = std::move(next);
    }
    return cur;
}

ExpPoly ExpPoly::shifted(const PuiseuxPoly& shift) const {
    if (!shift.constant_term().is_zero()) fail(ErrorKind::NonzeroExponentConstant, "shift " + shift.str());
    ExpPoly r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + shift, c);
    return r;
}

ScaledValue ExpPoly::eval(std::complex<double> z) const {
    if (terms_.empty()) return {0.0, 0.0};
    std::vector<std::pair<std::complex<double>, std::complex<double>>> parts;
    double scale = -INFINITY;
    for (const auto& [e, c] : terms_) {
        std::complex<double> a = e.eval(z);
        parts.emplace_back(c.eval(z), a);
        scale = std::max(scale, a.real());
    }
    std::complex<double> sum = 0.0;
    for (const auto& [r, a] : parts) sum += r * std::exp(a - scale);
    return {sum, scale};
}

namespace {

bool negative_leading(const RationalFunction& c) {
    const auto& l = c.num().lead();
    return sgn(l.re()) < 0 || (sgn(l.re()) == 0 && sgn(l.im()) < 0);
}

bool pure_sign_candidate(const RationalFunction& c) {
    if (!c.is_constant()) return c.is_polynomial();
    return c.constant_value().is_real() || sgn(c.constant_value().re()) == 0;
}

}  // namespace

std::string ExpPoly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        bool neg = pure_sign_candidate(c) && negative_leading(c);
        RationalFunction a = neg ? -c : c;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        if (e.is_zero()) {
            std::string s = a.str();
            if (neg && !a.is_atomic()) s = "(" + s + ")";
            if (!neg && !first && !a.is_polynomial()) s = "(" + s + ")";
            os << s;
        } else {
            std::string ex = "exp(" + e.str() + ")";
            if (a.is_one()) {
                os << ex;
            } else {
                std::string s = a.str();
                if (!a.is_atomic()) s = "(" + s + ")";
                os << s << "*" << ex;
            }
        }
        first = false;
    }
    return os.str();
}

bool ep_is_zero(const ExpPoly& x) { return x.is_zero(); }

GrowthData ep_growth(const ExpPoly& x) {
    GrowthData g;
    g.s = -1;
    for (const auto& [e, c] : x.terms())
        if (!e.is_zero() && e.degree() > g.s) g.s = e.degree();
    if (g.s <= 0) fail(ErrorKind::ConstantExponentOnly, "all exponents are constant");
    size_t idx = 0;
    for (const auto& [e, c] : x.terms()) {
        if (!e.is_zero() && e.degree() == g.s) g.leaders.emplace_back(e.lead(), idx);
        ++idx;
    }
    return g;
}

CharacteristicLeading ep_characteristic_leading(const ExpPoly& x) {
    if (x.size() != 2) fail(ErrorKind::WrongShape, "expected two exponential terms, got " + std::to_string(x.size()));
    auto it = x.terms().begin();
    const PuiseuxPoly& e1 = it->first;
    const PuiseuxPoly& e2 = std::next(it)->first;
    if (e1.is_zero() || e2.is_zero()) fail(ErrorKind::WrongShape, "both exponents must be non-constant");
    if (e1.degree() != e2.degree()) fail(ErrorKind::WrongShape, "exponents have different degrees");
    auto a1 = e1.lead().to_complex();
    auto a2 = e2.lead().to_complex();
    double coef = (std::abs(a1) + std::abs(a2) + std::abs(a1 - a2)) / (2.0 * std::numbers::pi);
    return {coef, e1.degree()};
}

namespace {

/// h' / h for a single term p e^A.
RationalFunction log_derivative(const ExpPoly& h) {
    if (h.size() != 1) fail(ErrorKind::WrongShape, "expected a single term p*exp(A)");
    const auto& [e, p] = *h.terms().begin();
    RationalFunction l = p.derivative() / p;
    if (!e.is_zero()) l += e.derivative();
    return l;
}

}  // namespace

ExpPoly ode_residual(const LinearOde& ode, const ExpPoly& h) {
    return h.derivative(2) + ode.r1 * h.derivative(1) + ode.r0 * h - ExpPoly(ode.r2);
}

std::pair<RationalFunction, RationalFunction> ep_derive_linear_ode(const ExpPoly& h1, const ExpPoly& h2) {
    RationalFunction l1 = log_derivative(h1);
    RationalFunction l2 = log_derivative(h2);
    if (l1 == l2) fail(ErrorKind::LinearlyDependent, "Wronskian vanishes identically");
    // h_i'' / h_i = L_i' + L_i^2; subtract the two instances of the ODE.
    RationalFunction q1 = l1.derivative() + l1 * l1;
    RationalFunction q2 = l2.derivative() + l2 * l2;
    RationalFunction r1 = (q2 - q1) / (l1 - l2);
    RationalFunction r0 = -q1 - r1 * l1;
    LinearOde ode{r0, r1, RationalFunction()};
    if (!ode_residual(ode, h1).is_zero() || !ode_residual(ode, h2).is_zero())
        fail(ErrorKind::NonRationalResult, "derived coefficients do not annihilate the inputs");
    return {r1, r0};
}

LinearOde ep_ode_for(const ExpPoly& h) {
    if (h.is_zero()) fail(ErrorKind::ZeroFunction, "no ODE for h = 0");
    if (h.size() == 1) {
        RationalFunction l = log_derivative(h);
        LinearOde ode{-(l.derivative() + l * l), RationalFunction(), RationalFunction()};
        if (!ode_residual(ode, h).is_zero()) fail(ErrorKind::NonRationalResult, "single-term ODE check failed");
        return ode;
    }
    if (h.size() != 2) fail(ErrorKind::WrongShape, "h must have one or two exponential terms");
    auto it = h.terms().begin();
    ExpPoly h1(it->second, it->first);
    ++it;
    ExpPoly h2(it->second, it->first);
    auto [r1, r0] = ep_derive_linear_ode(h1, h2);
    return {r0, r1, RationalFunction()};
}

namespace {

/// k with e == k * step for an integer k, if any.
std::optional<long> integer_multiple(const PuiseuxPoly& e, const PuiseuxPoly& step) {
    if (e.is_zero()) return 0L;
    if (e.degree() != step.degree()) return std::nullopt;
    GaussianRational k = e.lead() / step.lead();
    if (!k.is_real() || k.re().get_den() != 1 || !k.re().get_num().fits_slong_p()) return std::nullopt;
    if (!(e == k * step)) return std::nullopt;
    return k.re().get_num().get_si();
}

/// Real rational r with e == r * step, if any.
std::optional<Rational> rational_multiple(const PuiseuxPoly& e, const PuiseuxPoly& step) {
    if (e.is_zero()) return Rational(0);
    if (e.degree() != step.degree()) return std::nullopt;
    GaussianRational k = e.lead() / step.lead();
    if (!k.is_real() || !(e == k * step)) return std::nullopt;
    return k.re();
}

/// Exact division when the exponents of b lie on e_lo + k * step, k = 0..m.
/// Terms of a fall into classes base + k * step; each class is a finite
/// Laurent division by a polynomial in w = e^step.
std::optional<std::optional<ExpPoly>> divide_rank_one(const ExpPoly& a, const ExpPoly& b) {
    const auto [e_hi, c_hi] = b.leading_term();
    const PuiseuxPoly e_lo = b.trailing_term().first;
    PuiseuxPoly span = e_hi - e_lo;
    std::vector<std::pair<Rational, RationalFunction>> rel;
    mpz_class num_gcd = 0, den_lcm = 1;
    for (const auto& [e, c] : b.terms()) {
        auto r = rational_multiple(e - e_lo, span);
        if (!r) return std::nullopt;
        rel.emplace_back(*r, c);
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), r->get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), r->get_den().get_mpz_t());
    }
    Rational g(num_gcd, den_lcm);
    g.canonicalize();
    PuiseuxPoly step = GaussianRational(g) * span;
    std::map<long, RationalFunction> divisor;
    for (const auto& [r, c] : rel) {
        Rational k = r / g;
        divisor.emplace(k.get_num().get_si(), c);
    }
    long m = divisor.rbegin()->first;

    std::vector<std::pair<PuiseuxPoly, std::map<long, RationalFunction>>> classes;
    for (const auto& [e, c] : a.terms()) {
        bool placed = false;
        for (auto& [base, coeffs] : classes) {
            if (auto k = integer_multiple(e - base, step)) {
                coeffs.emplace(*k, c);
                placed = true;
                break;
            }
        }
        if (!placed) classes.push_back({e, {{0L, c}}});
    }
    ExpPoly q;
    for (auto& [base, rem] : classes) {
        long lo = rem.begin()->first;
        for (long k = rem.rbegin()->first; k >= lo + m; --k) {
            auto it = rem.find(k);
            if (it == rem.end()) continue;
            RationalFunction qk = it->second / c_hi;
            for (const auto& [j, bj] : divisor) {
                RationalFunction& slot = rem[k - m + j];
                slot -= qk * bj;
                if (slot.is_zero()) rem.erase(k - m + j);
            }
            PuiseuxPoly qe = base + PuiseuxPoly(GaussianRational(k - m)) * step - e_lo;
            q += ExpPoly(qk, qe);
        }
        if (!rem.empty()) return std::optional<ExpPoly>();
    }
    return std::optional<ExpPoly>(q);
}

}  // namespace

std::optional<ExpPoly> try_divide(const ExpPoly& a, const ExpPoly& b, int max_steps) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "exp-poly division by zero");
    if (a.is_zero()) return ExpPoly();
    if (b.size() == 1) {
        const auto& [eb, cb] = *b.terms().begin();
        ExpPoly r;
        for (const auto& [e, c] : a.terms()) r += ExpPoly(c / cb, e - eb);
        return r;
    }
    if (auto fast = divide_rank_one(a, b)) return *fast;
    const auto [lead_e, lead_c] = b.leading_term();
    PuiseuxPoly lower = a.trailing_term().first - b.trailing_term().first;
    ExpPoly q;
    ExpPoly rem = a;
    for (int step = 0; step < max_steps && !rem.is_zero(); ++step) {
        auto [re, rc] = rem.leading_term();
        PuiseuxPoly qe = re - lead_e;
        if (dominance_compare(qe, lower) < 0) return std::nullopt;
        ExpPoly qt(rc / lead_c, qe);
        q += qt;
        rem -= qt * b;
    }
    if (!rem.is_zero()) return std::nullopt;
    return q;
}

// ---------------------------------------------------------------- ExpFraction

ExpFraction::ExpFraction(ExpPoly num, ExpPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "exp-fraction with zero denominator");
    reduce_light();
}

void ExpFraction::reduce_light() {
    if (num_.is_zero()) {
        den_ = ExpPoly(1);
        return;
    }
    auto [e, c] = den_.leading_term();
    if (den_.size() == 1) {
        num_ = *try_divide(num_, den_);
        den_ = ExpPoly(1);
        return;
    }
    if (e.is_zero() && c.is_one()) return;
    ExpPoly lt(c, e);
    num_ = *try_divide(num_, lt);
    den_ = *try_divide(den_, lt);
}

std::optional<ExpPoly> ExpFraction::as_exp_poly() const {
    if (is_exp_poly()) return num_;
    return try_divide(num_, den_);
}

std::optional<RationalFunction> ExpFraction::as_rational() const {
    auto e = as_exp_poly();
    if (!e) return std::nullopt;
    return e->as_rational();
}

ExpFraction operator+(const ExpFraction& a, const ExpFraction& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    if (a.is_exp_poly()) return {a.num_ * b.den_ + b.num_, b.den_};
    if (b.is_exp_poly()) return {a.num_ + b.num_ * a.den_, a.den_};
    if (auto k = try_divide(a.den_, b.den_)) return {a.num_ + b.num_ * *k, a.den_};
    if (auto k = try_divide(b.den_, a.den_)) return {a.num_ * *k + b.num_, b.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
}

ExpFraction operator*(const ExpFraction& a, const ExpFraction& b) {
    if (a.is_zero() || b.is_zero()) return {};
    ExpPoly n1 = a.num_, d1 = a.den_, n2 = b.num_, d2 = b.den_;
    if (d2.size() > 1) {
        if (auto k = try_divide(n1, d2)) {
            n1 = *k;
            d2 = ExpPoly(1);
        }
    }
    if (d1.size() > 1) {
        if (auto k = try_divide(n2, d1)) {
            n2 = *k;
            d1 = ExpPoly(1);
        }
    }
    return {n1 * n2, d1 * d2};
}

ExpFraction operator/(const ExpFraction& a, const ExpFraction& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "exp-fraction division by zero");
    return a * ExpFraction(b.den_, b.num_);
}

bool operator==(const ExpFraction& a, const ExpFraction& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

ExpFraction ExpFraction::pow(unsigned k) const { return {num_.pow(k), den_.pow(k)}; }

ExpFraction ExpFraction::derivative(unsigned order) const {
    ExpFraction cur = *this;
    for (unsigned s = 0; s < order; ++s) {
        if (cur.is_exp_poly()) {
            cur = ExpFraction(cur.num_.derivative());
        } else {
            cur = ExpFraction(cur.num_.derivative() * cur.den_ - cur.num_ * cur.den_.derivative(),
                              cur.den_ * cur.den_);
        }
    }
    return cur;
}

ExpFraction ExpFraction::simplified() const {
    if (is_exp_poly()) return *this;
    if (auto q = try_divide(num_, den_)) return ExpFraction(*q);
    return *this;
}

std::string ExpFraction::str() const {
    if (is_exp_poly()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

}  // namespace tcsolve
