#include "tcsolve/rational_function.hpp"

#include "tcsolve/errors.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace tcsolve {

unsigned common_ramification(unsigned a, unsigned b) { return std::lcm(a, b); }

namespace {

std::complex<double> branch_root(std::complex<double> z, unsigned q) {
    if (q == 1) return z;
    if (z == 0.0) return 0.0;
    return std::exp(std::log(z) / static_cast<double>(q));
}

std::complex<long double> branch_root(std::complex<long double> z, unsigned q) {
    if (q == 1) return z;
    if (z == 0.0L) return 0.0L;
    return std::exp(std::log(z) / static_cast<long double>(q));
}

std::string z_monomial(Rational e) {
    e.canonicalize();
    if (sgn(e) == 0) return "";
    if (e == 1) return "z";
    if (e.get_den() == 1) return "z^" + e.get_str();
    return "z^(" + e.get_str() + ")";
}

bool negative_looking(const GaussianRational& c) {
    return sgn(c.re()) < 0 || (sgn(c.re()) == 0 && sgn(c.im()) < 0);
}

/// Sum of c_k z^(k/q) rendered from the highest power down.
std::string render_sum(const Poly& p, unsigned q) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = p.coeffs().size(); k-- > 0;) {
        const auto& c = p.coeff(k);
        if (c.is_zero()) continue;
        bool neg = negative_looking(c) && (c.is_real() || sgn(c.re()) == 0);
        GaussianRational a = neg ? -c : c;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        std::string mono = z_monomial(Rational(static_cast<long>(k), q));
        if (mono.empty()) {
            os << a.str();
        } else if (a.is_one()) {
            os << mono;
        } else {
            std::string s = a.str();
            if (a.is_real() && a.re().get_den() != 1) s = "(" + s + ")";
            os << s << "*" << mono;
        }
    }
    return os.str();
}

bool sum_is_atomic(const Poly& p) {
    size_t nonzero = 0;
    for (const auto& c : p.coeffs()) nonzero += c.is_zero() ? 0 : 1;
    if (nonzero != 1) return p.is_zero();
    const auto& c = p.lead();
    if (p.degree() == 0) return c.is_atomic();
    return c.is_one();
}

}  // namespace

// ---------------------------------------------------------------- PuiseuxPoly

PuiseuxPoly::PuiseuxPoly(Poly p, unsigned q) : p_(std::move(p)), q_(q) {
    if (q_ == 0) fail(ErrorKind::PreconditionViolated, "ramification 0");
    if (p_.is_zero()) {
        q_ = 1;
        return;
    }
    unsigned g = p_.exponent_gcd(q_);
    if (g > 1) {
        p_ = p_.compress(g);
        q_ /= g;
    }
}

PuiseuxPoly PuiseuxPoly::z_power(const GaussianRational& c, const Rational& exponent) {
    if (sgn(exponent) < 0) fail(ErrorKind::PreconditionViolated, "negative exponent in polynomial");
    Rational e = exponent;
    e.canonicalize();
    unsigned q = static_cast<unsigned>(e.get_den().get_ui());
    size_t k = e.get_num().get_ui();
    return {Poly::monomial(c, k), q};
}

Poly PuiseuxPoly::in_ramification(unsigned q) const {
    if (q % q_ != 0) fail(ErrorKind::PreconditionViolated, "ramification is not a multiple");
    return p_.stretch(q / q_);
}

Rational PuiseuxPoly::degree() const {
    if (is_zero()) return Rational(-1);
    Rational r(p_.degree(), q_);
    r.canonicalize();
    return r;
}

GaussianRational PuiseuxPoly::coeff_at(const Rational& e) const {
    Rational k = e * q_;
    if (k.get_den() != 1 || sgn(k) < 0) return {};
    return p_.coeff(k.get_num().get_ui());
}

std::vector<std::pair<Rational, GaussianRational>> PuiseuxPoly::terms() const {
    std::vector<std::pair<Rational, GaussianRational>> out;
    for (size_t k = 0; k < p_.coeffs().size(); ++k) {
        if (p_.coeff(k).is_zero()) continue;
        Rational e(static_cast<long>(k), q_);
        e.canonicalize();
        out.emplace_back(e, p_.coeff(k));
    }
    return out;
}

RationalFunction PuiseuxPoly::derivative() const { return RationalFunction(*this).derivative(); }

std::complex<double> PuiseuxPoly::eval(std::complex<double> z) const { return p_.eval(branch_root(z, q_)); }

std::complex<long double> PuiseuxPoly::eval(std::complex<long double> z) const {
    return p_.eval(branch_root(z, q_));
}

PuiseuxPoly operator+(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    unsigned q = common_ramification(a.q_, b.q_);
    return {a.in_ramification(q) + b.in_ramification(q), q};
}

PuiseuxPoly operator-(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    unsigned q = common_ramification(a.q_, b.q_);
    return {a.in_ramification(q) - b.in_ramification(q), q};
}

PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    unsigned q = common_ramification(a.q_, b.q_);
    return {a.in_ramification(q) * b.in_ramification(q), q};
}

std::string PuiseuxPoly::str() const { return render_sum(p_, q_); }

int dominance_compare(const PuiseuxPoly& a, const PuiseuxPoly& b) {
    PuiseuxPoly d = a - b;
    if (d.is_zero()) return 0;
    const auto& c = d.lead();
    int s = sgn(c.re());
    if (s == 0) s = sgn(c.im());
    return s;
}

// ----------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(const PuiseuxPoly& p) : q_(p.ramification()), num_(p.poly()), den_(1) {}

RationalFunction::RationalFunction(Poly num, Poly den, unsigned q)
    : q_(q), num_(std::move(num)), den_(std::move(den)) {
    if (q_ == 0) fail(ErrorKind::PreconditionViolated, "ramification 0");
    canonicalize();
}

RationalFunction RationalFunction::from_coprime(Poly num, Poly den, unsigned q) {
    RationalFunction r;
    r.q_ = q;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.canonicalize(false);
    return r;
}

void RationalFunction::canonicalize(bool cancel) {
    if (den_.is_zero()) fail(ErrorKind::DivisionByZero, "rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = Poly(1);
        q_ = 1;
        return;
    }
    if (cancel && !den_.is_constant() && !num_.is_constant()) {
        Poly g = gcd(num_, den_);
        if (g.degree() >= 1) {
            num_ = *exact_div(num_, g);
            den_ = *exact_div(den_, g);
        }
    }
    if (!den_.lead().is_one()) {
        GaussianRational inv = den_.lead().inverse();
        num_ *= inv;
        den_ *= inv;
    }
    unsigned g = std::gcd(num_.exponent_gcd(q_), den_.exponent_gcd(q_));
    if (g > 1) {
        num_ = num_.compress(g);
        den_ = den_.compress(g);
        q_ /= g;
    }
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    unsigned q = common_ramification(q_, o.q_);
    Poly n1 = num_.stretch(q / q_), d1 = den_.stretch(q / q_);
    Poly n2 = o.num_.stretch(q / o.q_), d2 = o.den_.stretch(q / o.q_);
    if (d1 == d2) {
        *this = RationalFunction(n1 + n2, d1, q);
    } else if (d1.is_constant()) {
        *this = from_coprime(n1 * d2 + n2, d2, q);
    } else if (d2.is_constant()) {
        *this = from_coprime(n1 + n2 * d1, d1, q);
    } else {
        Poly g = gcd(d1, d2);
        if (g.degree() < 1) {
            *this = from_coprime(n1 * d2 + n2 * d1, d1 * d2, q);
        } else {
            Poly a1 = *exact_div(d1, g), a2 = *exact_div(d2, g);
            *this = RationalFunction(n1 * a2 + n2 * a1, d1 * a2, q);
        }
    }
    return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
    if (is_zero() || o.is_zero()) return *this = RationalFunction();
    unsigned q = common_ramification(q_, o.q_);
    Poly n1 = num_.stretch(q / q_), d1 = den_.stretch(q / q_);
    Poly n2 = o.num_.stretch(q / o.q_), d2 = o.den_.stretch(q / o.q_);
    if (d1.is_constant() && d2.is_constant()) {
        *this = from_coprime(n1 * n2, Poly(1), q);
        return *this;
    }
    // Cross-cancel before multiplying to keep degrees small.
    Poly g1 = n1.is_constant() || d2.is_constant() ? Poly(1) : gcd(n1, d2);
    Poly g2 = n2.is_constant() || d1.is_constant() ? Poly(1) : gcd(n2, d1);
    if (g1.degree() >= 1) {
        n1 = *exact_div(n1, g1);
        d2 = *exact_div(d2, g1);
    }
    if (g2.degree() >= 1) {
        n2 = *exact_div(n2, g2);
        d1 = *exact_div(d1, g2);
    }
    *this = from_coprime(n1 * n2, d1 * d2, q);
    return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
    if (o.is_zero()) fail(ErrorKind::DivisionByZero, "rational function division by zero");
    RationalFunction inv(o.den_, o.num_, o.q_);
    return *this *= inv;
}

RationalFunction RationalFunction::pow(long k) const {
    if (k < 0) {
        if (is_zero()) fail(ErrorKind::DivisionByZero, "negative power of zero");
        return RationalFunction(den_, num_, q_).pow(-k);
    }
    // num and den stay coprime under powers.
    RationalFunction r;
    r.q_ = q_;
    r.num_ = num_.pow(static_cast<unsigned>(k));
    r.den_ = den_.pow(static_cast<unsigned>(k));
    if (r.num_.is_zero()) return RationalFunction();
    return r;
}

RationalFunction RationalFunction::derivative() const {
    if (is_zero()) return {};
    // d/dz F(t) = t F_t(t) / (q t^q), t = z^(1/q)
    Poly scale = Poly::monomial(GaussianRational(static_cast<long>(q_)), q_);
    if (den_.is_constant()) {
        return RationalFunction(num_.derivative().shift(1), scale, q_);
    }
    Poly top = (num_.derivative() * den_ - num_ * den_.derivative()).shift(1);
    return RationalFunction(top, scale * den_ * den_, q_);
}

LeadingBehavior RationalFunction::leading() const {
    if (is_zero()) fail(ErrorKind::ZeroFunction, "leading behavior of 0");
    Rational e(num_.degree() - den_.degree(), q_);
    e.canonicalize();
    return {num_.lead() / den_.lead(), e};
}

std::complex<double> RationalFunction::eval(std::complex<double> z) const {
    auto t = branch_root(z, q_);
    return num_.eval(t) / den_.eval(t);
}

std::complex<long double> RationalFunction::eval(std::complex<long double> z) const {
    auto t = branch_root(z, q_);
    return num_.eval(t) / den_.eval(t);
}

std::string RationalFunction::str() const {
    std::string n = render_sum(num_, q_);
    if (den_.is_constant()) return n;
    std::string d = render_sum(den_, q_);
    if (!sum_is_atomic(num_)) n = "(" + n + ")";
    if (!sum_is_atomic(den_)) d = "(" + d + ")";
    return n + "/" + d;
}

bool RationalFunction::is_atomic() const { return den_.is_constant() && sum_is_atomic(num_); }

std::optional<RationalFunction> rf_nth_root(const RationalFunction& x, unsigned n) {
    if (n == 0) fail(ErrorKind::PreconditionViolated, "rf_nth_root with n = 0");
    if (x.is_zero()) fail(ErrorKind::ZeroFunction, "rf_nth_root of 0");
    auto rn = poly_nth_root(x.num(), n);
    if (!rn) return std::nullopt;
    auto rd = poly_nth_root(x.den(), n);
    if (!rd) return std::nullopt;
    RationalFunction y(*rn, *rd, x.ramification());
    if (y.pow(n) != x) return std::nullopt;
    return y;
}

namespace {

void resolve_factor(const Poly& factor, int mult, std::vector<PoleEntry>& out) {
    Poly f = factor.monic();
    if (f.degree() == 1) {
        out.push_back({-f.coeff(0), 0, mult});
        return;
    }
    if (f.degree() == 2) {
        GaussianRational b = f.coeff(1), c = f.coeff(0);
        GaussianRational disc = b * b - GaussianRational(4) * c;
        auto s = nth_roots(disc, 2);
        if (!s.empty()) {
            GaussianRational half(Rational(1, 2));
            out.push_back({(-b + s.front()) * half, 0, mult});
            out.push_back({(-b - s.front()) * half, 0, mult});
            return;
        }
        out.push_back({std::nullopt, 2, mult});
        return;
    }
    // Try to peel rational roots found numerically.
    for (const auto& r : numeric_roots(f)) {
        GaussianRational cand(rationalize(r.real(), 1000000), rationalize(r.imag(), 1000000));
        if (!f.eval(cand).is_zero()) continue;
        Poly lin(std::vector<GaussianRational>{-cand, GaussianRational(1)});
        out.push_back({cand, 0, mult});
        Poly rest = *exact_div(f, lin);
        if (rest.degree() >= 1) resolve_factor(rest, mult, out);
        return;
    }
    out.push_back({std::nullopt, static_cast<int>(f.degree()), mult});
}

}  // namespace

std::vector<PoleEntry> rf_pole_profile(const RationalFunction& x) {
    std::vector<PoleEntry> out;
    if (x.den().is_constant()) return out;
    for (const auto& [factor, mult] : squarefree_decomposition(x.den())) resolve_factor(factor, mult, out);
    unsigned q = x.ramification();
    if (q > 1) {
        std::vector<PoleEntry> merged;
        for (auto e : out) {
            if (e.location) e.location = e.location->pow(q);
            bool found = false;
            for (auto& m : merged) {
                if (m.location && e.location && *m.location == *e.location) {
                    m.multiplicity = std::max(m.multiplicity, e.multiplicity);
                    found = true;
                }
            }
            if (!found) merged.push_back(e);
        }
        out = std::move(merged);
    }
    std::stable_sort(out.begin(), out.end(), [](const PoleEntry& a, const PoleEntry& b) {
        if (a.location.has_value() != b.location.has_value()) return a.location.has_value();
        if (a.location && b.location) return lex_less(*a.location, *b.location);
        return a.unresolved_degree < b.unresolved_degree;
    });
    return out;
}

}  // namespace tcsolve
