#include "tcsolve/scalar.hpp"

#include "tcsolve/errors.hpp"

#include <cmath>
#include <sstream>

namespace tcsolve {

const char* to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DivisionByZero: return "DivisionByZero";
        case ErrorKind::ZeroFunction: return "ZeroFunction";
        case ErrorKind::ConstantExponentOnly: return "ConstantExponentOnly";
        case ErrorKind::WrongShape: return "WrongShape";
        case ErrorKind::LinearlyDependent: return "LinearlyDependent";
        case ErrorKind::NonRationalResult: return "NonRationalResult";
        case ErrorKind::NonzeroExponentConstant: return "NonzeroExponentConstant";
        case ErrorKind::OdeMismatch: return "OdeMismatch";
        case ErrorKind::MissingOde: return "MissingODE";
        case ErrorKind::PhiVanishes: return "PhiVanishes";
        case ErrorKind::PreconditionViolated: return "PreconditionViolated";
        case ErrorKind::ZeroS: return "ZeroS";
        case ErrorKind::ZeroR0: return "ZeroR0";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::RatioMismatch: return "RatioMismatch";
        case ErrorKind::SingularOrigin: return "SingularOrigin";
        case ErrorKind::TruncationTooShort: return "TruncationTooShort";
        case ErrorKind::PoleOnCircle: return "PoleOnCircle";
        case ErrorKind::QuadratureNearPole: return "QuadratureNearPole";
        case ErrorKind::ContourTooClose: return "ContourTooClose";
        case ErrorKind::InsufficientSamples: return "InsufficientSamples";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::UnknownSymbol: return "UnknownSymbol";
        case ErrorKind::RamificationError: return "RamificationError";
        case ErrorKind::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) fail(ErrorKind::DivisionByZero, "inverse of 0 in Q(i)");
    Rational n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
    if (o.is_zero()) fail(ErrorKind::DivisionByZero, "division by 0 in Q(i)");
    if (sgn(o.im_) == 0) {
        re_ /= o.re_;
        im_ /= o.re_;
        return *this;
    }
    return *this *= o.inverse();
}

GaussianRational GaussianRational::pow(long k) const {
    if (k < 0) return inverse().pow(-k);
    GaussianRational result(1);
    GaussianRational base = *this;
    while (k > 0) {
        if (k & 1) result *= base;
        base *= base;
        k >>= 1;
    }
    return result;
}

std::complex<long double> GaussianRational::to_complex_ld() const {
    // mpq -> long double through a decimal string keeps the extra mantissa bits.
    auto cvt = [](const Rational& q) -> long double {
        if (sgn(q) == 0) return 0.0L;
        mpf_class f(q, 128);
        long exp = 0;
        double mant = mpf_get_d_2exp(&exp, f.get_mpf_t());
        return std::ldexp(static_cast<long double>(mant), static_cast<int>(exp));
    };
    return {cvt(re_), cvt(im_)};
}

double GaussianRational::abs() const { return std::sqrt(norm().get_d()); }

std::string rational_str(const Rational& r) {
    return r.get_str();
}

std::string GaussianRational::str() const {
    if (sgn(im_) == 0) return rational_str(re_);
    std::string imag;
    if (im_ == 1) {
        imag = "i";
    } else if (im_ == -1) {
        imag = "-i";
    } else if (im_.get_den() == 1) {
        imag = rational_str(im_) + "*i";
    } else {
        imag = rational_str(im_) + "*i";
    }
    if (sgn(re_) == 0) return imag;
    std::ostringstream os;
    os << "(" << rational_str(re_);
    if (sgn(im_) < 0) {
        Rational a = -im_;
        os << " - " << (a == 1 ? std::string("i") : rational_str(a) + "*i");
    } else {
        os << " + " << (im_ == 1 ? std::string("i") : rational_str(im_) + "*i");
    }
    os << ")";
    return os.str();
}

bool GaussianRational::is_atomic() const {
    if (sgn(im_) == 0) return sgn(re_) >= 0 && re_.get_den() == 1;
    return sgn(re_) == 0 && im_ == 1;
}

std::optional<Rational> rational_root(const Rational& x, unsigned k) {
    if (sgn(x) < 0) return std::nullopt;
    if (k == 1) return x;
    Integer num, den;
    if (mpz_root(num.get_mpz_t(), x.get_num_mpz_t(), k) == 0) return std::nullopt;
    if (mpz_root(den.get_mpz_t(), x.get_den_mpz_t(), k) == 0) return std::nullopt;
    Rational r(num, den);
    r.canonicalize();
    return r;
}

std::optional<Rational> sqrt_abs_exact(const GaussianRational& c) { return rational_root(c.norm(), 4); }

namespace {

struct MpfComplex {
    mpf_class re;
    mpf_class im;
};

MpfComplex mul(const MpfComplex& a, const MpfComplex& b, mp_bitcnt_t prec) {
    MpfComplex r{mpf_class(0, prec), mpf_class(0, prec)};
    r.re = a.re * b.re - a.im * b.im;
    r.im = a.re * b.im + a.im * b.re;
    return r;
}

MpfComplex div(const MpfComplex& a, const MpfComplex& b, mp_bitcnt_t prec) {
    mpf_class d(b.re * b.re + b.im * b.im, prec);
    MpfComplex r{mpf_class(0, prec), mpf_class(0, prec)};
    r.re = (a.re * b.re + a.im * b.im) / d;
    r.im = (a.im * b.re - a.re * b.im) / d;
    return r;
}

Integer round_to_integer(const mpf_class& x) {
    mpf_class h(x + 0.5, x.get_prec());
    mpf_class fl(0, x.get_prec());
    mpf_floor(fl.get_mpf_t(), h.get_mpf_t());
    return Integer(fl);
}

}  // namespace

std::vector<GaussianRational> nth_roots(const GaussianRational& c, unsigned n) {
    if (n == 0) fail(ErrorKind::PreconditionViolated, "nth_roots with n = 0");
    if (c.is_zero()) return {GaussianRational(0)};
    if (n == 1) return {c};

    // c = g / D with g a Gaussian integer; w = c * D^n is a Gaussian integer and any
    // root y of c gives the Gaussian integer root y*D of w (Z[i] is integrally closed).
    Integer D;
    mpz_lcm(D.get_mpz_t(), c.re().get_den_mpz_t(), c.im().get_den_mpz_t());
    Integer Dn;
    mpz_pow_ui(Dn.get_mpz_t(), D.get_mpz_t(), n);
    GaussianRational w = c * GaussianRational(Rational(Dn));

    // |y*D|^2 must be an exact n-th root of N(w).
    auto mod2 = rational_root(w.norm(), n);
    if (!mod2) return {};

    size_t bits = mpz_sizeinbase(w.re().get_num_mpz_t(), 2) + mpz_sizeinbase(w.im().get_num_mpz_t(), 2);
    mp_bitcnt_t prec = static_cast<mp_bitcnt_t>(bits + 128);

    std::complex<long double> wl = w.to_complex_ld();
    long double radius = std::pow(std::abs(wl), 1.0L / n);
    long double arg0 = std::arg(wl) / n;
    const long double two_pi = 6.283185307179586476925286766559L;

    MpfComplex target{mpf_class(w.re(), prec), mpf_class(w.im(), prec)};
    std::vector<GaussianRational> roots;
    for (unsigned k = 0; k < n; ++k) {
        long double a = arg0 + two_pi * k / n;
        MpfComplex y{mpf_class(static_cast<double>(radius * std::cos(a)), prec),
                     mpf_class(static_cast<double>(radius * std::sin(a)), prec)};
        if (!std::isfinite(static_cast<double>(radius))) break;
        for (int it = 0; it < 60; ++it) {
            // Newton step y <- y - (y^n - w) / (n y^(n-1))
            MpfComplex p{mpf_class(1, prec), mpf_class(0, prec)};
            for (unsigned j = 0; j + 1 < n; ++j) p = mul(p, y, prec);
            MpfComplex yn = mul(p, y, prec);
            MpfComplex num{mpf_class(yn.re - target.re, prec), mpf_class(yn.im - target.im, prec)};
            MpfComplex den{mpf_class(p.re * n, prec), mpf_class(p.im * n, prec)};
            if (sgn(den.re) == 0 && sgn(den.im) == 0) break;
            MpfComplex step = div(num, den, prec);
            y.re -= step.re;
            y.im -= step.im;
            mpf_class sz(abs(step.re) + abs(step.im), prec);
            if (sz < mpf_class(1e-30, prec)) break;
        }
        GaussianRational cand{Rational(round_to_integer(y.re)), Rational(round_to_integer(y.im))};
        if (cand.pow(static_cast<long>(n)) == w) {
            GaussianRational r = cand / GaussianRational(Rational(D));
            bool dup = false;
            for (const auto& e : roots) dup = dup || e == r;
            if (!dup) roots.push_back(r);
        }
    }
    return roots;
}

std::vector<GaussianRational> unit_roots_of_unity(unsigned n) {
    std::vector<GaussianRational> units{GaussianRational(1), GaussianRational::i(), GaussianRational(-1),
                                        -GaussianRational::i()};
    std::vector<GaussianRational> out;
    for (const auto& u : units) {
        if (u.pow(static_cast<long>(n)).is_one()) out.push_back(u);
    }
    return out;
}

Rational rationalize(double x, long max_den) {
    if (!std::isfinite(x)) fail(ErrorKind::InvalidInput, "rationalize of non-finite value");
    long sign = x < 0 ? -1 : 1;
    double v = std::fabs(x);
    // Convergents p_k / q_k.
    Integer p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double frac = v;
    for (int it = 0; it < 64; ++it) {
        double a = std::floor(frac);
        Integer ai(a);
        Integer p2 = ai * p1 + p0;
        Integer q2 = ai * q1 + q0;
        if (q2 > max_den) break;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        double rem = frac - a;
        if (rem < 1e-18) break;
        frac = 1.0 / rem;
        if (!std::isfinite(frac)) break;
    }
    if (q1 == 0) return Rational(0);
    Rational r(p1 * sign, q1);
    r.canonicalize();
    return r;
}

}  // namespace tcsolve
