#pragma once

#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace tcsolve {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact element of Q(i). Both parts are kept canonical by GMP.
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(int v) : re_(v) {}   // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |x|^2, exact.
    Rational norm() const { return re_ * re_ + im_ * im_; }
    GaussianRational inverse() const;

    GaussianRational operator-() const { return {-re_, -im_}; }
    GaussianRational& operator+=(const GaussianRational& o);
    GaussianRational& operator-=(const GaussianRational& o);
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    /// Lexicographic (re, im) order; used only for canonical sorting.
    friend bool lex_less(const GaussianRational& a, const GaussianRational& b) {
        if (a.re_ != b.re_) return a.re_ < b.re_;
        return a.im_ < b.im_;
    }

    GaussianRational pow(long k) const;

    std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }
    std::complex<long double> to_complex_ld() const;
    double abs() const;

    /// Parser-compatible rendering: "3", "-1/2", "i", "(1/2 + 3*i)".
    std::string str() const;
    /// True when str() needs no parentheses as a factor.
    bool is_atomic() const;

private:
    Rational re_{0};
    Rational im_{0};
};

/// Exact k-th root of a non-negative rational, if rational.
std::optional<Rational> rational_root(const Rational& x, unsigned k);

/// sqrt(|c|) = (re^2+im^2)^(1/4) when rational.
std::optional<Rational> sqrt_abs_exact(const GaussianRational& c);

/// All y in Q(i) with y^n = c (empty when c has no n-th root in Q(i)).
/// Sorted so that the root closest to the principal branch comes first.
std::vector<GaussianRational> nth_roots(const GaussianRational& c, unsigned n);

/// n-th roots of unity lying in Q(i), principal (1) first.
std::vector<GaussianRational> unit_roots_of_unity(unsigned n);

/// Best rational approximation with denominator <= max_den (continued fractions).
Rational rationalize(double x, long max_den);

std::string rational_str(const Rational& r);

}  // namespace tcsolve
