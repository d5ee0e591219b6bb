#pragma once

#include "tcsolve/polynomial.hpp"

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace tcsolve {

class RationalFunction;

/// Polynomial in t = z^(1/q). Canonical: q is the smallest ramification that
/// represents the value.
class PuiseuxPoly {
public:
    PuiseuxPoly() = default;
    PuiseuxPoly(Poly p, unsigned q);
    PuiseuxPoly(const GaussianRational& c) : PuiseuxPoly(Poly(c), 1) {}  // NOLINT(google-explicit-constructor)
    PuiseuxPoly(long c) : PuiseuxPoly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)

    static PuiseuxPoly z() { return {Poly::var(), 1}; }
    /// c * z^(num/den) with num >= 0.
    static PuiseuxPoly z_power(const GaussianRational& c, const Rational& exponent);

    unsigned ramification() const { return q_; }
    const Poly& poly() const { return p_; }
    /// The polynomial re-expressed over t = z^(1/q), q a multiple of ramification().
    Poly in_ramification(unsigned q) const;

    bool is_zero() const { return p_.is_zero(); }
    bool is_constant() const { return p_.is_constant(); }
    GaussianRational constant_term() const { return p_.coeff(0); }
    /// Degree in z (possibly fractional); -1 for zero.
    Rational degree() const;
    GaussianRational lead() const { return p_.lead(); }
    /// Coefficient of z^e (e a rational exponent).
    GaussianRational coeff_at(const Rational& e) const;
    /// All (exponent in z, coefficient) pairs, ascending.
    std::vector<std::pair<Rational, GaussianRational>> terms() const;

    RationalFunction derivative() const;
    std::complex<double> eval(std::complex<double> z) const;
    std::complex<long double> eval(std::complex<long double> z) const;

    PuiseuxPoly operator-() const { return {-p_, q_}; }
    friend PuiseuxPoly operator+(const PuiseuxPoly& a, const PuiseuxPoly& b);
    friend PuiseuxPoly operator-(const PuiseuxPoly& a, const PuiseuxPoly& b);
    friend PuiseuxPoly operator*(const PuiseuxPoly& a, const PuiseuxPoly& b);
    friend PuiseuxPoly operator*(const GaussianRational& s, const PuiseuxPoly& a) { return {a.p_ * s, a.q_}; }
    friend PuiseuxPoly operator/(const PuiseuxPoly& a, const GaussianRational& s) {
        return {a.p_ * s.inverse(), a.q_};
    }
    friend bool operator==(const PuiseuxPoly& a, const PuiseuxPoly& b) { return a.q_ == b.q_ && a.p_ == b.p_; }
    friend bool operator!=(const PuiseuxPoly& a, const PuiseuxPoly& b) { return !(a == b); }

    /// Parser-compatible rendering in z.
    std::string str() const;

private:
    Poly p_;
    unsigned q_ = 1;
};

/// Total order on exponents by dominance along the positive real axis:
/// compares the difference's highest coefficient (re first, then im).
int dominance_compare(const PuiseuxPoly& a, const PuiseuxPoly& b);

struct LeadingBehavior {
    GaussianRational coeff;
    Rational exponent;
};

/// Exact ratio num/den of polynomials in t = z^(1/q); gcd(num, den) = 1, den monic.
class RationalFunction {
public:
    RationalFunction() : den_(1) {}
    RationalFunction(const GaussianRational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(long c) : RationalFunction(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)
    RationalFunction(int c) : RationalFunction(GaussianRational(c)) {}   // NOLINT(google-explicit-constructor)
    RationalFunction(const PuiseuxPoly& p);  // NOLINT(google-explicit-constructor)
    RationalFunction(Poly num, Poly den, unsigned q = 1);

    static RationalFunction z() { return {Poly::var(), Poly(1), 1}; }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    unsigned ramification() const { return q_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return den_.is_constant() && num_.is_constant(); }
    bool is_one() const { return is_constant() && num_.coeff(0).is_one(); }
    /// Value when constant.
    GaussianRational constant_value() const { return num_.coeff(0); }
    /// True when den == 1 (a Puiseux polynomial).
    bool is_polynomial() const { return den_.is_constant(); }
    PuiseuxPoly numerator_poly() const { return {num_, q_}; }
    PuiseuxPoly denominator_poly() const { return {den_, q_}; }

    RationalFunction operator-() const;
    RationalFunction& operator+=(const RationalFunction& o);
    RationalFunction& operator-=(const RationalFunction& o);
    RationalFunction& operator*=(const RationalFunction& o);
    RationalFunction& operator/=(const RationalFunction& o);
    friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
    friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
    friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
    friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.q_ == b.q_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

    RationalFunction pow(long k) const;
    RationalFunction derivative() const;
    /// (C, m) with x = C z^m (1 + o(1)) as z -> infinity.
    LeadingBehavior leading() const;
    /// Degree at infinity, deg num - deg den in z units; throws ZeroFunction for 0.
    Rational degree_at_infinity() const { return leading().exponent; }

    std::complex<double> eval(std::complex<double> z) const;
    std::complex<long double> eval(std::complex<long double> z) const;

    /// Parser-compatible rendering in z.
    std::string str() const;
    /// True when str() can be used as a factor without parentheses.
    bool is_atomic() const;

private:
    /// Skips the gcd; num and den must already be coprime.
    static RationalFunction from_coprime(Poly num, Poly den, unsigned q);
    void canonicalize(bool cancel = true);
    unsigned q_ = 1;
    Poly num_;
    Poly den_;
};

/// Conversion of a value and ramification pair to a common ramification.
unsigned common_ramification(unsigned a, unsigned b);

std::optional<RationalFunction> rf_nth_root(const RationalFunction& x, unsigned n);

struct PoleEntry {
    /// Exact location when resolved in Q(i).
    std::optional<GaussianRational> location;
    /// Degree of the unresolved irreducible-over-Q(i) factor (0 when resolved).
    int unresolved_degree = 0;
    int multiplicity = 0;
};

/// Multiplicity profile of the finite poles of x (roots of its denominator).
std::vector<PoleEntry> rf_pole_profile(const RationalFunction& x);

}  // namespace tcsolve
