#pragma once

#include "tcsolve/scalar.hpp"

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tcsolve {

/// Dense univariate polynomial over Q(i). Coefficient k multiplies t^k.
/// No trailing zero coefficients are stored.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<GaussianRational> coeffs);
    Poly(const GaussianRational& c);  // NOLINT(google-explicit-constructor)
    Poly(long c) : Poly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)
    Poly(int c) : Poly(GaussianRational(c)) {}   // NOLINT(google-explicit-constructor)

    static Poly monomial(const GaussianRational& c, size_t k);
    static Poly var() { return monomial(GaussianRational(1), 1); }

    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    /// -1 for the zero polynomial.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    /// Index of the lowest nonzero coefficient (0 for the zero polynomial).
    size_t valuation() const;
    const GaussianRational& coeff(size_t k) const;
    const GaussianRational& lead() const;
    const std::vector<GaussianRational>& coeffs() const { return c_; }

    Poly monic() const;
    Poly derivative() const;
    Poly pow(unsigned k) const;
    /// p(t) -> p(t^k)
    Poly stretch(unsigned k) const;
    /// p(t^k) -> p(t); requires every exponent divisible by k.
    Poly compress(unsigned k) const;
    /// Multiply by t^k.
    Poly shift(size_t k) const;
    /// Divide by t^k; requires valuation >= k.
    Poly unshift(size_t k) const;
    /// t^deg * p(1/t)
    Poly reverse() const;
    /// gcd of q and all exponents carrying a nonzero coefficient.
    unsigned exponent_gcd(unsigned q) const;

    std::complex<double> eval(std::complex<double> t) const;
    std::complex<long double> eval(std::complex<long double> t) const;
    GaussianRational eval(const GaussianRational& t) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Poly& o);
    Poly& operator*=(const GaussianRational& s);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const GaussianRational& s) { return a *= s; }
    friend Poly operator*(const GaussianRational& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Human-readable rendering in the given variable name.
    std::string str(const std::string& var = "t") const;

private:
    void trim();
    std::vector<GaussianRational> c_;
};

/// Euclidean division a = q*b + r, deg r < deg b.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Exact quotient, or nullopt when b does not divide a.
std::optional<Poly> exact_div(const Poly& a, const Poly& b);
/// Monic gcd (zero only when both are zero).
Poly gcd(const Poly& a, const Poly& b);

/// Yun's squarefree decomposition of a monic polynomial: (factor, multiplicity).
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p);

/// y with y^n = p exactly, if one exists over Q(i).
std::optional<Poly> poly_nth_root(const Poly& p, unsigned n);

/// All complex roots (with repetition), companion matrix eigenvalues polished by Newton steps.
std::vector<std::complex<double>> numeric_roots(const Poly& p);

}  // namespace tcsolve
