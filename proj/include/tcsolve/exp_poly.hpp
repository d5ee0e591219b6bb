#pragma once

#include "tcsolve/rational_function.hpp"

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace tcsolve {

/// Orders exponents from most to least dominant.
struct DominanceGreater {
    bool operator()(const PuiseuxPoly& a, const PuiseuxPoly& b) const { return dominance_compare(a, b) > 0; }
};

/// value = mantissa * e^(log_scale); keeps huge exponentials representable.
struct ScaledValue {
    std::complex<double> mantissa;
    double log_scale = 0.0;

    double log_abs() const;
    ScaledValue operator*(const ScaledValue& o) const { return {mantissa * o.mantissa, log_scale + o.log_scale}; }
    ScaledValue operator/(const ScaledValue& o) const { return {mantissa / o.mantissa, log_scale - o.log_scale}; }
};

/// Finite sum of R_i(z) e^(A_i(z)), A_i(0) = 0, exponents distinct, coefficients nonzero.
class ExpPoly {
public:
    using TermMap = std::map<PuiseuxPoly, RationalFunction, DominanceGreater>;

    ExpPoly() = default;
    ExpPoly(const RationalFunction& r);  // NOLINT(google-explicit-constructor)
    ExpPoly(const GaussianRational& c) : ExpPoly(RationalFunction(c)) {}  // NOLINT(google-explicit-constructor)
    ExpPoly(long c) : ExpPoly(RationalFunction(c)) {}  // NOLINT(google-explicit-constructor)
    ExpPoly(int c) : ExpPoly(RationalFunction(c)) {}   // NOLINT(google-explicit-constructor)
    /// coeff * e^exponent; the exponent must vanish at 0.
    ExpPoly(const RationalFunction& coeff, const PuiseuxPoly& exponent);

    static ExpPoly exp(const PuiseuxPoly& exponent) { return {RationalFunction(1), exponent}; }

    const TermMap& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    /// Single term with exponent 0 (or zero).
    bool is_rational() const;
    std::optional<RationalFunction> as_rational() const;
    /// Most dominant term.
    std::pair<PuiseuxPoly, RationalFunction> leading_term() const;
    std::pair<PuiseuxPoly, RationalFunction> trailing_term() const;
    /// Coefficient of e^exponent (0 if absent).
    RationalFunction coeff_of(const PuiseuxPoly& exponent) const;

    ExpPoly operator-() const;
    ExpPoly& operator+=(const ExpPoly& o);
    ExpPoly& operator-=(const ExpPoly& o);
    friend ExpPoly operator+(ExpPoly a, const ExpPoly& b) { return a += b; }
    friend ExpPoly operator-(ExpPoly a, const ExpPoly& b) { return a -= b; }
    friend ExpPoly operator*(const ExpPoly& a, const ExpPoly& b);
    friend ExpPoly operator*(const RationalFunction& r, const ExpPoly& a);
    friend bool operator==(const ExpPoly& a, const ExpPoly& b);
    friend bool operator!=(const ExpPoly& a, const ExpPoly& b) { return !(a == b); }

    ExpPoly pow(unsigned k) const;
    ExpPoly derivative(unsigned order = 1) const;
    /// Multiply by e^shift (shift(0) = 0 required).
    ExpPoly shifted(const PuiseuxPoly& shift) const;

    ScaledValue eval(std::complex<double> z) const;

    /// Parser-compatible rendering.
    std::string str() const;

private:
    void add_term(const PuiseuxPoly& e, const RationalFunction& c);
    TermMap terms_;
};

bool ep_is_zero(const ExpPoly& x);

struct GrowthData {
    Rational s;
    /// (a_j, index of the term in dominance order)
    std::vector<std::pair<GaussianRational, size_t>> leaders;
};

GrowthData ep_growth(const ExpPoly& x);

struct CharacteristicLeading {
    double coefficient;
    Rational exponent;
};

/// Leading term of T(r, x) / r^s for a two-term exponential sum.
CharacteristicLeading ep_characteristic_leading(const ExpPoly& x);

struct LinearOde {
    RationalFunction r0;
    RationalFunction r1;
    RationalFunction r2;
};

/// r1, r0 with h_i'' + r1 h_i' + r0 h_i = 0 for two single-term inputs.
std::pair<RationalFunction, RationalFunction> ep_derive_linear_ode(const ExpPoly& h1, const ExpPoly& h2);

/// Homogeneous ODE for h with one or two terms (split into single-term solutions).
LinearOde ep_ode_for(const ExpPoly& h);

/// Residual h'' + r1 h' + r0 h - r2.
ExpPoly ode_residual(const LinearOde& ode, const ExpPoly& h);

/// Exact quotient a / b, or nullopt when b does not divide a.
std::optional<ExpPoly> try_divide(const ExpPoly& a, const ExpPoly& b, int max_steps = 400);

/// Quotient of exponential polynomials; the denominator is never zero.
class ExpFraction {
public:
    ExpFraction() : den_(1) {}
    ExpFraction(const ExpPoly& num) : num_(num), den_(1) {}  // NOLINT(google-explicit-constructor)
    ExpFraction(const RationalFunction& r) : num_(r), den_(1) {}  // NOLINT(google-explicit-constructor)
    ExpFraction(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
    ExpFraction(int c) : num_(c), den_(1) {}   // NOLINT(google-explicit-constructor)
    ExpFraction(ExpPoly num, ExpPoly den);

    const ExpPoly& num() const { return num_; }
    const ExpPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_exp_poly() const { return den_ == ExpPoly(1); }
    std::optional<ExpPoly> as_exp_poly() const;
    std::optional<RationalFunction> as_rational() const;

    ExpFraction operator-() const { return {-num_, den_}; }
    friend ExpFraction operator+(const ExpFraction& a, const ExpFraction& b);
    friend ExpFraction operator-(const ExpFraction& a, const ExpFraction& b) { return a + (-b); }
    friend ExpFraction operator*(const ExpFraction& a, const ExpFraction& b);
    friend ExpFraction operator/(const ExpFraction& a, const ExpFraction& b);
    /// Value equality (cross multiplication).
    friend bool operator==(const ExpFraction& a, const ExpFraction& b);
    friend bool operator!=(const ExpFraction& a, const ExpFraction& b) { return !(a == b); }

    ExpFraction pow(unsigned k) const;
    ExpFraction derivative(unsigned order = 1) const;
    /// Cancels what exact division can; normalizes the denominator's leading term to 1.
    ExpFraction simplified() const;

    ScaledValue eval(std::complex<double> z) const { return num_.eval(z) / den_.eval(z); }

    std::string str() const;

private:
    void reduce_light();
    ExpPoly num_;
    ExpPoly den_;
};

}  // namespace tcsolve
