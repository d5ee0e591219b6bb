#pragma once

#include "tcsolve/exp_poly.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tcsolve {

/// Exponents of f, f', ..., f^(k); trailing zeros trimmed.
using PowerVector = std::vector<unsigned>;

struct DegreeWeight {
    unsigned degree = 0;
    unsigned weight = 0;
};

DegreeWeight monomial_degree_weight(const PowerVector& p);

/// Sum of coeff * f^n0 (f')^n1 ... (f^(k))^nk.
class DiffPoly {
public:
    using TermMap = std::map<PowerVector, RationalFunction>;

    DiffPoly() = default;
    DiffPoly(const RationalFunction& c);  // NOLINT(google-explicit-constructor)
    DiffPoly(long c) : DiffPoly(RationalFunction(c)) {}  // NOLINT(google-explicit-constructor)
    DiffPoly(int c) : DiffPoly(RationalFunction(c)) {}   // NOLINT(google-explicit-constructor)
    DiffPoly(const RationalFunction& coeff, PowerVector powers);

    /// The k-th derivative of the unknown.
    static DiffPoly f(unsigned order = 0);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Highest derivative order present (0 when only f or constants appear).
    unsigned max_order() const;
    RationalFunction constant_term() const;

    DiffPoly operator-() const;
    DiffPoly& operator+=(const DiffPoly& o);
    DiffPoly& operator-=(const DiffPoly& o);
    friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
    friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
    friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
    friend bool operator==(const DiffPoly& a, const DiffPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const DiffPoly& a, const DiffPoly& b) { return !(a == b); }

    DiffPoly pow(unsigned k) const;

    std::string str() const;

private:
    void add_term(PowerVector p, const RationalFunction& c);
    TermMap terms_;
};

DegreeWeight dp_degree_weight(const DiffPoly& p);
DiffPoly dp_total_derivative(const DiffPoly& p, unsigned order = 1);
ExpPoly dp_substitute(const DiffPoly& p, const ExpPoly& f);
ExpFraction dp_substitute(const DiffPoly& p, const ExpFraction& f);

/// f^n + P(z, f) = h(z), optionally with h'' + r1 h' + r0 h = r2.
class TCEquation {
public:
    TCEquation(unsigned n, DiffPoly p, ExpPoly h, std::optional<LinearOde> ode = std::nullopt);

    unsigned n() const { return n_; }
    const DiffPoly& p() const { return p_; }
    const ExpPoly& h() const { return h_; }
    const std::optional<LinearOde>& ode() const { return ode_; }
    /// Copy carrying an ODE for h (checked).
    TCEquation with_ode(const LinearOde& ode) const { return {n_, p_, h_, ode}; }
    /// Same equation with the ODE derived from h when h has one or two terms.
    TCEquation with_derived_ode() const;

    /// f^n + P(z, f) - h.
    ExpFraction residual(const ExpFraction& f) const;

    std::string str() const;

private:
    unsigned n_;
    DiffPoly p_;
    ExpPoly h_;
    std::optional<LinearOde> ode_;
};

/// r0 f^2 + n r1 f' f + n f'' f + n(n-1) (f')^2.
DiffPoly dp_build_phi(const TCEquation& eq);

/// -(P'' + r1 P' + r0 P - r2), with P', P'' total derivatives.
DiffPoly dp_build_q(const TCEquation& eq);

/// phi_j = f^(j-2) phi, stored as phi with a power shift of f.
struct PhiMember {
    DiffPoly phi;
    int f_shift;
};

PhiMember dp_phi_member(const TCEquation& eq, unsigned j);
ExpFraction dp_evaluate(const PhiMember& m, const ExpFraction& f);

struct PsiAbc {
    ExpFraction psi;
    ExpFraction a;
    ExpFraction b;
    ExpFraction c;
    /// a f^2 + b f' f + c (f')^2 == phi_value; holds whenever phi_value is phi(f).
    bool consistent;
};

/// psi and the coefficients a, b, c with a f^2 + b f' f + c (f')^2 = phi.
PsiAbc dp_build_psi_abc(const TCEquation& eq, const ExpFraction& phi_value, const ExpFraction& f);

bool dp_liao_check(const RationalFunction& a, const RationalFunction& b, const RationalFunction& c,
                   const RationalFunction& d);

}  // namespace tcsolve
