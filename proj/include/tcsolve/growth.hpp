#pragma once

#include "tcsolve/nevanlinna_sample.hpp"
#include "tcsolve/rational_function.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace tcsolve {

/// log M(r, f) = type_coeff * r^order (1 + o(1)).
struct GrowthClass {
    Rational order;
    double type_coeff = 0.0;
    std::string source;
    /// Set when type_coeff is an exact rational.
    std::optional<Rational> exact_type;

    bool exact() const { return exact_type.has_value(); }
};

/// Either "every meromorphic solution is rational" or a growth class.
struct GrowthVerdict {
    bool rational = false;
    std::optional<GrowthClass> growth;
};

struct PoleCountBounds {
    long multi_zero_bound = 0;
    long pole_bound = 0;
    bool simple_zero_only = true;
};

/// Bounds for zeros of multiplicity >= 2 and poles of solutions of f'' + A f' + B f = 0:
/// simple poles of A plus double poles of B counted twice.
PoleCountBounds gc_lemma11_bounds(const RationalFunction& a, const RationalFunction& b);

/// f'' + R f' + S f = T with R = O(1/z).
GrowthVerdict gc_classify_l2(const RationalFunction& r, const RationalFunction& s);
/// f' + S f = T.
GrowthVerdict gc_classify_l3(const RationalFunction& s);

/// Leading data c z^e of a coefficient; coefficient may be irrational.
struct LeadingTerm {
    std::complex<double> coeff;
    Rational exponent;
    std::optional<GaussianRational> exact;

    static LeadingTerm of(const RationalFunction& x);
    static LeadingTerm numeric(std::complex<double> c, const Rational& e) { return {c, e, std::nullopt}; }
};

enum class OrdersCase { SDominant = 1, Intermediate = 2, RDominant = 3, Balanced = 4 };

/// Which case of the possible-orders analysis applies to deg R = n, deg S = m.
OrdersCase possible_orders_case(const Rational& n, const Rational& m);
bool possible_orders_case_applies(OrdersCase c, const Rational& n, const Rational& m);

/// Admissible (order, type) pairs for transcendental solutions of f'' + R f' + S f = T.
/// An empty list means every meromorphic solution is rational.
std::vector<GrowthClass> gc_possible_orders(const RationalFunction& r, const RationalFunction& s);
/// Same, from leading data; r = nullopt means R == 0.
std::vector<GrowthClass> gc_possible_orders(const std::optional<LeadingTerm>& r, const LeadingTerm& s);

struct BranchVerdict {
    std::string label;
    bool admissible = false;
    std::string reason;
    std::optional<GrowthClass> prediction;
    std::string contract;
};

struct Theo13Report {
    unsigned n = 0;
    GaussianRational c0;
    Rational m;
    std::optional<GaussianRational> c1;
    std::optional<Rational> l;
    /// C0 / C1^2 when r1 != 0.
    std::optional<GaussianRational> ratio;
    Rational critical_ratio;  // n(n-1)/(2n-1)^2
    std::vector<BranchVerdict> branches;

    const BranchVerdict& branch(const std::string& label) const;
};

Theo13Report gc_theo13_classify(unsigned n, const RationalFunction& r0, const RationalFunction& r1);

struct DeficiencyInput {
    double theta0 = 0.0;
    double delta_inf = 0.0;
    double theta_inf = 0.0;
    unsigned j = 1;
};

/// Sum Theta(0) + (j/2) delta(inf) + Theta(inf) used by the gate.
double deficiency_sum(const DeficiencyInput& d);
bool gc_deficiency_gate(const DeficiencyInput& d, unsigned gamma_weight, unsigned n);

struct Theo10Slack {
    double epsilon = 0.05;
    double log_factor = 10.0;
};

bool gc_theo10_bound_check(const std::vector<NevanlinnaSample>& samples, unsigned j, const Theo10Slack& slack = {});

}  // namespace tcsolve
