#pragma once

#include "tcsolve/diff_poly.hpp"

#include <string>
#include <vector>

namespace golden {

using namespace tcsolve;

inline RationalFunction Z() { return RationalFunction::z(); }
inline RationalFunction C(long v) { return RationalFunction(v); }
inline RationalFunction C(long p, long q) {
    Rational r(p, q);
    r.canonicalize();
    return RationalFunction(GaussianRational(r));
}
inline RationalFunction poly(std::vector<long> c) {
    std::vector<GaussianRational> g(c.begin(), c.end());
    return {Poly(g), Poly(1)};
}
/// e^(c z^(p/q)).
inline ExpPoly E(long c_num, long c_den, long p = 1, long q = 1) {
    Rational c(c_num, c_den), e(p, q);
    c.canonicalize();
    e.canonicalize();
    return ExpPoly::exp(PuiseuxPoly::z_power(GaussianRational(c), e));
}
inline DiffPoly F(unsigned k = 0) { return DiffPoly::f(k); }
inline DiffPoly K(const RationalFunction& c) { return DiffPoly(c); }

struct Instance {
    std::string name;
    TCEquation eq;
    ExpFraction solution;
};

/// e^(2z)/(e^z - 1): poles, no zeros.
inline ExpFraction pole_only() { return {E(2, 1), E(1, 1) - ExpPoly(1)}; }
/// e^z + 1/(e^z - 1): poles and zeros.
inline ExpFraction poles_and_zeros() { return ExpFraction(E(1, 1)) + ExpFraction(ExpPoly(1), E(1, 1) - ExpPoly(1)); }

inline TCEquation cc_equation() {
    RationalFunction s = poly({1, 1}).pow(2);
    return {3, -K(C(2) * s) * F(2) - K(s) * F(), E(3, 1) + ExpPoly(C(3) * poly({1, 1})) * E(2, 1)};
}

/// f^4 - (1/2) f'' f - (3/4) f'' + (19/4) f' - 8 f - 9 = (7/2) e^(2z) + e^(4z).
inline TCEquation quartic_no_solution() {
    DiffPoly p = -K(C(1, 2)) * F(2) * F() - K(C(3, 4)) * F(2) + K(C(19, 4)) * F(1) - K(C(8)) * F() - K(C(9));
    return {4, p, ExpPoly(C(7, 2)) * E(2, 1) + E(4, 1)};
}

inline TCEquation finite_poles_equation() {
    RationalFunction d = poly({-1, -5, 0, -4, 4});
    DiffPoly p = K(poly({3, -5, 1}) / (C(2) * d)) * F(2) - K(poly({4, -4, 1}) / d) * F(1);
    RationalFunction ratio = poly({1, 1}) / poly({-1, 1});
    return {3, p, ExpPoly(ratio.pow(3)) * E(3, 1, 2) + E(1, 1, 2)};
}

inline ExpPoly finite_poles_solution() { return ExpPoly(poly({1, 1}) / poly({-1, 1})) * E(1, 1, 2); }

/// f^3 + f'' + (k/2 - 1) f' - (3 + k^2/36 z^(k-2)) f = e^(z^(k/2)) + e^(-z^(k/2)) as printed;
/// the corrected form uses -(k-2)/(2z) f', matching f'' - (k-2)/(2z) f' - k^2/36 z^(k-2) f = 0.
inline Instance half_order(long k, bool corrected = false) {
    RationalFunction d1 = corrected ? C(-(k - 2), 2) * Z().pow(-1) : C(k - 2, 2);
    DiffPoly p = F(2) + K(d1) * F(1) - K(C(3) + C(k * k, 36) * Z().pow(k - 2)) * F();
    ExpPoly h = E(1, 1, k, 2) + E(-1, 1, k, 2);
    std::string name = "half-order k=" + std::to_string(k) + (corrected ? " (corrected)" : "");
    return {name, TCEquation(3, p, h), E(1, 3, k, 2) + E(-1, 3, k, 2)};
}

inline ExpFraction rational_h_solution() { return ExpFraction(ExpPoly(1), E(1, 1) - ExpPoly(1)) + ExpFraction(Z()); }

/// f^2 + f' - (2z - 1) f = h; printed h = -z^2 + z - 1, the solution gives -z^2 + z + 1.
inline TCEquation rational_h_quadratic(bool corrected = false) {
    return {2, F(1) - K(poly({-1, 2})) * F(), ExpPoly(poly({corrected ? 1 : -1, 1, -1}))};
}

/// The displays exactly as printed.
inline std::vector<Instance> all() {
    std::vector<Instance> out;
    out.push_back({"poles only, n=2", TCEquation(2, F(1) - K(C(3)) * F(), E(2, 1)), pole_only()});
    out.push_back({"poles only, n=3",
                   TCEquation(3, -K(C(1, 2)) * F(2) + K(C(9, 2)) * F(1) - K(C(10)) * F(), E(3, 1) + ExpPoly(C(3)) * E(2, 1)),
                   pole_only()});
    out.push_back({"poles and zeros, n=2", TCEquation(2, F(1) - F() - K(C(2)), E(2, 1)), poles_and_zeros()});
    out.push_back({"poles and zeros, n=3",
                   TCEquation(3, -K(C(1, 2)) * F(2) + K(C(3, 2)) * F(1) - K(C(4)) * F() - K(C(3)), E(3, 1)),
                   poles_and_zeros()});
    out.push_back({"poles and zeros, n=4",
                   TCEquation(4, K(C(1, 6)) * F(3) - F(2) + K(C(35, 6)) * F(1) - K(C(9)) * F() - K(C(10)),
                              E(4, 1) + ExpPoly(C(4)) * E(2, 1)),
                   poles_and_zeros()});
    out.push_back({"quarter exponents, n=4", TCEquation(4, -K(C(64)) * F() * F(2) + K(C(2)), E(1, 1) + E(-1, 1)),
                   ExpFraction(E(1, 4) + E(-1, 4))});
    ExpFraction rational_h_f = rational_h_solution();
    out.push_back({"rational h, n=2", rational_h_quadratic(), rational_h_f});
    out.push_back({"rational h, n=3",
                   TCEquation(3, -K(C(1, 2)) * F(2) + K(poly({0, 3}) - C(3, 2)) * F(1) - K(poly({1, -3, 3})) * F(),
                              ExpPoly(poly({0, 2, 3, -2}) - C(3, 2))),
                   rational_h_f});
    for (long k : {2, 4, 3}) out.push_back(half_order(k));
    out.push_back({"case 3 quick example", cc_equation(), ExpFraction(E(1, 1) + ExpPoly(poly({1, 1})))});
    out.push_back({"finitely many poles", finite_poles_equation(), ExpFraction(finite_poles_solution())});
    return out;
}

}  // namespace golden
