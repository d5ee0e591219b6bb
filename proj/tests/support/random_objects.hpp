#pragma once

#include "tcsolve/exp_poly.hpp"

#include <random>

namespace testgen {

using namespace tcsolve;

inline GaussianRational small_scalar(std::mt19937& rng, bool allow_imag = true) {
    std::uniform_int_distribution<int> d(-3, 3);
    std::uniform_int_distribution<int> den(1, 3);
    Rational re(d(rng), den(rng));
    re.canonicalize();
    Rational im(0);
    if (allow_imag && rng() % 4 == 0) {
        im = Rational(d(rng), den(rng));
        im.canonicalize();
    }
    return {re, im};
}

inline Poly small_poly(std::mt19937& rng, int max_deg, bool allow_imag = true) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    int d = deg(rng);
    std::vector<GaussianRational> c;
    for (int k = 0; k <= d; ++k) c.push_back(small_scalar(rng, allow_imag));
    return Poly(c);
}

inline Poly nonzero_poly(std::mt19937& rng, int max_deg, bool allow_imag = true) {
    for (;;) {
        Poly p = small_poly(rng, max_deg, allow_imag);
        if (!p.is_zero()) return p;
    }
}

inline RationalFunction small_rf(std::mt19937& rng, int max_deg = 2, bool allow_ramified = true) {
    unsigned q = (allow_ramified && rng() % 5 == 0) ? 2 : 1;
    Poly num = small_poly(rng, max_deg);
    Poly den = rng() % 2 == 0 ? Poly(1) : nonzero_poly(rng, max_deg);
    return RationalFunction(num, den, q);
}

inline RationalFunction nonzero_rf(std::mt19937& rng, int max_deg = 2, bool allow_ramified = true) {
    for (;;) {
        RationalFunction r = small_rf(rng, max_deg, allow_ramified);
        if (!r.is_zero()) return r;
    }
}

/// Exponent with zero constant term and degree in {1, 2}.
inline PuiseuxPoly small_exponent(std::mt19937& rng) {
    std::uniform_int_distribution<int> d(-2, 2);
    int deg = 1 + static_cast<int>(rng() % 2);
    std::vector<GaussianRational> c(deg + 1);
    for (int k = 1; k <= deg; ++k) c[k] = GaussianRational(d(rng));
    return {Poly(c), 1};
}

inline ExpPoly small_exp_poly(std::mt19937& rng, int max_terms = 2) {
    ExpPoly x;
    int terms = 1 + static_cast<int>(rng() % max_terms);
    for (int k = 0; k < terms; ++k) {
        RationalFunction c = nonzero_rf(rng, 1, false);
        if (rng() % 3 == 0) x += ExpPoly(c);
        else x += ExpPoly(c, small_exponent(rng));
    }
    return x;
}

}  // namespace testgen
