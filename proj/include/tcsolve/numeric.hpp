#pragma once

#include "tcsolve/exp_poly.hpp"
#include "tcsolve/nevanlinna_sample.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace tcsolve {

using ComplexLD = std::complex<long double>;

struct TaylorSeries {
    std::vector<ComplexLD> coeffs;
    std::string source;

    ComplexLD eval(ComplexLD z) const;
};

TaylorSeries nl_series_explicit(std::vector<ComplexLD> coeffs);

/// Series of sum_k p[k](z) f^(k) = 0 at z = 0; init holds f(0), f'(0), ... (one per order).
TaylorSeries nl_series_from_ode(const std::vector<Poly>& p, const std::vector<ComplexLD>& init, size_t n_terms);
/// h'' + r1 h' + r0 h = 0 with denominators cleared; r2 must vanish.
TaylorSeries nl_series_from_ode(const LinearOde& ode, const std::vector<ComplexLD>& init, size_t n_terms);

struct CentralIndex {
    long nu = 0;
    /// log of the maximal term.
    double log_mu = 0.0;
};

CentralIndex nl_central_index(const TaylorSeries& s, double r);

/// log max |f| on |z| = r over a grid with three local refinement rounds.
double nl_log_max_modulus(const ExpFraction& f, double r, int grid = 256);
double nl_log_max_modulus(const TaylorSeries& s, double r, int grid = 256);

/// Zeros in |z| < r by the argument principle, of f times the lcm of its coefficient denominators
/// (a removable point of f at a coefficient pole counts as a zero).
long nl_count_zeros(const ExpPoly& f, double r);

struct NevanlinnaOptions {
    int grid = 256;
    double rel_tol = 1e-3;
    /// Radius is pushed out by this fraction when a zero or pole lies within half of it (relative to r).
    double pole_margin = 1e-2;
};

/// Sample on |z| = r; r may be nudged outward to avoid poles. Reduced counts equal
/// the full counts, which assumes simple zeros and poles.
NevanlinnaSample nl_nevanlinna(const ExpFraction& f, double r, const NevanlinnaOptions& opt = {});
/// Sample of an entire function given by its series (N = 0, T = m).
NevanlinnaSample nl_series_sample(const TaylorSeries& s, double r, int grid = 256);

struct OrderType {
    double rho = 0.0;
    double type = 0.0;
};

/// Least squares of log log M against log r gives rho; type is the mean of log M / r^rho over the top half.
OrderType nl_fit_order_type(const std::vector<NevanlinnaSample>& samples);

std::vector<double> nl_default_radii();
/// Default ladder scaled by powers of 1.5 until log M at the smallest radius reaches min_log_max.
std::vector<double> nl_adaptive_radii(const std::function<double(double)>& log_max, double min_log_max = 20.0);

/// CSV with header r,T,m,N,nu,logM,zeros and 12 significant digits.
std::string nl_sample_table(const std::vector<NevanlinnaSample>& samples);

}  // namespace tcsolve
