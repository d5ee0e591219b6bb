#include "tcsolve/numeric.hpp"

#include "tcsolve/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

namespace tcsolve {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMaxGrid = 1 << 16;

std::complex<double> on_circle(double r, double theta) { return std::polar(r, theta); }

/// Mean of g over |z| = r by trapezoid with grid doubling; nullopt when it does not settle.
template <class G>
std::optional<double> circle_mean(const G& g, int grid, double rel_tol) {
    double sum = 0.0;
    for (int k = 0; k < grid; ++k) sum += g(kTwoPi * k / grid);
    double prev = sum / grid;
    for (int n = grid * 2; n <= kMaxGrid; n *= 2) {
        for (int k = 1; k < n; k += 2) sum += g(kTwoPi * k / n);
        double cur = sum / n;
        if (!std::isfinite(cur)) return std::nullopt;
        if (std::abs(cur - prev) <= rel_tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return std::nullopt;
}

Poly lcm(const Poly& a, const Poly& b) {
    Poly g = gcd(a, b);
    return *exact_div(a * b, g);
}

/// x times the lcm of its coefficient denominators: an entire exponential polynomial.
struct Cleared {
    ExpPoly entire;
    Poly cleared;  // the lcm, as a polynomial in z
};

Cleared clear_denominators(const ExpPoly& x) {
    Poly l(1);
    for (const auto& [e, c] : x.terms()) {
        if (c.ramification() != 1 && !c.den().is_constant())
            fail(ErrorKind::InvalidInput, "ramified coefficient denominators are not supported numerically");
        l = lcm(l, c.den());
    }
    return {RationalFunction(l, Poly(1)) * x, l};
}

/// Sum over roots a of p with |a| < r of log(r/|a|), roots at 0 contributing log r.
double polynomial_counting(const Poly& p, double r) {
    if (p.is_constant()) return 0.0;
    double total = 0.0;
    for (auto a : numeric_roots(p)) {
        double m = std::abs(a);
        if (m < 1e-12) total += std::log(r);
        else if (m < r) total += std::log(r / m);
    }
    return total;
}

long polynomial_roots_inside(const Poly& p, double r) {
    if (p.is_constant()) return 0;
    long n = 0;
    for (auto a : numeric_roots(p)) n += std::abs(a) < r ? 1 : 0;
    return n;
}

/// log |c_k| for the first nonvanishing Taylor coefficient of an entire g at 0 (Cauchy integrals).
double log_leading_taylor(const ExpPoly& g) {
    const double rho = 0.5;
    const int m = 256;
    std::vector<std::complex<double>> vals(m);
    double scale = 0.0;
    for (int k = 0; k < m; ++k) {
        ScaledValue v = g.eval(on_circle(rho, kTwoPi * k / m));
        vals[k] = v.mantissa * std::exp(v.log_scale);
        scale = std::max(scale, std::abs(vals[k]));
    }
    for (int j = 0; j < 48; ++j) {
        std::complex<double> c = 0.0;
        for (int k = 0; k < m; ++k) c += vals[k] * std::polar(1.0, -kTwoPi * j * k / m);
        c /= static_cast<double>(m);
        if (std::abs(c) > 1e-10 * scale) return std::log(std::abs(c)) - j * std::log(rho);
    }
    fail(ErrorKind::ZeroFunction, "no nonvanishing Taylor coefficient found");
}

/// N(r, 1/g) = (1/2pi) int log|g| - log|c_k| for entire g (Jensen).
std::optional<double> jensen_counting(const ExpPoly& g, double r, const NevanlinnaOptions& opt) {
    if (g.is_rational() && g.as_rational()->is_constant()) return 0.0;
    auto mean = circle_mean([&](double t) { return g.eval(on_circle(r, t)).log_abs(); }, opt.grid, opt.rel_tol);
    if (!mean) return std::nullopt;
    return *mean - log_leading_taylor(g);
}

ComplexLD horner(const std::vector<ComplexLD>& c, ComplexLD z) {
    ComplexLD acc = 0.0L;
    for (size_t k = c.size(); k-- > 0;) acc = acc * z + c[k];
    return acc;
}

ComplexLD to_ld(const GaussianRational& c) { return c.to_complex_ld(); }

template <class LogAbs>
double refine_max(const LogAbs& log_abs, int grid) {
    if (grid < 64) fail(ErrorKind::InvalidInput, "max modulus grid must be at least 64");
    double best = -std::numeric_limits<double>::infinity(), best_t = 0.0;
    for (int k = 0; k < grid; ++k) {
        double t = kTwoPi * k / grid;
        double v = log_abs(t);
        if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
            std::ostringstream os;
            os << "evaluation overflow at theta = " << t;
            fail(ErrorKind::PoleOnCircle, os.str());
        }
        if (v > best) best = v, best_t = t;
    }
    double h = kTwoPi / grid;
    for (int round = 0; round < 3; ++round) {
        double centre = best_t;
        for (int k = -8; k <= 8; ++k) {
            double t = centre + h * k / 8.0;
            double v = log_abs(t);
            if (std::isfinite(v) && v > best) best = v, best_t = t;
        }
        h /= 8.0;
    }
    return best;
}

}  // namespace

ComplexLD TaylorSeries::eval(ComplexLD z) const { return horner(coeffs, z); }

TaylorSeries nl_series_explicit(std::vector<ComplexLD> coeffs) {
    if (coeffs.size() < 3) fail(ErrorKind::InvalidInput, "a series needs at least three coefficients");
    return {std::move(coeffs), "explicit"};
}

TaylorSeries nl_series_from_ode(const std::vector<Poly>& p, const std::vector<ComplexLD>& init, size_t n_terms) {
    if (p.size() < 2) fail(ErrorKind::InvalidInput, "ODE needs order at least 1");
    size_t order = p.size() - 1;
    if (init.size() != order) fail(ErrorKind::InvalidInput, "need one initial value per order");
    if (n_terms < std::max<size_t>(order, 3)) fail(ErrorKind::InvalidInput, "too few terms requested");
    if (p.back().coeff(0).is_zero()) fail(ErrorKind::SingularOrigin, "leading coefficient vanishes at z = 0");

    std::vector<std::vector<ComplexLD>> pc(p.size());
    for (size_t k = 0; k < p.size(); ++k)
        for (const auto& c : p[k].coeffs()) pc[k].push_back(to_ld(c));

    std::vector<ComplexLD> a(n_terms, 0.0L);
    long double fact = 1.0L;
    for (size_t j = 0; j < order; ++j) {
        if (j > 0) fact *= static_cast<long double>(j);
        a[j] = init[j] / fact;
    }
    // coefficient of z^m: sum_k sum_i p_k[i] a[m-i+k] (m-i+k)!/(m-i)! = 0
    auto falling = [](size_t top, size_t k) {
        long double v = 1.0L;
        for (size_t s = 0; s < k; ++s) v *= static_cast<long double>(top - s);
        return v;
    };
    for (size_t m = 0; m + order < n_terms; ++m) {
        ComplexLD rest = 0.0L;
        for (size_t k = 0; k <= order; ++k)
            for (size_t i = 0; i < pc[k].size() && i <= m; ++i) {
                if (k == order && i == 0) continue;
                size_t idx = m - i + k;
                rest += pc[k][i] * a[idx] * falling(idx, k);
            }
        a[m + order] = -rest / (pc[order][0] * falling(m + order, order));
    }
    return {std::move(a), "ode-recurrence"};
}

TaylorSeries nl_series_from_ode(const LinearOde& ode, const std::vector<ComplexLD>& init, size_t n_terms) {
    if (!ode.r2.is_zero()) fail(ErrorKind::InvalidInput, "series solver needs a homogeneous ODE");
    for (const auto* r : {&ode.r0, &ode.r1})
        if (r->ramification() != 1) fail(ErrorKind::InvalidInput, "series solver needs unramified coefficients");
    const Poly& d0 = ode.r0.den();
    const Poly& d1 = ode.r1.den();
    Poly d = lcm(d0, d1);
    Poly p0 = ode.r0.num() * *exact_div(d, d0);
    Poly p1 = ode.r1.num() * *exact_div(d, d1);
    return nl_series_from_ode(std::vector<Poly>{p0, p1, d}, init, n_terms);
}

CentralIndex nl_central_index(const TaylorSeries& s, double r) {
    if (r <= 0.0) fail(ErrorKind::InvalidInput, "radius must be positive");
    CentralIndex out{0, -std::numeric_limits<double>::infinity()};
    long double lr = std::log(static_cast<long double>(r));
    for (size_t k = 0; k < s.coeffs.size(); ++k) {
        long double m = std::abs(s.coeffs[k]);
        if (m == 0.0L) continue;
        double v = static_cast<double>(std::log(m) + lr * static_cast<long double>(k));
        // ties (to rounding) go to the larger index, which keeps nu non-decreasing in r
        double tol = 1e-12 * std::max(1.0, std::abs(v));
        if (v >= out.log_mu - tol) out = {static_cast<long>(k), std::max(v, out.log_mu)};
    }
    if (static_cast<double>(out.nu) >= 0.9 * static_cast<double>(s.coeffs.size()))
        fail(ErrorKind::TruncationTooShort, "maximal term index " + std::to_string(out.nu) + " too close to truncation");
    return out;
}

double nl_log_max_modulus(const ExpFraction& f, double r, int grid) {
    return refine_max([&](double t) { return f.eval(on_circle(r, t)).log_abs(); }, grid);
}

double nl_log_max_modulus(const TaylorSeries& s, double r, int grid) {
    return refine_max(
        [&](double t) {
            ComplexLD z = std::polar(static_cast<long double>(r), static_cast<long double>(t));
            return static_cast<double>(std::log(std::abs(s.eval(z))));
        },
        grid);
}

long nl_count_zeros(const ExpPoly& f, double r) {
    if (f.is_zero()) fail(ErrorKind::ZeroFunction, "zero function has no zero count");
    ExpPoly g = clear_denominators(f).entire;
    ExpPoly dg = g.derivative();
    // n = (1/2pi) int z g'(z)/g(z) dtheta
    auto integrand = [&](double t) {
        std::complex<double> z = on_circle(r, t);
        ScaledValue ratio = dg.eval(z) / g.eval(z);
        return z * ratio.mantissa * std::exp(ratio.log_scale);
    };
    int n = 256;
    std::complex<double> sum = 0.0;
    for (int k = 0; k < n; ++k) sum += integrand(kTwoPi * k / n);
    double prev = (sum / static_cast<double>(n)).real();
    for (n *= 2; n <= kMaxGrid; n *= 2) {
        for (int k = 1; k < n; k += 2) sum += integrand(kTwoPi * k / n);
        double cur = (sum / static_cast<double>(n)).real();
        if (std::isfinite(cur) && std::abs(cur - prev) < 0.05 && std::abs(cur - std::round(cur)) < 0.25)
            return std::lround(cur);
        prev = cur;
    }
    std::ostringstream os;
    os << "argument principle did not settle on |z| = " << r << " (last estimate " << prev << ")";
    fail(ErrorKind::ContourTooClose, os.str());
}

namespace {

/// No zero of the entire g lies within margin/2 (relative) of |z| = r.
bool clear_of_circle(const ExpPoly& g, double r, double margin) {
    if (g.is_rational() && g.as_rational()->is_constant()) return true;
    try {
        return nl_count_zeros(g, r * (1.0 - margin / 2)) == nl_count_zeros(g, r * (1.0 + margin / 2));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::ContourTooClose) throw;
        return false;
    }
}

bool roots_clear_of_circle(const Poly& p, double r, double margin) {
    if (p.is_constant()) return true;
    for (auto a : numeric_roots(p))
        if (std::abs(std::abs(a) - r) < r * margin / 2) return false;
    return true;
}

}  // namespace

NevanlinnaSample nl_nevanlinna(const ExpFraction& f, double r, const NevanlinnaOptions& opt) {
    if (f.is_zero()) fail(ErrorKind::ZeroFunction, "Nevanlinna data of the zero function");
    Cleared num = clear_denominators(f.num());
    Cleared den = clear_denominators(f.den());
    double radius = r;
    for (int attempt = 0; attempt < 8; ++attempt, radius *= 1.0 + opt.pole_margin) {
        if (!clear_of_circle(num.entire, radius, opt.pole_margin) || !clear_of_circle(den.entire, radius, opt.pole_margin) ||
            !roots_clear_of_circle(num.cleared, radius, opt.pole_margin) ||
            !roots_clear_of_circle(den.cleared, radius, opt.pole_margin))
            continue;
        auto m = circle_mean(
            [&](double t) { return std::max(0.0, f.eval(on_circle(radius, t)).log_abs()); }, opt.grid, opt.rel_tol);
        auto poles = jensen_counting(den.entire, radius, opt);
        auto zeros = jensen_counting(num.entire, radius, opt);
        if (!m || !poles || !zeros) continue;
        NevanlinnaSample s;
        s.r = radius;
        s.m_r = *m;
        s.N_r = *poles + polynomial_counting(num.cleared, radius);
        s.T_r = s.m_r + s.N_r;
        s.logM_r = nl_log_max_modulus(f, radius, std::max(opt.grid, 64));
        s.N_zero_r = *zeros + polynomial_counting(den.cleared, radius);
        s.Nbar_r = s.N_r;
        s.Nbar_zero_r = s.N_zero_r;
        try {
            s.n_zeros = nl_count_zeros(num.entire, radius) + polynomial_roots_inside(den.cleared, radius);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::ContourTooClose) throw;
            continue;
        }
        return s;
    }
    std::ostringstream os;
    os << "quadrature did not settle near |z| = " << r;
    fail(ErrorKind::QuadratureNearPole, os.str());
}

NevanlinnaSample nl_series_sample(const TaylorSeries& s, double r, int grid) {
    NevanlinnaSample out;
    out.r = r;
    out.nu_r = nl_central_index(s, r).nu;
    out.logM_r = nl_log_max_modulus(s, r, grid);
    long double lr = static_cast<long double>(r);
    long double terms = 0.0L;
    for (size_t k = s.coeffs.size(); k-- > 0;) terms = terms * lr + std::abs(s.coeffs[k]);
    auto log_plus = [&](double t) {
        ComplexLD z = std::polar(lr, static_cast<long double>(t));
        long double v = std::abs(s.eval(z));
        // values swamped by cancellation carry no digits; they lie in decay sectors
        if (v < 1e3L * std::numeric_limits<long double>::epsilon() * terms) return 0.0;
        return std::max(0.0, static_cast<double>(std::log(v)));
    };
    auto m = circle_mean(log_plus, std::max(grid, 64), 1e-3);
    out.m_r = m ? *m : std::numeric_limits<double>::quiet_NaN();
    out.T_r = out.m_r;
    return out;
}

OrderType nl_fit_order_type(const std::vector<NevanlinnaSample>& samples) {
    std::vector<const NevanlinnaSample*> use;
    for (const auto& s : samples)
        if (s.r > 0.0 && s.logM_r > 0.0) use.push_back(&s);
    if (use.size() < 6) fail(ErrorKind::InsufficientSamples, "need at least 6 samples with log M > 0");
    std::sort(use.begin(), use.end(), [](auto* a, auto* b) { return a->r < b->r; });
    if (use.back()->r < 10.0 * use.front()->r) fail(ErrorKind::InsufficientSamples, "samples must span a decade of r");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double n = static_cast<double>(use.size());
    for (auto* s : use) {
        double x = std::log(s->r), y = std::log(s->logM_r);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    OrderType out;
    out.rho = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    size_t half = use.size() / 2;
    double total = 0.0;
    for (size_t k = half; k < use.size(); ++k) total += use[k]->logM_r / std::pow(use[k]->r, out.rho);
    out.type = total / static_cast<double>(use.size() - half);
    return out;
}

std::vector<double> nl_default_radii() { return {5, 7.5, 11, 17, 25, 38, 57}; }

std::vector<double> nl_adaptive_radii(const std::function<double(double)>& log_max, double min_log_max) {
    std::vector<double> radii = nl_default_radii();
    for (int step = 0; step < 60 && log_max(radii.front()) < min_log_max; ++step)
        for (auto& r : radii) r *= 1.5;
    return radii;
}

std::string nl_sample_table(const std::vector<NevanlinnaSample>& samples) {
    std::ostringstream os;
    os << "r,T,m,N,nu,logM,zeros\n" << std::setprecision(12);
    for (const auto& s : samples)
        os << s.r << ',' << s.T_r << ',' << s.m_r << ',' << s.N_r << ',' << s.nu_r << ',' << s.logM_r << ','
           << s.n_zeros << '\n';
    return os.str();
}

}  // namespace tcsolve
