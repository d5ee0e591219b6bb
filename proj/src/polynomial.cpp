#include "tcsolve/polynomial.hpp"

#include "tcsolve/errors.hpp"

#include <Eigen/Dense>

#include <numeric>
#include <sstream>

namespace tcsolve {

namespace {
const GaussianRational kZero{};
}

Poly::Poly(std::vector<GaussianRational> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(const GaussianRational& c) {
    if (!c.is_zero()) c_.push_back(c);
}

Poly Poly::monomial(const GaussianRational& c, size_t k) {
    if (c.is_zero()) return {};
    std::vector<GaussianRational> v(k + 1);
    v[k] = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

size_t Poly::valuation() const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (!c_[k].is_zero()) return k;
    return 0;
}

const GaussianRational& Poly::coeff(size_t k) const { return k < c_.size() ? c_[k] : kZero; }

const GaussianRational& Poly::lead() const { return c_.empty() ? kZero : c_.back(); }

Poly Poly::monic() const {
    if (is_zero()) return {};
    GaussianRational inv = lead().inverse();
    return *this * inv;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<GaussianRational> v(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) v[k - 1] = c_[k] * GaussianRational(static_cast<long>(k));
    return Poly(std::move(v));
}

Poly Poly::pow(unsigned k) const {
    Poly result(1);
    Poly base = *this;
    while (k > 0) {
        if (k & 1U) result = result * base;
        k >>= 1U;
        if (k > 0) base = base * base;
    }
    return result;
}

Poly Poly::stretch(unsigned k) const {
    if (k == 1 || is_zero()) return *this;
    std::vector<GaussianRational> v((c_.size() - 1) * k + 1);
    for (size_t j = 0; j < c_.size(); ++j) v[j * k] = c_[j];
    return Poly(std::move(v));
}

Poly Poly::compress(unsigned k) const {
    if (k == 1 || is_zero()) return *this;
    std::vector<GaussianRational> v((c_.size() - 1) / k + 1);
    for (size_t j = 0; j < c_.size(); ++j) {
        if (c_[j].is_zero()) continue;
        if (j % k != 0) fail(ErrorKind::PreconditionViolated, "compress: exponent not divisible");
        v[j / k] = c_[j];
    }
    return Poly(std::move(v));
}

Poly Poly::shift(size_t k) const {
    if (k == 0 || is_zero()) return *this;
    std::vector<GaussianRational> v(k);
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(std::move(v));
}

Poly Poly::unshift(size_t k) const {
    if (k == 0 || is_zero()) return *this;
    if (valuation() < k) fail(ErrorKind::PreconditionViolated, "unshift below valuation");
    return Poly(std::vector<GaussianRational>(c_.begin() + static_cast<long>(k), c_.end()));
}

Poly Poly::reverse() const {
    std::vector<GaussianRational> v(c_.rbegin(), c_.rend());
    return Poly(std::move(v));
}

unsigned Poly::exponent_gcd(unsigned q) const {
    unsigned g = q;
    for (size_t k = 0; k < c_.size() && g > 1; ++k)
        if (!c_[k].is_zero()) g = std::gcd(g, static_cast<unsigned>(k));
    return g;
}

std::complex<double> Poly::eval(std::complex<double> t) const {
    std::complex<double> acc = 0.0;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k].to_complex();
    return acc;
}

std::complex<long double> Poly::eval(std::complex<long double> t) const {
    std::complex<long double> acc = 0.0L;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k].to_complex_ld();
    return acc;
}

GaussianRational Poly::eval(const GaussianRational& t) const {
    GaussianRational acc;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * t + c_[k];
    return acc;
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<GaussianRational> v(a.c_.size() + b.c_.size() - 1);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            if (b.c_[j].is_zero()) continue;
            v[i + j] += a.c_[i] * b.c_[j];
        }
    }
    return Poly(std::move(v));
}

Poly& Poly::operator*=(const Poly& o) {
    *this = *this * o;
    return *this;
}

Poly& Poly::operator*=(const GaussianRational& s) {
    if (s.is_zero()) {
        c_.clear();
        return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
}

std::string Poly::str(const std::string& var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = c_.size(); k-- > 0;) {
        const auto& c = c_[k];
        if (c.is_zero()) continue;
        bool neg = c.is_real() && sgn(c.re()) < 0;
        GaussianRational a = neg ? -c : c;
        if (!first) os << (neg ? " - " : " + ");
        else if (neg) os << "-";
        first = false;
        std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
        if (k == 0) {
            os << a.str();
        } else if (a.is_one()) {
            os << mono;
        } else {
            std::string s = a.str();
            if (a.is_real() && a.re().get_den() != 1) s = "(" + s + ")";
            os << s << "*" << mono;
        }
    }
    return os.str();
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    if (b.is_zero()) fail(ErrorKind::DivisionByZero, "polynomial division by zero");
    if (a.degree() < b.degree()) return {Poly(), a};
    std::vector<GaussianRational> r = a.coeffs();
    size_t db = static_cast<size_t>(b.degree());
    std::vector<GaussianRational> q(r.size() - db);
    GaussianRational inv = b.lead().inverse();
    for (size_t k = r.size(); k-- > db;) {
        if (r[k].is_zero()) continue;
        GaussianRational f = r[k] * inv;
        q[k - db] = f;
        for (size_t j = 0; j <= db; ++j) {
            if (b.coeff(j).is_zero()) continue;
            r[k - db + j] -= f * b.coeff(j);
        }
    }
    r.resize(db);
    return {Poly(std::move(q)), Poly(std::move(r))};
}

std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) return std::nullopt;
    return q;
}

Poly gcd(const Poly& a, const Poly& b) {
    Poly x = a;
    Poly y = b;
    while (!y.is_zero()) {
        Poly r = divmod(x, y).second;
        x = std::move(y);
        y = r.monic();
    }
    return x.monic();
}

std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p) {
    std::vector<std::pair<Poly, int>> out;
    if (p.degree() < 1) return out;
    Poly f = p.monic();
    Poly fp = f.derivative();
    Poly a = gcd(f, fp);
    Poly b = *exact_div(f, a);
    Poly c = *exact_div(fp, a);
    Poly d = c - b.derivative();
    int i = 1;
    while (b.degree() >= 1) {
        Poly g = gcd(b, d);
        if (g.degree() >= 1) out.emplace_back(g, i);
        b = *exact_div(b, g);
        c = *exact_div(d, g);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

std::optional<Poly> poly_nth_root(const Poly& p, unsigned n) {
    if (n == 0) fail(ErrorKind::PreconditionViolated, "poly_nth_root with n = 0");
    if (p.is_zero()) return Poly();
    if (n == 1) return p;
    size_t v = p.valuation();
    if (v % n != 0) return std::nullopt;
    Poly g = p.unshift(v);
    if (g.degree() % n != 0) return std::nullopt;
    auto roots0 = nth_roots(g.coeff(0), n);
    if (roots0.empty()) return std::nullopt;
    // y = g^(1/n) as a power series: k g0 y_k = sum_{j=1..k} (j/n - (k-j)) g_j y_{k-j}
    size_t deg = static_cast<size_t>(g.degree()) / n;
    std::vector<GaussianRational> y(deg + 1);
    y[0] = roots0.front();
    GaussianRational g0inv = g.coeff(0).inverse();
    Rational alpha(1, n);
    for (size_t k = 1; k <= deg; ++k) {
        GaussianRational acc;
        for (size_t j = 1; j <= k; ++j) {
            const auto& gj = g.coeff(j);
            if (gj.is_zero() || y[k - j].is_zero()) continue;
            Rational w = alpha * static_cast<long>(j) - static_cast<long>(k - j);
            acc += GaussianRational(w) * gj * y[k - j];
        }
        y[k] = acc * g0inv / GaussianRational(static_cast<long>(k));
    }
    Poly root = Poly(std::move(y));
    if (root.pow(n) != g) return std::nullopt;
    return root.shift(v / n);
}

std::vector<std::complex<double>> numeric_roots(const Poly& p) {
    std::vector<std::complex<double>> roots;
    long d = p.degree();
    if (d < 1) return roots;
    size_t v = p.valuation();
    for (size_t k = 0; k < v; ++k) roots.emplace_back(0.0, 0.0);
    Poly g = p.unshift(v);
    d = g.degree();
    if (d < 1) return roots;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    std::complex<double> lc = g.lead().to_complex();
    for (long k = 0; k < d; ++k) comp(0, k) = -g.coeff(static_cast<size_t>(d - 1 - k)).to_complex() / lc;
    for (long k = 1; k < d; ++k) comp(k, k - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
    Poly gp = g.derivative();
    for (long k = 0; k < d; ++k) {
        std::complex<long double> x(es.eigenvalues()[k].real(), es.eigenvalues()[k].imag());
        for (int it = 0; it < 8; ++it) {
            auto fx = g.eval(x);
            auto dx = gp.eval(x);
            if (std::abs(dx) == 0.0L) break;
            auto step = fx / dx;
            x -= step;
            if (std::abs(step) <= 1e-18L * (1.0L + std::abs(x))) break;
        }
        roots.emplace_back(static_cast<double>(x.real()), static_cast<double>(x.imag()));
    }
    return roots;
}

}  // namespace tcsolve
