#include "qnev/poly.hpp"

#include <algorithm>
#include <cmath>

#include "qnev/error.hpp"

namespace qnev {

namespace {

// Plain (ac - bd, ad + bc); written out so conjugate inputs give bitwise
// conjugate outputs.
inline std::complex<double> cmul(std::complex<double> a, std::complex<double> b) {
    return {a.real() * b.real() - a.imag() * b.imag(), a.real() * b.imag() + a.imag() * b.real()};
}

}  // namespace

// ---- LeftPoly ----

LeftPoly::LeftPoly(std::vector<Quaternion> coeffs) : c_(std::move(coeffs)) { trim(); }
LeftPoly::LeftPoly(std::initializer_list<Quaternion> coeffs) : c_(coeffs) { trim(); }

void LeftPoly::trim() {
    while (!c_.empty() && c_.back() == Quaternion{}) c_.pop_back();
}

LeftPoly LeftPoly::constant(const Quaternion& c) { return LeftPoly({c}); }

LeftPoly LeftPoly::monomial(int degree, const Quaternion& c) {
    std::vector<Quaternion> v(static_cast<std::size_t>(degree) + 1);
    v.back() = c;
    return LeftPoly(std::move(v));
}

LeftPoly LeftPoly::linear(const Quaternion& p) { return LeftPoly({-p, kOne}); }

Quaternion LeftPoly::coeff(int k) const {
    if (k < 0 || k > degree()) return {};
    return c_[static_cast<std::size_t>(k)];
}

bool LeftPoly::is_slice_preserving() const {
    return std::all_of(c_.begin(), c_.end(), [](const Quaternion& a) { return a.is_real(); });
}

double LeftPoly::scale() const {
    double s = 0.0;
    for (const auto& a : c_) s = std::max(s, norm(a));
    return s;
}

Quaternion LeftPoly::operator()(const Quaternion& q) const {
    if (c_.empty()) return {};
    Quaternion acc = c_.back();
    for (std::size_t k = c_.size() - 1; k-- > 0;) acc = c_[k] + q * acc;
    return acc;
}

Quaternion eval(const LeftPoly& f, const Quaternion& q) { return f(q); }

LeftPoly operator+(const LeftPoly& f, const LeftPoly& g) {
    std::vector<Quaternion> c(static_cast<std::size_t>(std::max(f.degree(), g.degree()) + 1));
    for (int k = 0; k < static_cast<int>(c.size()); ++k) c[k] = f.coeff(k) + g.coeff(k);
    return LeftPoly(std::move(c));
}

LeftPoly operator-(const LeftPoly& f) {
    std::vector<Quaternion> c = f.coeffs();
    for (auto& a : c) a = -a;
    return LeftPoly(std::move(c));
}

LeftPoly operator-(const LeftPoly& f, const LeftPoly& g) { return f + (-g); }

LeftPoly operator*(const Quaternion& c, const LeftPoly& f) {
    std::vector<Quaternion> v = f.coeffs();
    for (auto& a : v) a = c * a;
    return LeftPoly(std::move(v));
}

LeftPoly operator*(const LeftPoly& f, const Quaternion& c) {
    std::vector<Quaternion> v = f.coeffs();
    for (auto& a : v) a = a * c;
    return LeftPoly(std::move(v));
}

LeftPoly star_mul(const LeftPoly& f, const LeftPoly& g) {
    if (f.is_zero() || g.is_zero()) return {};
    std::vector<Quaternion> c(static_cast<std::size_t>(f.degree() + g.degree() + 1));
    const auto& a = f.coeffs();
    const auto& b = g.coeffs();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return LeftPoly(std::move(c));
}

LeftPoly star_pow(const LeftPoly& f, int n) {
    LeftPoly r = LeftPoly::constant(kOne);
    for (int k = 0; k < n; ++k) r = star_mul(r, f);
    return r;
}

LeftPoly conjugate(const LeftPoly& f) {
    std::vector<Quaternion> c = f.coeffs();
    for (auto& a : c) a = conj(a);
    return LeftPoly(std::move(c));
}

RealPoly symmetrize(const LeftPoly& f, double* residue) {
    LeftPoly s = star_mul(f, conjugate(f));
    std::vector<double> c;
    c.reserve(s.coeffs().size());
    double res = 0.0;
    for (const auto& a : s.coeffs()) {
        res = std::max(res, imag_norm(a));
        c.push_back(a.w);
    }
    double sc = f.scale();
    if (res > 1e-9 * std::max(1.0, sc * sc))
        throw Error(ErrorKind::SymmetrizationNotReal, "imaginary residue in f*f^c");
    if (residue) *residue = res;
    return RealPoly(std::move(c));
}

LeftPoly slice_derivative(const LeftPoly& f, int order) {
    LeftPoly d = f;
    for (int o = 0; o < order; ++o) {
        if (d.degree() < 1) return {};
        std::vector<Quaternion> c(static_cast<std::size_t>(d.degree()));
        for (int k = 1; k <= d.degree(); ++k) c[k - 1] = static_cast<double>(k) * d.coeff(k);
        d = LeftPoly(std::move(c));
    }
    return d;
}

int origin_multiplicity(const LeftPoly& f, double rel_tol) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "origin multiplicity of zero polynomial");
    double tol = rel_tol * f.scale();
    int k = 0;
    while (k < f.degree() && norm(f.coeff(k)) <= tol) ++k;
    return k;
}

LeftPoly shift_down(const LeftPoly& f, int k) {
    if (k <= 0) return f;
    if (k > f.degree()) return {};
    return LeftPoly(std::vector<Quaternion>(f.coeffs().begin() + k, f.coeffs().end()));
}

LeftPoly divide(const LeftPoly& f, const RealPoly& d, LeftPoly* rem) {
    if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero polynomial");
    std::vector<Quaternion> r = f.coeffs();
    int n = f.degree(), m = d.degree();
    if (n < m) {
        if (rem) *rem = f;
        return {};
    }
    std::vector<Quaternion> q(static_cast<std::size_t>(n - m + 1));
    double lead = d.coeff(m);
    for (int k = n - m; k >= 0; --k) {
        Quaternion t = r[k + m] / lead;
        q[k] = t;
        for (int j = 0; j <= m; ++j) r[k + j] -= d.coeff(j) * t;
    }
    r.resize(static_cast<std::size_t>(m));
    if (rem) *rem = LeftPoly(std::move(r));
    return LeftPoly(std::move(q));
}

// ---- RealPoly ----

RealPoly::RealPoly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }
RealPoly::RealPoly(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

void RealPoly::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double RealPoly::coeff(int k) const {
    if (k < 0 || k > degree()) return 0.0;
    return c_[static_cast<std::size_t>(k)];
}

double RealPoly::scale() const {
    double s = 0.0;
    for (double a : c_) s = std::max(s, std::abs(a));
    return s;
}

std::complex<double> RealPoly::operator()(std::complex<double> z) const {
    if (c_.empty()) return {};
    std::complex<double> acc = c_.back();
    for (std::size_t k = c_.size() - 1; k-- > 0;) acc = cmul(acc, z) + c_[k];
    return acc;
}

SliceCoords slice_coords(const Quaternion& q) {
    double r = imag_norm(q);
    if (r == 0.0) return {{q.w, 0.0}, kI};
    return {{q.w, r}, {0.0, q.x / r, q.y / r, q.z / r}};
}

Quaternion from_slice(std::complex<double> v, const Quaternion& I) {
    return {v.real(), v.imag() * I.x, v.imag() * I.y, v.imag() * I.z};
}

Quaternion RealPoly::operator()(const Quaternion& q) const {
    SliceCoords sc = slice_coords(q);
    return from_slice((*this)(sc.z), sc.I);
}

double RealPoly::abs_at(const Quaternion& q) const {
    return std::abs((*this)(slice_coords(q).z));
}

LeftPoly RealPoly::to_left() const {
    std::vector<Quaternion> c(c_.begin(), c_.end());
    return LeftPoly(std::move(c));
}

RealPoly operator+(const RealPoly& p, const RealPoly& q) {
    std::vector<double> c(static_cast<std::size_t>(std::max(p.degree(), q.degree()) + 1));
    for (int k = 0; k < static_cast<int>(c.size()); ++k) c[k] = p.coeff(k) + q.coeff(k);
    return RealPoly(std::move(c));
}

RealPoly operator*(const RealPoly& p, const RealPoly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    std::vector<double> c(static_cast<std::size_t>(p.degree() + q.degree() + 1));
    for (int i = 0; i <= p.degree(); ++i)
        for (int j = 0; j <= q.degree(); ++j) c[i + j] += p.coeff(i) * q.coeff(j);
    return RealPoly(std::move(c));
}

RealPoly operator*(double s, const RealPoly& p) {
    std::vector<double> c = p.coeffs();
    for (double& a : c) a *= s;
    return RealPoly(std::move(c));
}

RealPoly derivative(const RealPoly& p, int order) {
    std::vector<double> c = p.coeffs();
    for (int o = 0; o < order; ++o) {
        if (c.size() <= 1) return {};
        for (std::size_t k = 1; k < c.size(); ++k) c[k - 1] = static_cast<double>(k) * c[k];
        c.pop_back();
    }
    return RealPoly(std::move(c));
}

RealPoly pow(const RealPoly& p, int n) {
    RealPoly r{1.0};
    for (int k = 0; k < n; ++k) r = r * p;
    return r;
}

RealPoly sphere_polynomial(const SliceComplex& s) {
    return RealPoly{s.re * s.re + s.im * s.im, -2.0 * s.re, 1.0};
}

}  // namespace qnev
