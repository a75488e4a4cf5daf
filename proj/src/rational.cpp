#include "qnev/rational.hpp"

#include <cmath>

#include "qnev/error.hpp"

namespace qnev {

namespace {

LeftPoly as_left(const RealPoly& p) { return p.to_left(); }

}  // namespace

SemiregularRational::SemiregularRational() : SemiregularRational(LeftPoly{}, LeftPoly::constant(kOne)) {}

SemiregularRational::SemiregularRational(LeftPoly num)
    : SemiregularRational(std::move(num), LeftPoly::constant(kOne)) {}

SemiregularRational::SemiregularRational(LeftPoly num, LeftPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
    ghc_ = star_mul(num_, conjugate(den_));
    hs_ = symmetrize(den_);
    gs_ = symmetrize(num_);
    slice_preserving_ = num_.is_slice_preserving() && den_.is_slice_preserving();
    if (slice_preserving_) {
        std::vector<double> c;
        for (const auto& a : ghc_.coeffs()) c.push_back(a.w);
        ghc_real_ = RealPoly(std::move(c));
    }
}

bool SemiregularRational::near_pole(const Quaternion& q) const {
    if (hs_.degree() == 0) return false;
    std::complex<double> h = hs_(slice_coords(q).z);
    double tol = 1e-12 * hs_.scale() * std::pow(1.0 + norm(q), hs_.degree());
    return std::abs(h) < tol;
}

Quaternion SemiregularRational::operator()(const Quaternion& q) const {
    if (hs_.degree() == 0 && !slice_preserving_) return ghc_(q) / hs_.coeff(0);
    SliceCoords sc = slice_coords(q);
    std::complex<double> h = hs_(sc.z);
    double h2 = h.real() * h.real() + h.imag() * h.imag();
    if (hs_.degree() > 0) {
        double tol = 1e-12 * hs_.scale() * std::pow(1.0 + norm(q), hs_.degree());
        if (std::sqrt(h2) < tol) throw Error(ErrorKind::EvalAtPole, "h^s(q) vanishes");
    }
    if (slice_preserving_) {
        std::complex<double> g = ghc_real_(sc.z);
        std::complex<double> v{(g.real() * h.real() + g.imag() * h.imag()) / h2,
                               (g.imag() * h.real() - g.real() * h.imag()) / h2};
        return from_slice(v, sc.I);
    }
    return inverse(from_slice(h, sc.I)) * ghc_(q);
}

double SemiregularRational::abs_at(const Quaternion& q) const {
    if (slice_preserving_) {
        SliceCoords sc = slice_coords(q);
        std::complex<double> h = hs_(sc.z);
        if (hs_.degree() > 0) {
            double tol = 1e-12 * hs_.scale() * std::pow(1.0 + norm(q), hs_.degree());
            if (std::abs(h) < tol) throw Error(ErrorKind::EvalAtPole, "h^s(q) vanishes");
        }
        return std::abs(ghc_real_(sc.z)) / std::abs(h);
    }
    return norm((*this)(q));
}

Quaternion eval(const SemiregularRational& f, const Quaternion& q) { return f(q); }

SemiregularRational add(const SemiregularRational& f, const SemiregularRational& g) {
    if (f.den() == g.den()) return {f.num() + g.num(), f.den()};
    if (f.is_polynomial() && g.is_polynomial()) {
        return {f.num() * inverse(f.den().coeff(0)) + g.num() * inverse(g.den().coeff(0))};
    }
    const RealPoly& s1 = f.den_sym();
    const RealPoly& s2 = g.den_sym();
    LeftPoly num = star_mul(f.num_times_den_conj(), as_left(s2)) + star_mul(g.num_times_den_conj(), as_left(s1));
    return {num, as_left(s1 * s2)};
}

SemiregularRational sub(const SemiregularRational& f, const SemiregularRational& g) {
    return add(f, SemiregularRational(-g.num(), g.den()));
}

SemiregularRational star_mul(const SemiregularRational& f, const SemiregularRational& g) {
    // A slice-preserving denominator commutes past g's numerator.
    if (f.den().is_slice_preserving()) return {star_mul(f.num(), g.num()), star_mul(g.den(), f.den())};
    return {star_mul(f.num_times_den_conj(), g.num_times_den_conj()), as_left(f.den_sym() * g.den_sym())};
}

SemiregularRational star_pow(const SemiregularRational& f, int n) {
    SemiregularRational r(LeftPoly::constant(kOne));
    for (int k = 0; k < n; ++k) r = star_mul(r, f);
    return r;
}

SemiregularRational star_reciprocal(const SemiregularRational& f) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroFunctionReciprocal, "reciprocal of the zero function");
    return {f.den(), f.num()};
}

SemiregularRational conjugate(const SemiregularRational& f) {
    if (f.den().is_slice_preserving()) return {conjugate(f.num()), f.den()};
    return {star_mul(f.den(), conjugate(f.num())), as_left(f.den_sym())};
}

SemiregularRational translate(const SemiregularRational& f, const Quaternion& a) {
    return {f.num() - a * f.den(), f.den()};
}

Quaternion RealRatio::operator()(const Quaternion& q) const {
    SliceCoords sc = slice_coords(q);
    std::complex<double> n = num(sc.z), d = den(sc.z);
    double d2 = d.real() * d.real() + d.imag() * d.imag();
    if (d2 == 0.0) throw Error(ErrorKind::EvalAtPole, "denominator vanishes");
    return from_slice({(n.real() * d.real() + n.imag() * d.imag()) / d2,
                       (n.imag() * d.real() - n.real() * d.imag()) / d2},
                      sc.I);
}

double RealRatio::abs_at(const Quaternion& q) const {
    std::complex<double> z = slice_coords(q).z;
    return std::abs(num(z)) / std::abs(den(z));
}

RealRatio symmetrize(const SemiregularRational& f) { return {f.num_sym(), f.den_sym()}; }

std::vector<Quaternion> taylor_at_origin(const SemiregularRational& f, int n) {
    const RealPoly& s = f.den_sym();
    double s0 = s.coeff(0);
    if (s0 == 0.0) throw Error(ErrorKind::CenterIsZeroOrPole, "pole at the origin");
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double acc = k == 0 ? 1.0 : 0.0;
        for (int j = 1; j <= k; ++j) acc -= s.coeff(j) * d[k - j];
        d[k] = acc / s0;
    }
    std::vector<Quaternion> c(static_cast<std::size_t>(n));
    const LeftPoly& p = f.num_times_den_conj();
    for (int k = 0; k < n; ++k)
        for (int i = 0; i <= k; ++i) c[k] += d[k - i] * p.coeff(i);
    return c;
}

int origin_order(const SemiregularRational& f) {
    return origin_multiplicity(f.num()) - origin_multiplicity(f.den());
}

SemiregularRational deflate_origin(const SemiregularRational& f) {
    return {shift_down(f.num(), origin_multiplicity(f.num())), shift_down(f.den(), origin_multiplicity(f.den()))};
}

double GL2H::dieudonne_norm() const {
    if (A == Quaternion{}) return norm(B) * norm(C);
    return norm(A) * norm(D - C * inverse(A) * B);
}

GL2H operator*(const GL2H& s, const GL2H& t) {
    return {s.A * t.A + s.B * t.C, s.A * t.B + s.B * t.D, s.C * t.A + s.D * t.C, s.C * t.B + s.D * t.D};
}

SemiregularRational linear_fractional(const GL2H& t, const SemiregularRational& f) {
    double sc = (norm(t.A) + norm(t.B)) * (norm(t.C) + norm(t.D));
    if (!(t.dieudonne_norm() > 1e-12 * sc)) throw Error(ErrorKind::DegenerateTransform, "singular transform");
    LeftPoly num = t.A * f.num() + t.B * f.den();
    LeftPoly den = t.C * f.num() + t.D * f.den();
    if (den.is_zero()) throw Error(ErrorKind::DegenerateTransform, "transformed denominator vanishes");
    return {num, den};
}

}  // namespace qnev
