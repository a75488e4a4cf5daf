#include "qnev/divisor.hpp"

#include <algorithm>
#include <cmath>

#include "qnev/error.hpp"

namespace qnev {

namespace {

struct SphereCount {
    SliceComplex sphere;
    int mult = 0;
};

// Upper half-plane and real roots of a symmetrization, keyed by sphere.
std::vector<SphereCount> sphere_multiplicities(const RealPoly& p) {
    std::vector<SphereCount> out;
    if (p.degree() <= 0) return out;
    for (const auto& r : complex_roots(p)) {
        if (r.value.imag() < 0.0) continue;
        out.push_back({{r.value.real(), r.value.imag()}, r.multiplicity});
    }
    return out;
}

bool same_sphere(const SliceComplex& a, const SliceComplex& b) {
    double tol = 1e-6 * (1.0 + std::max(modulus(a), modulus(b)));
    return std::hypot(a.re - b.re, a.im - b.im) <= tol;
}

struct Piece {
    double radius;
    double re;
    int weight;
};

// Nonzero spheres inside the closed ball of radius r with positive side order, sorted by modulus.
std::vector<Piece> pieces(const SphereDivisor& d, Side side, double r) {
    std::vector<Piece> out;
    for (const auto& e : d.entries) {
        int w = side_order(e, side);
        double rho = modulus(e.sphere);
        if (w > 0 && rho > 0.0 && rho <= r) out.push_back({rho, e.sphere.re, w});
    }
    std::sort(out.begin(), out.end(), [](const Piece& a, const Piece& b) { return a.radius < b.radius; });
    return out;
}

// Distinct sorted breakpoints of n(t) in (0, r), followed by r.
std::vector<double> breakpoints(const std::vector<Piece>& ps, double r) {
    std::vector<double> b;
    for (const auto& p : ps)
        if (b.empty() || p.radius != b.back()) b.push_back(p.radius);
    if (b.empty() || b.back() != r) b.push_back(r);
    return b;
}

}  // namespace

SphereDivisor total_order_divisor(const SemiregularRational& f) {
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "divisor of the zero function");
    int mg = origin_multiplicity(f.num()), mh = origin_multiplicity(f.den());
    SphereDivisor d;
    d.origin_order = mg - mh;
    auto zs = sphere_multiplicities(symmetrize(shift_down(f.num(), mg)));
    auto ps = sphere_multiplicities(symmetrize(shift_down(f.den(), mh)));
    std::vector<SphereCount> net = zs;
    for (auto& p : ps) {
        auto it = std::find_if(net.begin(), net.end(), [&](const SphereCount& s) { return same_sphere(s.sphere, p.sphere); });
        if (it == net.end()) {
            net.push_back({p.sphere, -p.mult});
        } else {
            it->mult -= p.mult;
        }
    }
    for (auto& s : net) {
        if (s.mult == 0) continue;
        int order = s.mult;
        if (s.sphere.im == 0.0) {
            if (order % 2 != 0) throw Error(ErrorKind::RootFinderFailed, "odd multiplicity at a real root of f^s");
            order /= 2;
        }
        d.entries.push_back({s.sphere, order});
    }
    std::sort(d.entries.begin(), d.entries.end(), [](const DivisorEntry& a, const DivisorEntry& b) {
        return modulus(a.sphere) < modulus(b.sphere);
    });
    return d;
}

SphericalFactorization spherical_factorization(const LeftPoly& f, const SliceComplex& s) {
    SphericalFactorization out;
    if (f.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "factorisation of the zero polynomial");
    LeftPoly g = f;
    if (s.im > 0.0) {
        RealPoly p = sphere_polynomial(s);
        for (;;) {
            if (g.degree() < 2) break;
            LeftPoly rem;
            LeftPoly quo = divide(g, p, &rem);
            if (rem.scale() > 1e-9 * g.scale()) break;
            g = quo;
            ++out.spherical_power;
        }
    }
    for (const auto& c : sphere_multiplicities(symmetrize(g))) {
        if (same_sphere(c.sphere, s)) out.chain_length = s.im > 0.0 ? c.mult : c.mult / 2;
    }
    if (s.re == 0.0 && s.im == 0.0) out.chain_length = origin_multiplicity(f);
    return out;
}

int factorization_total_order(const SemiregularRational& f, const SliceComplex& s) {
    return spherical_factorization(f.num(), s).total() - spherical_factorization(f.den(), s).total();
}

double jensen_kernel(const SliceComplex& zeta, double R) {
    double m2 = zeta.re * zeta.re + zeta.im * zeta.im;
    if (m2 == 0.0) throw Error(ErrorKind::ZeroCenter, "kernel at the origin");
    double m4 = m2 * m2, R2 = R * R;
    return std::log(R / std::sqrt(m2)) + (m4 - R2 * R2) / (4.0 * R2 * m4) * (2.0 * zeta.re * zeta.re - m2);
}

double jensen_kernel_real(double r, double R) {
    if (r == 0.0) throw Error(ErrorKind::ZeroCenter, "kernel at the origin");
    double r2 = r * r, R2 = R * R;
    return std::log(R / std::abs(r)) + (r2 * r2 - R2 * R2) / (4.0 * R2 * r2);
}

int side_order(const DivisorEntry& e, Side side) {
    return side == Side::Zeros ? std::max(0, e.order) : std::max(0, -e.order);
}

int side_origin_order(const SphereDivisor& d, Side side) {
    return side == Side::Zeros ? std::max(0, d.origin_order) : std::max(0, -d.origin_order);
}

void check_admissible(const SphereDivisor& d, double r) {
    for (const auto& e : d.entries)
        if (std::abs(modulus(e.sphere) - r) <= 1e-12 * r)
            throw Error(ErrorKind::BoundaryDivisor, "divisor sphere on the boundary of B_r");
}

int n_count(const SphereDivisor& d, Side side, double r) {
    int n = side_origin_order(d, side);
    for (const auto& e : d.entries)
        if (modulus(e.sphere) <= r) n += side_order(e, side);
    return n;
}

double N_integrated(const SphereDivisor& d, Side side, double r) {
    check_admissible(d, r);
    double N = side_origin_order(d, side) * std::log(r);
    for (const auto& e : d.entries) {
        int w = side_order(e, side);
        if (w > 0 && modulus(e.sphere) <= r) N += w * jensen_kernel(e.sphere, r);
    }
    return N;
}

namespace {

// int_0^r (n(t) - n(0)) dt / t over the step function n; bp ends at r.
double radial_log_integral(const SphereDivisor& d, Side side, double, const std::vector<double>& bp) {
    int n0 = side_origin_order(d, side);
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) s += (n_count(d, side, bp[k]) - n0) * std::log(bp[k + 1] / bp[k]);
    return s;
}

// int_0^r (t^4 + r^4)/(2 r^2 t^3) (n(t) - n(0)) dt
double radial_weighted_integral(const SphereDivisor& d, Side side, double r, const std::vector<double>& bp) {
    int n0 = side_origin_order(d, side);
    double r2 = r * r;
    auto F = [&](double t) { return t * t / (4.0 * r2) - r2 / (4.0 * t * t); };
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) s += (n_count(d, side, bp[k]) - n0) * (F(bp[k + 1]) - F(bp[k]));
    return s;
}

double nonradial_remainder(const std::vector<Piece>& ps, double r) {
    double r4 = r * r * r * r, s = 0.0;
    for (const auto& p : ps) {
        double m2 = p.radius * p.radius, m4 = m2 * m2;
        s += p.weight * (m4 - r4) / (4.0 * r * r * m4) * (2.0 * p.re * p.re - m2);
    }
    return s;
}

// First angular representation:
// 4 r^2 int_0^r t^-5 int_0^t h [a_t(h) - a_t(0)] dh dt - 2 r^2 int_0^r t^-3 [n(t) - n(0)] dt.
// On each interval of t the inner integral is alpha t^2 - beta, with alpha and
// beta read off the step structure of a_t(.).
double angular_double_integral(const SphereDivisor& d, Side side, double r, const std::vector<Piece>& ps,
                               const std::vector<double>& bp) {
    double r2 = r * r;
    int n0 = side_origin_order(d, side);
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        double t = bp[k], t1 = bp[k + 1];
        std::vector<double> hs;
        for (const auto& p : ps)
            if (p.radius <= t) hs.push_back(std::abs(p.re));
        std::sort(hs.begin(), hs.end());
        hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
        double alpha = 0.5 * (a_count(d, side, t, t) - a_count(d, side, t, 0.0));
        double beta = 0.0;
        int prev = a_count(d, side, t, 0.0);
        for (double h : hs) {
            if (h == 0.0) continue;
            int cur = a_count(d, side, t, h);
            beta += 0.5 * (cur - prev) * h * h;
            prev = cur;
        }
        auto G = [&](double x) { return -alpha / (2.0 * x * x) + beta / (4.0 * x * x * x * x); };
        auto H = [&](double x) { return -1.0 / (2.0 * x * x); };
        s += 4.0 * r2 * (G(t1) - G(t));
        s -= 2.0 * r2 * (n_count(d, side, t) - n0) * (H(t1) - H(t));
    }
    return s;
}

// Second angular representation: -2 r^2 int_0^r t^-5 [W(t) - W(0)] dt with
// W(t) the Re^2-weighted count. `outer` selects the count over B_r with
// |Re| <= t; otherwise the count over B_t.
double angular_weighted(const SphereDivisor& d, Side side, double r, const std::vector<Piece>& ps, bool outer) {
    std::vector<double> bp;
    for (const auto& p : ps) bp.push_back(outer ? std::abs(p.re) : p.radius);
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    bp.erase(std::remove(bp.begin(), bp.end(), 0.0), bp.end());
    bp.push_back(r);
    double r2 = r * r;
    auto P = [](double x) { return -1.0 / (4.0 * x * x * x * x); };
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < bp.size(); ++k) {
        double t = bp[k];
        double W = outer ? a_re_count(d, side, r, t) - a_re_count(d, side, r, 0.0)
                         : a_re_count(d, side, t, t) - a_re_count(d, side, t, 0.0);
        s += W * (P(bp[k + 1]) - P(t));
    }
    return -2.0 * r2 * s;
}

}  // namespace

double N_via_unintegrated(const SphereDivisor& d, Side side, double r) {
    check_admissible(d, r);
    auto ps = pieces(d, side, r);
    auto bp = breakpoints(ps, r);
    return side_origin_order(d, side) * std::log(r) + radial_log_integral(d, side, r, bp) + nonradial_remainder(ps, r);
}

double angular_term(const SphereDivisor& d, Side side, double r) {
    double r2 = r * r, r4 = r2 * r2, A = 0.0;
    for (const auto& p : pieces(d, side, r)) {
        double m4 = p.radius * p.radius * p.radius * p.radius;
        A += p.weight * (m4 - r4) / (2.0 * r2 * m4) * p.re * p.re;
    }
    return A;
}

int a_count(const SphereDivisor& d, Side side, double r, double t) {
    int n = 0;
    for (const auto& p : pieces(d, side, r))
        if (std::abs(p.re) <= t) n += p.weight;
    return n;
}

double a_re_count(const SphereDivisor& d, Side side, double r, double t) {
    double s = 0.0;
    for (const auto& p : pieces(d, side, r))
        if (std::abs(p.re) <= t) s += p.weight * p.re * p.re;
    return s;
}

AngularResiduals angular_identity_check(const SphereDivisor& d, Side side, double r) {
    auto ps = pieces(d, side, r);
    auto bp = breakpoints(ps, r);
    double A = angular_term(d, side, r);
    return {angular_double_integral(d, side, r, ps, bp) - A, angular_weighted(d, side, r, ps, false) - A,
            angular_weighted(d, side, r, ps, true) - A};
}

CharacterizationResiduals analytic_characterization_check(const SphereDivisor& d, Side side, double r) {
    auto ps = pieces(d, side, r);
    auto bp = breakpoints(ps, r);
    double N = N_integrated(d, side, r);
    double base = side_origin_order(d, side) * std::log(r) + radial_log_integral(d, side, r, bp);
    double weighted = radial_weighted_integral(d, side, r, bp);
    CharacterizationResiduals out;
    out.first_form = base + weighted + angular_double_integral(d, side, r, ps, bp) - N;
    out.second_form = base + weighted + angular_weighted(d, side, r, ps, false) - N;
    double bound = base - weighted;
    out.upper_slack = bound - N;
    out.lower_slack = N - bound;
    return out;
}

std::vector<double> divisor_radii(const SphereDivisor& d, Side side) {
    std::vector<double> out;
    for (const auto& e : d.entries)
        if (side_order(e, side) > 0) out.push_back(modulus(e.sphere));
    return out;
}

}  // namespace qnev
