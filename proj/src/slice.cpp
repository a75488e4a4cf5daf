#include "qnev/slice.hpp"

#include <cmath>

#include "qnev/error.hpp"

namespace qnev {

Quaternion spherical_value(const SemiregularRational& f, const Quaternion& q) {
    return 0.5 * (f(q) + f(conj(q)));
}

Quaternion spherical_derivative(const SemiregularRational& f, const Quaternion& q) {
    if (imag_norm(q) == 0.0) throw Error(ErrorKind::RealPointDegenerate, "spherical derivative at a real point");
    return 0.5 * (inverse(q.imag()) * (f(q) - f(conj(q))));
}

bool on_symmetrized_zero_or_pole(const SemiregularRational& f, const Quaternion& q) {
    if (f.near_pole(q)) return true;
    const RealPoly& gs = f.num_sym();
    if (gs.degree() <= 0) return gs.is_zero();
    double tol = 1e-12 * gs.scale() * std::pow(1.0 + norm(q), gs.degree());
    return gs.abs_at(q) < tol;
}

Quaternion spherical_conjugate(const SemiregularRational& f, const Quaternion& q) {
    if (on_symmetrized_zero_or_pole(f, q))
        throw Error(ErrorKind::UndefinedAtZeroPole, "S_f undefined on zeros and poles of f^s");
    if (imag_norm(q) == 0.0) return q;
    Quaternion fq = f(q);
    Quaternion d = 0.5 * (inverse(q.imag()) * (fq - f(conj(q))));
    double deg_tol = 1e-10 * std::pow(1.0 + norm(q), std::max(f.scale_degree() - 1, 0));
    if (norm(d) < deg_tol) return conj(q);
    return d * inverse(fq) * conj(q) * fq * inverse(d);
}

double corollary_decomposition_check(const SemiregularRational& f, const Quaternion& q) {
    double fs = symmetrize(f).abs_at(q);
    double a = norm(f(q));
    double b = norm(f(spherical_conjugate(f, q)));
    return std::abs(std::log(fs) - std::log(a) - std::log(b));
}

double star_eval_identity_check(const LeftPoly& f, const LeftPoly& g, const Quaternion& q) {
    Quaternion fg = star_mul(f, g)(q);
    Quaternion fq = f(q);
    if (fq == Quaternion{}) return norm(fg);
    return norm(fg - fq * g(inverse(fq) * q * fq));
}

Quaternion blaschke(const SliceComplex& zeta, double rho, const Quaternion& q) {
    double m2 = zeta.re * zeta.re + zeta.im * zeta.im;
    if (m2 == 0.0) throw Error(ErrorKind::ZeroCenter, "Blaschke factor centred at 0");
    SliceComplex mirrored{rho * rho * zeta.re / m2, rho * rho * zeta.im / m2};
    Quaternion a = sphere_polynomial(zeta)(q);
    Quaternion b = sphere_polynomial(mirrored)(q);
    if (norm(a) < 1e-14 * (m2 + norm2(q))) throw Error(ErrorKind::EvalAtPole, "q on the Blaschke pole sphere");
    return inverse(rho * rho * a) * b * m2;
}

}  // namespace qnev
