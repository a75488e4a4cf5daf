#pragma once

#include "qnev/rational.hpp"

namespace qnev {

// f°_s(q) = (f(q) + f(conj q)) / 2
Quaternion spherical_value(const SemiregularRational& f, const Quaternion& q);
// f'_s(q) = Im(q)^{-1} (f(q) - f(conj q)) / 2; RealPointDegenerate on the real axis.
Quaternion spherical_derivative(const SemiregularRational& f, const Quaternion& q);

// S_f(q) = f'_s f(q)^{-1} conj(q) f(q) f'_s^{-1}, or conj(q) where f'_s
// (numerically) vanishes. UndefinedAtZeroPole on zeros/poles of f^s.
Quaternion spherical_conjugate(const SemiregularRational& f, const Quaternion& q);
bool on_symmetrized_zero_or_pole(const SemiregularRational& f, const Quaternion& q);

// |log|f^s(q)| - log|f(q)| - log|f(S_f(q))||
double corollary_decomposition_check(const SemiregularRational& f, const Quaternion& q);

// |(f*g)(q) - f(q) g(f(q)^{-1} q f(q))|, or |(f*g)(q)| when f(q) = 0.
double star_eval_identity_check(const LeftPoly& f, const LeftPoly& g, const Quaternion& q);

// (rho^2 (q - zeta)^s)^{-1} (q - rho^2 zeta^{-1})^s |zeta|^2, unimodular on |q| = rho.
Quaternion blaschke(const SliceComplex& zeta, double rho, const Quaternion& q);

}  // namespace qnev
