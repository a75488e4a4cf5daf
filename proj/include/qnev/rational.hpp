#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "qnev/poly.hpp"

namespace qnev {

// f = g * h^{-*}. Evaluated as f(q) = h^s(q)^{-1} (g * h^c)(q); h^s(q) lies in
// the slice of q, and a slice-preserving factor acts from the left in the
// pointwise form of a *-product with left coefficients.
class SemiregularRational {
public:
    SemiregularRational();  // the zero function
    SemiregularRational(LeftPoly num);
    SemiregularRational(LeftPoly num, LeftPoly den);

    const LeftPoly& num() const { return num_; }
    const LeftPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_slice_preserving() const { return slice_preserving_; }
    // Degree used to scale tolerances.
    int scale_degree() const { return std::max(num_.degree(), 0) + std::max(den_.degree(), 0); }

    // g * h^c and h^s.
    const LeftPoly& num_times_den_conj() const { return ghc_; }
    const RealPoly& den_sym() const { return hs_; }
    const RealPoly& num_sym() const { return gs_; }

    // Throws EvalAtPole when |h^s(q)| < 1e-12 * scale * (1+|q|)^deg(h^s).
    Quaternion operator()(const Quaternion& q) const;
    // |f(q)|; for slice-preserving f symmetric under q -> conj q bit for bit.
    double abs_at(const Quaternion& q) const;
    bool near_pole(const Quaternion& q) const;

private:
    LeftPoly num_, den_;
    LeftPoly ghc_;
    RealPoly hs_, gs_;
    RealPoly ghc_real_;
    bool slice_preserving_ = false;
};

Quaternion eval(const SemiregularRational& f, const Quaternion& q);

SemiregularRational add(const SemiregularRational& f, const SemiregularRational& g);
SemiregularRational sub(const SemiregularRational& f, const SemiregularRational& g);
SemiregularRational star_mul(const SemiregularRational& f, const SemiregularRational& g);
SemiregularRational star_pow(const SemiregularRational& f, int n);
SemiregularRational star_reciprocal(const SemiregularRational& f);
SemiregularRational conjugate(const SemiregularRational& f);
SemiregularRational translate(const SemiregularRational& f, const Quaternion& a);  // f - a

// f^s as a ratio of real polynomials: g^s / h^s.
struct RealRatio {
    RealPoly num, den;
    Quaternion operator()(const Quaternion& q) const;
    double abs_at(const Quaternion& q) const;
};
RealRatio symmetrize(const SemiregularRational& f);

// First n Taylor coefficients at 0 (f = sum q^k c_k near 0). Requires h(0) != 0.
std::vector<Quaternion> taylor_at_origin(const SemiregularRational& f, int n);

// Total order at 0 of numerator and denominator (f = q^{m} g~ with g~(0) finite, nonzero).
int origin_order(const SemiregularRational& f);
SemiregularRational deflate_origin(const SemiregularRational& f);

// 2x2 quaternionic matrix [[A, B], [C, D]].
struct GL2H {
    Quaternion A = kOne, B, C, D = kOne;
    // Modulus of the Dieudonne determinant.
    double dieudonne_norm() const;
};
GL2H operator*(const GL2H& s, const GL2H& t);

// (A*f + B) * (C*f + D)^{-*}. Throws DegenerateTransform.
SemiregularRational linear_fractional(const GL2H& t, const SemiregularRational& f);

}  // namespace qnev
