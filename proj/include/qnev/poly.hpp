#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "qnev/quaternion.hpp"

namespace qnev {

class RealPoly;

// f(q) = sum_k q^k a_k, coefficients on the right of the powers.
class LeftPoly {
public:
    static constexpr int kZeroDegree = -1;

    LeftPoly() = default;
    explicit LeftPoly(std::vector<Quaternion> coeffs);
    LeftPoly(std::initializer_list<Quaternion> coeffs);

    static LeftPoly constant(const Quaternion& c);
    static LeftPoly monomial(int degree, const Quaternion& c = kOne);
    static LeftPoly linear(const Quaternion& p);  // q - p

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<Quaternion>& coeffs() const { return c_; }
    Quaternion coeff(int k) const;
    bool is_slice_preserving() const;
    double scale() const;  // max coefficient modulus

    Quaternion operator()(const Quaternion& q) const;
    friend bool operator==(const LeftPoly&, const LeftPoly&) = default;

private:
    void trim();
    std::vector<Quaternion> c_;
};

Quaternion eval(const LeftPoly& f, const Quaternion& q);

LeftPoly operator+(const LeftPoly& f, const LeftPoly& g);
LeftPoly operator-(const LeftPoly& f, const LeftPoly& g);
LeftPoly operator-(const LeftPoly& f);
// c * f as a *-product with a constant on the left: coefficients c a_k.
LeftPoly operator*(const Quaternion& c, const LeftPoly& f);
// f * c: coefficients a_k c.
LeftPoly operator*(const LeftPoly& f, const Quaternion& c);

LeftPoly star_mul(const LeftPoly& f, const LeftPoly& g);
LeftPoly star_pow(const LeftPoly& f, int n);
LeftPoly conjugate(const LeftPoly& f);
// f^s = f * f^c projected to real coefficients; residue (max imaginary
// part before projection) written to *residue when given.
RealPoly symmetrize(const LeftPoly& f, double* residue = nullptr);
LeftPoly slice_derivative(const LeftPoly& f, int order = 1);
// Number of leading low-order coefficients with |a_k| <= rel_tol * scale.
int origin_multiplicity(const LeftPoly& f, double rel_tol = 1e-12);
// Drops the first k coefficients (f = q^k g).
LeftPoly shift_down(const LeftPoly& f, int k);
// Exact division by a real polynomial; remainder returned through *rem.
LeftPoly divide(const LeftPoly& f, const RealPoly& d, LeftPoly* rem = nullptr);

// A LeftPoly with real coefficients; slice-preserving.
class RealPoly {
public:
    RealPoly() = default;
    explicit RealPoly(std::vector<double> coeffs);
    RealPoly(std::initializer_list<double> coeffs);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<double>& coeffs() const { return c_; }
    double coeff(int k) const;
    double scale() const;

    std::complex<double> operator()(std::complex<double> z) const;
    // Evaluated through the slice of q; f(conj q) is bitwise conj f(q).
    Quaternion operator()(const Quaternion& q) const;
    // |f(q)|, symmetric in q -> conj q bit for bit.
    double abs_at(const Quaternion& q) const;

    LeftPoly to_left() const;
    friend bool operator==(const RealPoly&, const RealPoly&) = default;

private:
    void trim();
    std::vector<double> c_;
};

RealPoly operator+(const RealPoly& p, const RealPoly& q);
RealPoly operator*(const RealPoly& p, const RealPoly& q);
RealPoly operator*(double s, const RealPoly& p);
RealPoly derivative(const RealPoly& p, int order = 1);
RealPoly pow(const RealPoly& p, int n);
// (q - zeta)^s = q^2 - 2 Re(zeta) q + |zeta|^2.
RealPoly sphere_polynomial(const SliceComplex& s);

// Complex number x + i|Im q| and the unit direction of Im q.
struct SliceCoords {
    std::complex<double> z;
    Quaternion I;
};
SliceCoords slice_coords(const Quaternion& q);
Quaternion from_slice(std::complex<double> v, const Quaternion& I);

}  // namespace qnev
