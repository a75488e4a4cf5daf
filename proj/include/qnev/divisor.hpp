#pragma once

#include <complex>
#include <vector>

#include "qnev/rational.hpp"

namespace qnev {

struct ComplexRoot {
    std::complex<double> value;
    int multiplicity = 1;
};

// Aberth-Ehrlich iteration, Newton polish, then clustering of coincident
// approximations into multiple roots. Output is closed under conjugation and
// multiplicities sum to the degree. ZeroPolynomial for p == 0.
std::vector<ComplexRoot> complex_roots(const RealPoly& p);

struct DivisorEntry {
    SliceComplex sphere;
    int order = 0;  // > 0 zero, < 0 pole
};

struct SphereDivisor {
    std::vector<DivisorEntry> entries;
    int origin_order = 0;
};

enum class Side { Zeros, Poles };

// Total order k = mult_z(g^s) - mult_z(h^s); halved at real points.
SphereDivisor total_order_divisor(const SemiregularRational& f);

// Sphere factorisation at S: f = [(q-zeta)^s]^m * g with g^s vanishing to
// order n on S. Total order m + n under the factorisation definition.
struct SphericalFactorization {
    int spherical_power = 0;
    int chain_length = 0;
    int total() const { return spherical_power + chain_length; }
};
SphericalFactorization spherical_factorization(const LeftPoly& f, const SliceComplex& s);
// Signed (numerator minus denominator) version of the factorisation order.
int factorization_total_order(const SemiregularRational& f, const SliceComplex& s);

// J(zeta, R) = log(R/|zeta|) + (|zeta|^4 - R^4)/(4 R^2 |zeta|^4) (2 Re(zeta)^2 - |zeta|^2)
double jensen_kernel(const SliceComplex& zeta, double R);
// log(R/r) + (r^4 - R^4)/(4 R^2 r^2) for a real point r != 0.
double jensen_kernel_real(double r, double R);

int side_order(const DivisorEntry& e, Side side);
int side_origin_order(const SphereDivisor& d, Side side);

// Throws BoundaryDivisor when a sphere lies within 1e-12 r of |q| = r.
void check_admissible(const SphereDivisor& d, double r);

int n_count(const SphereDivisor& d, Side side, double r);
double N_integrated(const SphereDivisor& d, Side side, double r);
// n(0) log r + int_0^r (n(t)-n(0)) dt/t + sum ordt (|z|^4-r^4)/(4r^2|z|^4)(2Re^2-|z|^2)
double N_via_unintegrated(const SphereDivisor& d, Side side, double r);

double angular_term(const SphereDivisor& d, Side side, double r);
int a_count(const SphereDivisor& d, Side side, double r, double t);
double a_re_count(const SphereDivisor& d, Side side, double r, double t);

struct AngularResiduals {
    double double_integral = 0.0;  // first representation minus A
    double weighted = 0.0;         // second representation minus A, weighted count indexed by t
    double weighted_outer = 0.0;   // same with the weighted count indexed by the outer radius r
};
AngularResiduals angular_identity_check(const SphereDivisor& d, Side side, double r);

struct CharacterizationResiduals {
    double first_form = 0.0;   // radial integrals + double-integral angular form, minus N
    double second_form = 0.0;  // radial integrals + weighted angular form, minus N
    // (bound - N) for N <= n0 log r + int (n-n0)/t dt - int (t^4+r^4)/(2r^2t^3)(n-n0) dt
    double upper_slack = 0.0;
    // (N - bound) for the reversed inequality obtained from |Re zeta| <= |zeta|
    double lower_slack = 0.0;
};
CharacterizationResiduals analytic_characterization_check(const SphereDivisor& d, Side side, double r);

// Radii of the divisor spheres on the given side (including none for the origin).
std::vector<double> divisor_radii(const SphereDivisor& d, Side side);

}  // namespace qnev
