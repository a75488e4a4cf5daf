#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qnev/divisor.hpp"
#include "qnev/integrate.hpp"
#include "qnev/slice.hpp"

namespace qnev {

// A value a in H or infinity (empty).
using Target = std::optional<Quaternion>;

enum class KernelConvention { Corrected, Perotti };

const char* to_string(KernelConvention k);

// -(r^2/4) Re((c0^{-1} c1)^2) + (r^2/4) Re(c0^{-1} 2 c2) for f = c0 + q c1 + q^2 c2 + ...
double jensen_harmonic_terms(const Quaternion& c0, const Quaternion& c1, const Quaternion& c2, double r);
double jensen_harmonic_terms(const SemiregularRational& g, double r);
// Same quantity from the symmetrization: -(r^2/16) Laplacian of log|g^s| at 0,
// with Laplacian log|P|(0) = -2 (2 p2/p0 - (p1/p0)^2) for real P.
double harmonic_from_symmetrization(const SemiregularRational& g, double r);

// H(f,a,r): the harmonic terms of f - a; 0 for a = infinity.
// CenterIsZeroOrPole when f - a vanishes or has a pole at 0.
double harmonic_remainder(const SemiregularRational& f, const Target& a, double r);
// Same, after removing the origin factor of f - a.
double harmonic_remainder_deflated(const SemiregularRational& f, const Target& a, double r);

// Divisor relevant for N(f,a,.): zeros of f - a, or poles of f for a = infinity.
struct CountingDivisor {
    SphereDivisor divisor;
    Side side = Side::Zeros;
};
CountingDivisor counting_divisor(const SemiregularRational& f, const Target& a);

SphericalMean proximity(const SemiregularRational& f, const WeilFunction& weil, double r, const IntegratorConfig& cfg);

struct Characteristic {
    double T = 0.0;
    double N = 0.0;
    double H = 0.0;
    SphericalMean m;  // m(f^s, inf, r) for a = inf, m((f-a)^s, 0, r) otherwise
    double std_error() const { return 0.5 * m.std_error; }
};
Characteristic characteristic(const SemiregularRational& f, const Target& a, double r, const IntegratorConfig& cfg);

// Scalar field on the sphere; throwing or returning a non-finite value rejects the point.
using Field = std::function<double(const Quaternion&)>;
// Means of several fields over one shared stream; a point rejected by any field is redrawn for all.
std::vector<SphericalMean> shared_means(const std::vector<Field>& fields, double r, const IntegratorConfig& cfg);

// log+ |f^s(w)| and log+ 1/|(f-a)^s(w)|: the integrands of the characteristic.
Field characteristic_field(const SemiregularRational& f, const Target& a);
double characteristic_closed_part(const SemiregularRational& f, const Target& a, double r);

struct JensenReport {
    double radius = 0.0;
    int origin_order = 0;
    SphereDivisor divisor;
    double lhs = 0.0;
    SphericalMean boundary_f, boundary_fSf;
    double sigma = 0.0;  // standard error of (boundary_f + boundary_fSf) / 2
    double harmonic = 0.0;
    double divisor_sum = 0.0;
    KernelConvention kernel_convention = KernelConvention::Corrected;
    double rhs = 0.0;
    double residual = 0.0;  // rhs - lhs
};

// Weight of the kernel of a sphere under a convention (Perotti doubles nonreal spheres).
double kernel_weight(const SliceComplex& s, KernelConvention k);
JensenReport verify_jensen(const SemiregularRational& f, double r, const IntegratorConfig& cfg,
                           KernelConvention k = KernelConvention::Corrected);
// Rebuilds a report for another convention from the same boundary means.
JensenReport with_convention(const JensenReport& rep, KernelConvention k);

struct ArbiterReport {
    SliceComplex sphere;
    int total_order = 0;          // f^s multiplicity rule
    int factorization_order = 0;  // sphere-factor plus chain-length rule
    std::vector<std::pair<int, double>> residuals;  // (c, rhs - lhs with c J)
    int best = 0;
    double sigma = 0.0;
    JensenReport base;
};
ArbiterReport counting_arbiter(const SemiregularRational& f, double r, const IntegratorConfig& cfg,
                               std::vector<int> candidates = {1, 2});

// Mean of log|f(w)| - log|f(S_{f-a}(w))|. For slice-preserving f the second
// modulus is taken as |f(conj w)|, which equals it exactly.
SphericalMean mpb_defect(const SemiregularRational& f, const Quaternion& a, double r, const IntegratorConfig& cfg);

struct FmtRow {
    double r = 0.0;
    double N_a = 0.0, N_inf = 0.0, H = 0.0;
    double residual = 0.0;
    double std_error = 0.0;
    double envelope = 0.0;  // m(f f^c, inf, r), form 1 only
};
std::vector<FmtRow> verify_fmt(const SemiregularRational& f, const Target& a, const std::vector<double>& radii,
                               const IntegratorConfig& cfg, int form);

struct O1Summary {
    double spread = 0.0;
    double slope = 0.0;  // least squares in log r
    double max = 0.0;
};
O1Summary summarize(const std::vector<double>& radii, const std::vector<double>& values);

// Log-spaced radii, nudged away from divisor moduli (within 1e-6 r).
std::vector<double> admissible_grid(double r_min, double r_max, int count, const std::vector<double>& avoid);

struct ProfileRow {
    double r = 0.0;
    double N = 0.0;
    SphericalMean m;  // m((f-a)^s, 0, r), or m(f^s, inf, r); T = N + m/2 - H
    double H = 0.0;
    double T = 0.0;
    double T_se = 0.0;
    double A = 0.0;
    double fmt3 = 0.0;
    double fmt3_se = 0.0;
};
std::vector<ProfileRow> profile(const SemiregularRational& f, const Target& a, const std::vector<double>& radii,
                                const IntegratorConfig& cfg);

struct Check {
    std::string name;
    double value = 0.0;      // residual or slack
    double tolerance = 0.0;  // gate
    bool passed = false;
    bool gated = true;       // informational rows carry gated = false
};

struct AlgebraInputs {
    SemiregularRational f, g;
    Quaternion a, b;
    GL2H t;
    std::vector<double> radii;
};
std::vector<Check> characteristic_algebra_suite(const AlgebraInputs& in, const IntegratorConfig& cfg);

struct NBoundReport {
    std::vector<double> radii;
    std::vector<double> excess;  // N(f,a,r) - T(f,r) - H(f,a,r)
    O1Summary summary;
};
NBoundReport n_bound_check(const SemiregularRational& f, const Quaternion& a, const std::vector<double>& radii,
                           const IntegratorConfig& cfg);

}  // namespace qnev
