#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "qnev/rational.hpp"
#include "qnev/sampler.hpp"

namespace qnev {

enum class Scheme { MonteCarlo, AntitheticPair };

struct IntegratorConfig {
    std::size_t samples = 300000;
    std::uint64_t seed = 20240607;
    Scheme scheme = Scheme::MonteCarlo;
    double reject_tol = 1e-12;
    std::uint64_t stream = 0;

    void validate() const;  // InvalidConfig
};

struct SphericalMean {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t effective_samples = 0;  // independent units (pairs under antithetic pairing)
    std::size_t rejected = 0;
};

// Writes one value per component for the point w; returning false rejects
// the point and it is redrawn from the same chunk stream.
using Integrand = std::function<bool(const Quaternion& w, double* out)>;

// Surface means over |w| = r of `width` integrands evaluated on one shared
// stream. Chunks run in parallel (OpenMP); chunk statistics are merged in
// chunk order so the result does not depend on the thread count.
std::vector<SphericalMean> integrate(const Integrand& f, std::size_t width, double r, const IntegratorConfig& cfg);
// Single-threaded reference: same draws, one running accumulator.
std::vector<SphericalMean> integrate_serial(const Integrand& f, std::size_t width, double r,
                                            const IntegratorConfig& cfg);

// Rejection threshold reject_tol * (1 + r)^deg.
double rejection_threshold(const IntegratorConfig& cfg, double r, int degree);

SphericalMean mean_log_abs(const SemiregularRational& f, double r, const IntegratorConfig& cfg);
SphericalMean mean_log_abs(const std::function<double(const Quaternion&)>& abs_f, int degree, double r,
                           const IntegratorConfig& cfg);

// log|f(w)| and log|f(conj w)| on the same stream.
std::pair<SphericalMean, SphericalMean> paired_reflection_mean(const SemiregularRational& f, double r,
                                                               const IntegratorConfig& cfg);

// lambda_a(q) = log+ (1/|q - a|), lambda_inf(q) = log+ |q|; custom kinds add a
// bounded offset.
struct WeilFunction {
    enum class Kind { Analytic, Custom };
    Kind kind = Kind::Analytic;
    std::optional<Quaternion> singularity;  // empty = infinity
    std::function<double(const Quaternion&)> offset;

    static WeilFunction analytic(std::optional<Quaternion> a) { return {Kind::Analytic, a, {}}; }
    static WeilFunction custom(std::optional<Quaternion> a, std::function<double(const Quaternion&)> alpha) {
        return {Kind::Custom, a, std::move(alpha)};
    }
    double operator()(const Quaternion& q) const;
    // Value at q = infinity: 0 for finite singularity.
    double at_infinity() const;
};

double log_plus(double x);

SphericalMean mean_weil(const SemiregularRational& f, const WeilFunction& weil, double r,
                        const IntegratorConfig& cfg);

}  // namespace qnev
