#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qnev/nevanlinna.hpp"

namespace qtest {

using namespace qnev;

// Hand-rolled generators for property tests.
struct Gen {
    std::mt19937_64 eng;
    explicit Gen(std::uint64_t seed) : eng(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
    double normal() { return std::normal_distribution<double>()(eng); }

    Quaternion quat(double scale = 1.0) {
        return {scale * normal(), scale * normal(), scale * normal(), scale * normal()};
    }
    Quaternion unit_imaginary() {
        Quaternion v{0.0, normal(), normal(), normal()};
        return v / norm(v);
    }
    Quaternion on_sphere(double r) {
        Quaternion v = quat();
        return v * (r / norm(v));
    }
    LeftPoly poly(int degree, double scale = 1.0) {
        std::vector<Quaternion> c;
        for (int k = 0; k <= degree; ++k) c.push_back(quat(scale));
        return LeftPoly(std::move(c));
    }
    RealPoly real_poly(int degree) {
        std::vector<double> c;
        for (int k = 0; k <= degree; ++k) c.push_back(normal());
        return RealPoly(std::move(c));
    }
    // A sphere with modulus in [lo, hi] * R; real with probability p_real.
    SliceComplex sphere(double lo, double hi, double p_real = 0.2) {
        double rho = uniform(lo, hi);
        if (uniform(0, 1) < p_real) return {uniform(0, 1) < 0.5 ? rho : -rho, 0.0};
        double th = uniform(0.05, M_PI - 0.05);
        return {rho * std::cos(th), rho * std::sin(th)};
    }
};

// Naive evaluation sum q^k a_k with explicit powers; independent of Horner.
inline Quaternion eval_naive(const LeftPoly& f, const Quaternion& q) {
    Quaternion acc, p = kOne;
    for (const auto& a : f.coeffs()) {
        acc += p * a;
        p = p * q;
    }
    return acc;
}

// f = prod_k (q - p_k) built by the star product; each p_k lies on the sphere it names.
inline LeftPoly from_linear_factors(const std::vector<Quaternion>& points) {
    LeftPoly f = LeftPoly::constant(kOne);
    for (const auto& p : points) f = star_mul(f, LeftPoly::linear(p));
    return f;
}

// 4D Laplacian at 0 by the 9-point central stencil.
template <class F>
double fd_laplacian(F&& u, double h) {
    double c = u(Quaternion{});
    double s = 0.0;
    const Quaternion e[4] = {kOne, kI, kJ, kK};
    for (const auto& d : e) s += u(h * d) + u(-h * d) - 2.0 * c;
    return s / (h * h);
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace qtest
