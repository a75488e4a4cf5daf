#pragma once

#include <cmath>
#include <iosfwd>

namespace qnev {

// q = w + x i + y j + z k
struct Quaternion {
    double w = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double re) : w(re) {}
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}

    constexpr double real() const { return w; }
    constexpr Quaternion imag() const { return {0.0, x, y, z}; }
    constexpr bool is_real() const { return x == 0.0 && y == 0.0 && z == 0.0; }

    constexpr Quaternion& operator+=(const Quaternion& o) {
        w += o.w; x += o.x; y += o.y; z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        w -= o.w; x -= o.x; y -= o.y; z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        w *= s; x *= s; y *= s; z *= s;
        return *this;
    }
    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

inline constexpr Quaternion kOne{1, 0, 0, 0};
inline constexpr Quaternion kI{0, 1, 0, 0};
inline constexpr Quaternion kJ{0, 0, 1, 0};
inline constexpr Quaternion kK{0, 0, 0, 1};

// Hamilton product.
constexpr Quaternion mul(const Quaternion& p, const Quaternion& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return mul(p, q); }
constexpr Quaternion operator*(double s, const Quaternion& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }
constexpr Quaternion operator*(const Quaternion& q, double s) { return s * q; }
constexpr Quaternion operator/(const Quaternion& q, double s) { return {q.w / s, q.x / s, q.y / s, q.z / s}; }

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }
constexpr double norm2(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }
inline double norm(const Quaternion& q) { return std::sqrt(norm2(q)); }
inline double imag_norm(const Quaternion& q) { return std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z); }
constexpr double dot(const Quaternion& p, const Quaternion& q) {
    return p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
}

// Throws DivisionByZero for q == 0.
Quaternion inverse(const Quaternion& q);

// Sphere x + yS, canonical with im >= 0.
struct SliceComplex {
    double re = 0.0;
    double im = 0.0;
    friend constexpr bool operator==(const SliceComplex&, const SliceComplex&) = default;
};

inline double modulus(const SliceComplex& s) { return std::hypot(s.re, s.im); }

SliceComplex sphere_of(const Quaternion& q);
// I must be a unit imaginary quaternion; InvalidArgument otherwise.
Quaternion embed(const SliceComplex& s, const Quaternion& I);
// Unit imaginary direction of q, or i when q is real.
Quaternion imaginary_unit(const Quaternion& q);

std::ostream& operator<<(std::ostream& os, const Quaternion& q);
std::ostream& operator<<(std::ostream& os, const SliceComplex& s);

}  // namespace qnev
