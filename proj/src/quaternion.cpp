#include "qnev/quaternion.hpp"

#include <ostream>

#include "qnev/error.hpp"
#include "qnev/sampler.hpp"

namespace qnev {

Quaternion inverse(const Quaternion& q) {
    double n2 = norm2(q);
    if (n2 == 0.0) throw Error(ErrorKind::DivisionByZero, "inverse of zero quaternion");
    return conj(q) / n2;
}

SliceComplex sphere_of(const Quaternion& q) { return {q.w, imag_norm(q)}; }

Quaternion embed(const SliceComplex& s, const Quaternion& I) {
    if (std::abs(I.w) > 1e-12 || std::abs(norm(I) - 1.0) > 1e-12)
        throw Error(ErrorKind::InvalidArgument, "embed needs a unit imaginary quaternion");
    return {s.re, s.im * I.x, s.im * I.y, s.im * I.z};
}

Quaternion imaginary_unit(const Quaternion& q) {
    double r = imag_norm(q);
    if (r == 0.0) return kI;
    return {0.0, q.x / r, q.y / r, q.z / r};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << '[' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ']';
}

std::ostream& operator<<(std::ostream& os, const SliceComplex& s) {
    return os << '(' << s.re << ", " << s.im << ')';
}

// ---- sampler ----

SphereSampler::Stream::Stream(std::seed_seq& seq, double radius) : engine_(seq), radius_(radius) {}

Quaternion SphereSampler::Stream::next() {
    for (;;) {
        double g0 = normal_(engine_), g1 = normal_(engine_), g2 = normal_(engine_), g3 = normal_(engine_);
        double n = std::sqrt(g0 * g0 + g1 * g1 + g2 * g2 + g3 * g3);
        if (n == 0.0) continue;
        double s = radius_ / n;
        return {g0 * s, g1 * s, g2 * s, g3 * s};
    }
}

SphereSampler::SphereSampler(double radius, std::uint64_t seed, std::uint64_t stream_index)
    : radius_(radius), seed_(seed), stream_(stream_index) {
    if (!(radius > 0.0) || !std::isfinite(radius))
        throw Error(ErrorKind::InvalidArgument, "sampler radius must be positive");
}

SphereSampler::Stream SphereSampler::chunk_stream(std::uint64_t chunk) const {
    auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
    auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
    std::seed_seq seq{lo(seed_), hi(seed_), lo(stream_), hi(stream_), lo(chunk), hi(chunk)};
    return Stream(seq, radius_);
}

std::vector<Quaternion> SphereSampler::sample(std::size_t n) const {
    std::vector<Quaternion> out;
    out.reserve(n);
    for (std::uint64_t c = 0; out.size() < n; ++c) {
        Stream s = chunk_stream(c);
        for (std::size_t k = 0; k < kChunkSize && out.size() < n; ++k) out.push_back(s.next());
    }
    return out;
}

Quaternion SphereSampler::at(std::uint64_t index) const {
    Stream s = chunk_stream(index / kChunkSize);
    Quaternion q;
    for (std::uint64_t k = 0; k <= index % kChunkSize; ++k) q = s.next();
    return q;
}

}  // namespace qnev
