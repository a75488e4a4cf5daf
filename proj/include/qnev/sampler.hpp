#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qnev/quaternion.hpp"

namespace qnev {

// Uniform points on the 3-sphere of a given radius: four standard normals,
// normalized. Each chunk of kChunkSize draws has its own mt19937_64 seeded
// from (seed, stream_index, chunk), so any sample is reproducible from its
// index alone and chunks can be generated in any order.
class SphereSampler {
public:
    static constexpr std::size_t kChunkSize = 4096;

    class Stream {
    public:
        Quaternion next();

    private:
        friend class SphereSampler;
        Stream(std::seed_seq& seq, double radius);
        std::mt19937_64 engine_;
        std::normal_distribution<double> normal_;
        double radius_;
    };

    SphereSampler(double radius, std::uint64_t seed, std::uint64_t stream_index = 0);

    double radius() const { return radius_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_; }

    Stream chunk_stream(std::uint64_t chunk) const;
    std::vector<Quaternion> sample(std::size_t n) const;
    Quaternion at(std::uint64_t index) const;

private:
    double radius_;
    std::uint64_t seed_;
    std::uint64_t stream_;
};

}  // namespace qnev
