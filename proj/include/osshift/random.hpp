#pragma once

#include <cstdint>
#include <random>

namespace osshift {

/// Seeded, splittable source of uniforms. Identical (seed, stream_index)
/// reproduce the same sequence; distinct stream indices give
/// statistically independent substreams. A stream must be owned
/// exclusively by one thread while drawing.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_index = 0);

    /// Uniform draw strictly inside (0,1).
    double next_uniform();

    /// A fresh independent stream derived from this stream's identity.
    RandomStream substream(std::uint64_t index) const;

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
};

}  // namespace osshift
