#include "osshift/random.hpp"

namespace osshift {

namespace {

// splitmix64 finalizer; decorrelates nearby seeds and stream indices.
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t engine_seed(std::uint64_t seed, std::uint64_t stream_index) {
    return mix64(mix64(seed) ^ mix64(~stream_index));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_index)
    : seed_(seed), stream_index_(stream_index), engine_(engine_seed(seed, stream_index)) {}

double RandomStream::next_uniform() {
    // 53-bit mantissa draw offset by half an ulp: never exactly 0 or 1.
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

RandomStream RandomStream::substream(std::uint64_t index) const {
    return RandomStream(seed_, mix64(stream_index_ * 0x9E3779B97F4A7C15ULL + index + 1));
}

}  // namespace osshift
