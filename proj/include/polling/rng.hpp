#pragma once

#include <cmath>
#include <cstdint>

namespace polling {

// Counter-style splitmix64 stream. Each (seed, stream) pair yields an
// independent, platform-stable sequence, so per-replica streams produce the
// same outcomes whether replicas run serially or in parallel.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream)
        : state_(mix(seed ^ 0x8000000000000000ull) ^
                 mix(stream * 0x9E3779B97F4A7C15ull + 0xD1B54A32D192ED03ull)) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return mix(state_);
    }

    // Uniform in (0, 1].
    double uniform() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
    }

    double exponential(double rate) { return -std::log(uniform()) / rate; }

    bool bernoulli(double p) { return uniform() <= p; }

    // Uniform in {0, ..., n-1} via the fixed-point multiply trick.
    std::uint64_t uniform_int(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t state_;
};

}  // namespace polling
