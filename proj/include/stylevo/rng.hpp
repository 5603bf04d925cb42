#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace stylevo {

// splitmix64 step; used to spread (seed, stream) pairs before seeding the engine.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Deterministic random source. Bounded draws use rejection sampling on the raw
// 64-bit stream, so sequences do not depend on standard-library distribution
// internals and are reproducible across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix(seed, 0)) {}
    Rng(std::uint64_t seed, std::uint64_t stream) : engine_(mix(seed, stream)) {}

    std::uint64_t next() { return engine_(); }

    // Uniform index in [0, n); n must be > 0.
    std::size_t index(std::size_t n) {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t threshold = (0ULL - bound) % bound;
        for (;;) {
            const std::uint64_t v = next();
            if (v >= threshold) return static_cast<std::size_t>(v % bound);
        }
    }

    bool coin() { return (next() & 1ULL) != 0; }

    // Uniform in [0, 1) with 53-bit resolution.
    double real01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t s = seed ^ (0xd1342543de82ef95ULL * (stream + 1));
        return splitmix64(s);
    }

    std::mt19937_64 engine_;
};

} // namespace stylevo
