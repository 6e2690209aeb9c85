#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace rigidity {

// Stateless 64-bit mixer (Vigna's splitmix64 step). Used to derive engine
// seeds from (seed, stream) pairs so distinct streams are decorrelated.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Seeded random stream. A stream is identified by (seed, stream_id); the
// engine state is mt19937_64 seeded with a splitmix64 hash chain over the
// pair, so trial i of an experiment can use stream_id = i and get draws
// independent of scheduling order. Splitting: substream(k) hashes the
// parent identity into a fresh seed and uses k as the child stream id.
// Bounded draws use rejection sampling on raw engine output rather than
// std::uniform_int_distribution, so sequences do not depend on the
// standard library implementation.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id)
        : seed_(seed), stream_(stream_id),
          engine_(derive_state(seed, stream_id)) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_; }

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased uniform draw from {0, 1, ..., n-1}.
    std::uint64_t uniform_below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("uniform_below: n must be positive");
        if ((n & (n - 1)) == 0) return engine_() & (n - 1);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x = engine_();
        while (x >= limit) x = engine_();
        return x % n;
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Knuth's multiplicative method; fine for the mu <= ~60 used here.
    std::uint32_t poisson(double mu) {
        if (mu < 0.0) throw std::invalid_argument("poisson: mu must be >= 0");
        const double threshold = std::exp(-mu);
        std::uint32_t k = 0;
        double prod = uniform01();
        while (prod > threshold) {
            ++k;
            prod *= uniform01();
        }
        return k;
    }

    RngStream substream(std::uint64_t k) const {
        return RngStream(derive_state(seed_, stream_), k);
    }

private:
    static std::uint64_t derive_state(std::uint64_t seed, std::uint64_t stream) {
        return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0xD1B54A32D192ED03ULL));
    }

    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

} // namespace rigidity
