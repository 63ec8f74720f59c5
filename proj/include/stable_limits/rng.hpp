#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace stable_limits {

// One splitmix64 step. Used for seeding and for hashing (seed, index) pairs
// into independent stream states.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Stream purposes keep the replicate streams for different roles disjoint.
enum class StreamPurpose : std::uint64_t {
    prelimit_samples = 0x70726531ULL,
    limit_path       = 0x6c696d31ULL,
    diagnostics      = 0x64696131ULL,
    alternate        = 0x616c7431ULL,
};

// xoshiro256++ with splitmix64 seeding. Self-contained so that streams are
// bit-reproducible across platforms and standard-library versions.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& word : s_) word = splitmix64_next(sm);
    }

    // Stream for replicate `index` of a run keyed by `master_seed`. Distinct
    // (master, index, purpose) triples give statistically independent streams.
    static RngStream derive(std::uint64_t master_seed, std::uint64_t index, StreamPurpose purpose) {
        std::uint64_t sm = master_seed ^ (0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(purpose));
        std::uint64_t mixed = splitmix64_next(sm);
        sm = mixed + 0xABCD0123456789EFULL * (index + 1);
        return RngStream(splitmix64_next(sm));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on (0, 1]; never returns 0, so x^{-1/alpha} style inverse
    // transforms stay finite.
    double uniform01() {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    // Uniform on (0, hi].
    double uniform(double hi) { return uniform01() * hi; }

    bool bernoulli(double prob) { return uniform01() <= prob; }

    double exponential() { return -std::log(uniform01()); }

    // Poisson count by summing unit exponentials; fine for the desk-scale
    // means used here (guarded against runaways).
    std::uint64_t poisson(double mean) {
        if (!(mean >= 0.0) || mean > 1e8)
            throw std::invalid_argument("poisson: mean out of range");
        std::uint64_t count = 0;
        double acc = exponential();
        while (acc <= mean) {
            ++count;
            acc += exponential();
        }
        return count;
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace stable_limits
