#pragma once

#include <cstdint>

// Project-wide deterministic random numbers.
//
// Sampling uses xoshiro256** (Blackman & Vigna) seeded through splitmix64,
// so every stream is reproducible bit-for-bit from a 64-bit seed on any
// platform. Batch b of a study draws from sub_seed(seed, b), the (b+1)-th
// output of the splitmix64 sequence started at seed; this keeps batches
// independent while a single (seed, index) pair pins every outcome.

namespace quench {

struct SplitMix64 {
    std::uint64_t state;

    explicit constexpr SplitMix64(std::uint64_t s) : state(s) {}

    constexpr std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};

inline constexpr std::uint64_t sub_seed(std::uint64_t seed,
                                        std::uint64_t index) {
    SplitMix64 sm(seed + index * 0x9e3779b97f4a7c15ULL);
    return sm.next();
}

struct Xoshiro256ss {
    std::uint64_t s[4];

    explicit constexpr Xoshiro256ss(std::uint64_t seed) : s{} {
        SplitMix64 sm(seed);
        for (auto& w : s) w = sm.next();
    }

    static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
        return (x << k) | (x >> (64 - k));
    }

    constexpr std::uint64_t next() {
        const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
        const std::uint64_t t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = rotl(s[3], 45);
        return result;
    }

    // Uniform double in [0, 1) with the full 53-bit mantissa.
    constexpr double uniform01() { return (next() >> 11) * 0x1.0p-53; }
};

}  // namespace quench
