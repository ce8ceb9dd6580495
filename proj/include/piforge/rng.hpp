#pragma once

#include <cstdint>
#include <string>

namespace piforge {

// xoshiro256** (Blackman & Vigna), seeded through splitmix64.
// Chosen over std::mt19937 because the full draw pipeline (including the
// bounded-integer rejection sampling below) is specified here and therefore
// identical on every platform and standard library.  The generator name is
// recorded in trajectory logs so runs can be reproduced bit-for-bit.
class Rng {
public:
    static constexpr const char* kName = "xoshiro256**";

    explicit Rng(std::uint64_t seed) {
        // splitmix64 expansion of the seed into the 256-bit state
        std::uint64_t x = seed;
        for (auto& word : s_) {
            x += 0x9e3779b97f4a7c15ULL;
            std::uint64_t z = x;
            z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
            z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
            word = z ^ (z >> 31);
        }
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform draw from {0, 1, ..., n-1} by rejection (no modulo bias).
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = (~0ULL) - (~0ULL) % n;  // multiple of n
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % n;
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }
    std::uint64_t s_[4];
};

// Deterministic per-trial / per-cell stream derivation: hash the pair so
// neighbouring trial indices do not yield correlated xoshiro states.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL + index * 0xbf58476d1ce4e5b9ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace piforge
