#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace stopping {

// All randomness in this project comes from SplitMix64 (Steele, Lea, Flood),
// chosen because it is counter based and trivial to reproduce in any
// language: output t of a stream seeded with s is
//
//     mix64(s + (t + 1) * kGamma)
//
// with the constants below and pure 64-bit unsigned arithmetic. Given equal
// seeds, every simulation result is bit-identical across platforms and
// thread counts. tests/test_engine.cpp pins frozen output vectors.
inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

// Seed of substream `index` of master stream `seed`. Monte Carlo trial t
// runs on split_seed(seed, t), which is what makes the estimate independent
// of how trials are distributed over threads.
constexpr std::uint64_t split_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(seed ^ mix64(index + kGamma));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += kGamma;
        return mix64(state_);
    }

    // Uniform in [0, 1), 53 random mantissa bits.
    double next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n) by 64x64 multiply-high.
    std::uint64_t next_below(std::uint64_t n) {
        return std::uint64_t((unsigned __int128)(next_u64()) * n >> 64);
    }

    // Fisher-Yates, walking from the last index down.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t j = v.size(); j > 1; --j) {
            std::size_t r = std::size_t(next_below(j));
            std::swap(v[j - 1], v[r]);
        }
    }

private:
    std::uint64_t state_;
};

}  // namespace stopping
