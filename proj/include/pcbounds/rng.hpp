#pragma once
// Counter-based 64-bit generator. Output i of stream (seed, index) is a fixed
// function of (seed, index, i), so results are identical across platforms and
// independent of how work is split between threads.

#include <cmath>
#include <cstdint>

namespace pcbounds {

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
        : key_(mix(seed ^ mix(stream + 0x632BE59BD9B4E019ULL))) {}

    std::uint64_t next() noexcept { return mix(key_ + kGamma * ++counter_); }

    // Uniform on [0,1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Standard exponential, strictly positive.
    double exponential() noexcept { return -std::log1p(-uniform()) + 0x1.0p-60; }

private:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

    // SplitMix64 finalizer.
    static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace pcbounds
