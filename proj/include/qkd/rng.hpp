// rng.hpp
// Counter-based pseudo-random streams for reproducible Monte Carlo runs.
//
// The generator family is splitmix64: output_i = finalize(key + i * GOLDEN),
// where finalize is the standard 64-bit avalanche mixer. Because each output
// is a pure function of (key, counter), streams can be split by deriving
// fresh keys, and a stream's position never depends on how other streams
// were consumed. Results are bit-identical across platforms: only uint64
// arithmetic and IEEE-754 double scaling are used (no std::*_distribution).

#pragma once

#include <cstdint>
#include <stdexcept>

namespace qkd {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

/// splitmix64 finalizer: bijective 64-bit avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

class Rng {
public:
    explicit Rng(std::uint64_t key) : key_(key) {}

    std::uint64_t next_u64() noexcept {
        counter_ += kGolden;
        return mix64(key_ + counter_);
    }

    /// Uniform double in [0, 1) with 53 significant bits.
    double next_double() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in [0, n) via unbiased rejection sampling.
    std::uint64_t next_below(std::uint64_t n) {
        if (n == 0) {
            throw std::invalid_argument("Rng::next_below: n must be positive");
        }
        const std::uint64_t threshold = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) {
                return r % n;
            }
        }
    }

    std::uint64_t key() const noexcept { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Independent substream for (master_seed, index). Same inputs give the same
/// stream; distinct indices give decorrelated keys.
inline Rng derive_substream(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return Rng(mix64(master_seed ^ mix64(index + kGolden)));
}

/// Per-point seed for parameter sweeps. Salted differently from
/// derive_substream so sweep seeds never collide with pulse substream keys.
inline std::uint64_t mix_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
    return mix64(master_seed + kGolden * (index + 1));
}

}  // namespace qkd
