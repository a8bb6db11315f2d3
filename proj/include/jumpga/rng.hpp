#pragma once

/// @file rng.hpp
/// Deterministic pseudo-random streams.
///
/// The generator is xoshiro256** seeded through SplitMix64. Streams are
/// separated with the generator's jump function (each jump advances the state
/// by 2^128 draws), so stream `s` of seed `x` is the block starting at
/// offset s * 2^128 of the sequence seeded by `x`. All derived draws
/// (uniform reals, bounded integers, geometric skips) are implemented here
/// rather than through <random> distributions, whose output is not specified
/// bit-exactly across standard library implementations.

#include <array>
#include <cstdint>
#include <limits>

namespace jumpga {

class Rng {
public:
    using result_type = std::uint64_t;

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    explicit Rng(std::uint64_t seed);

    result_type operator()() { return next(); }

    result_type next() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound). Lemire's multiply-shift with rejection.
    std::uint64_t below(std::uint64_t bound);

    bool bernoulli(double p) { return uniform01() < p; }

    /// Number of failures before the first success of a Bernoulli(p) sequence,
    /// for p in (0, 1). `log1m_p` must equal log1p(-p). Saturates at `cap`.
    std::uint64_t geometric_skip(double log1m_p, std::uint64_t cap);

    /// Advances the state by 2^128 draws.
    void jump();

    bool operator==(const Rng&) const = default;

private:
    static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    std::array<std::uint64_t, 4> state_{};
};

/// Stream `stream` of the generator family identified by `seed`.
/// Identical (seed, stream) pairs give identical sequences; distinct streams
/// are non-overlapping blocks of one period. Cost is linear in `stream`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);

} // namespace jumpga
