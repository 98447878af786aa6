#pragma once

#include <cstdint>
#include <limits>

namespace pathint {

namespace detail {

/// SplitMix64 finalizer (Stafford's mix13 variant as used by splitmix64).
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

} // namespace detail

/// SplitMix64 generator. Deterministic and splittable: every draw is a pure
/// function of (seed, draw index), and split(stream) derives an independent
/// child generator from (seed, stream) without touching this one.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), state_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t next_u64() {
        state_ += detail::kGolden;
        return detail::mix64(state_);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t uniform_index(std::uint64_t n) {
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t u;
        do {
            u = next_u64();
        } while (u >= limit);
        return u % n;
    }

    /// Independent child generator for the given stream index.
    Rng split(std::uint64_t stream) const {
        return Rng(detail::mix64(seed_ ^ detail::mix64(stream + 1)));
    }

private:
    std::uint64_t seed_;
    std::uint64_t state_;
};

} // namespace pathint
