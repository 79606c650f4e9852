#pragma once

#include <cstdint>
#include <limits>

namespace pervcalc {

/// SplitMix64 stream. Every randomized routine takes one of these (or a seed)
/// explicitly; draws are bit-reproducible across platforms.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound)
    {
        // rejection keeps the draw unbiased
        const std::uint64_t limit = max() - max() % bound;
        std::uint64_t x;
        do
            x = (*this)();
        while (x >= limit);
        return x % bound;
    }

    /// Uniform in [lo, hi].
    std::int64_t range(std::int64_t lo, std::int64_t hi)
    {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
    }

    bool chance(std::uint64_t numerator, std::uint64_t denominator) { return below(denominator) < numerator; }

private:
    std::uint64_t state_;
};

/// Seed of trial `index` in a stream started from `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index)
{
    SplitMix64 mix(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
    return mix();
}

}  // namespace pervcalc
