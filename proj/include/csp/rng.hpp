#pragma once

#include <cstdint>

namespace csp {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Maps the top 53 bits of a word to [0, 1).
constexpr double unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Counter-based stream: draw i is a pure function of (seed, i), so runs are
/// reproducible regardless of how many draws other components consume.
class CounterRng {
public:
    explicit constexpr CounterRng(std::uint64_t seed) : key_(mix64(seed)) {}

    constexpr std::uint64_t bits(std::uint64_t counter) const {
        return mix64(key_ ^ mix64(counter + 0x632be59bd9b4e019ULL));
    }
    constexpr double uniform(std::uint64_t counter) const { return unit_interval(bits(counter)); }

private:
    std::uint64_t key_;
};

/// Seed of the i-th Monte-Carlo run derived from a base seed.
constexpr std::uint64_t run_seed(std::uint64_t base, std::uint64_t run) {
    return mix64(base * 0xd1342543de82ef95ULL + run);
}

}  // namespace csp
