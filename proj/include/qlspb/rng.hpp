#pragma once

#include <cstdint>

namespace qlspb {

/// Counter-based pseudo-random generator (SplitMix64 output function over a
/// keyed counter). Each draw is a pure function of (key, counter), so streams
/// can be split per instance and consumed in any order without affecting
/// reproducibility.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t key) : key_(key), counter_(0) {}

    std::uint64_t next_u64() {
        std::uint64_t z = key_ + (++counter_) * 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Standard normal via Box-Muller; consumes two uniforms per pair.
    double normal();

    std::uint64_t key() const { return key_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Derives the key of sub-stream `index` from a base seed. Two rounds of the
/// SplitMix64 mix keep distinct (base, index) pairs statistically independent.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace qlspb
