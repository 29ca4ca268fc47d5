#include "qlspb/rng.hpp"

#include <cmath>

namespace qlspb {

namespace {

std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

}  // namespace

double CounterRng::normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // Map to (0, 1] so the log argument never vanishes.
    double u1 = 1.0 - uniform01();
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    return mix64(mix64(base + 0x9e3779b97f4a7c15ull) ^
                 (index * 0xd1b54a32d192ed03ull + 0x2545f4914f6cdd1dull));
}

}  // namespace qlspb
