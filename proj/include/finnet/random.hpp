#pragma once

#include <cstdint>
#include <random>

namespace finnet {

using RandomStream = std::mt19937_64;

// Independent sub-stream purposes for one realization.
enum class StreamPurpose : std::uint64_t {
    kPlacement = 1,
    kShadowing = 2,
    kFading = 3,
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Stream for (master_seed, index, purpose). The result depends only on the
// triple, so work can be scheduled in any order on any number of workers.
inline RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t index,
                                  StreamPurpose purpose) {
    std::uint64_t h = splitmix64(master_seed);
    h = splitmix64(h ^ index);
    h = splitmix64(h ^ static_cast<std::uint64_t>(purpose));
    std::seed_seq seq{static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(purpose)};
    return RandomStream(seq);
}

// Uniform on [0, 1) with 53 random bits.
inline double uniform01(RandomStream& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform on (0, 1]; safe as a log argument.
inline double uniform_open0(RandomStream& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

double standard_normal(RandomStream& rng);

// Gamma variate with the given shape and unit mean (scale 1/shape).
// Marsaglia-Tsang squeeze for shape >= 1, boosted by U^(1/shape) below 1,
// inversion for shape == 1.
double unit_mean_gamma(double shape, RandomStream& rng);

}  // namespace finnet
