#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "finnet/model.hpp"
#include "finnet/random.hpp"

namespace finnet::testing {

// Hand-rolled generators for property tests; every draw comes from an
// explicitly seeded stream.
inline RandomStream test_stream(std::uint64_t case_index) {
    return derive_stream(0x5eedULL, case_index, StreamPurpose::kFading);
}

inline double uniform_in(RandomStream& rng, double lo, double hi) {
    return lo + (hi - lo) * uniform01(rng);
}

inline std::size_t integer_in(RandomStream& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(hi - lo + 1));
}

// A random channel with `count` heterogeneous interferers.
inline ChannelParams random_channel(RandomStream& rng, std::size_t count, int max_m0 = 6) {
    ChannelParams ch;
    ch.alpha = uniform_in(rng, 2.0, 5.0);
    ch.spreading_gain = uniform01(rng) < 0.5 ? 1.0 : 32.0;
    ch.chip_factor = default_chip_factor(ch.spreading_gain);
    ch.sinr_threshold = db_to_linear(uniform_in(rng, -5.0, 5.0));
    ch.m0 = static_cast<int>(integer_in(rng, 1, static_cast<std::size_t>(max_m0)));
    for (std::size_t i = 0; i < count; ++i) {
        ch.m.push_back(uniform_in(rng, 0.5, 4.0));
        ch.p.push_back(uniform01(rng));
        ch.power_ratio.push_back(db_to_linear(uniform_in(rng, -6.0, 6.0)));
    }
    return ch;
}

// Normalized powers for interferers at random distances in [0.05, 1].
inline NormalizedPowers random_powers(RandomStream& rng, std::size_t count, double alpha) {
    NormalizedPowers w;
    w.omega.push_back(std::pow(uniform_in(rng, 0.05, 0.3), -alpha));
    for (std::size_t i = 0; i < count; ++i) {
        w.omega.push_back(std::pow(uniform_in(rng, 0.05, 1.0), -alpha) * uniform_in(rng, 0.01, 1.0));
    }
    return w;
}

inline double relative_error(double a, double b) {
    return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace finnet::testing
