#pragma once

#include <cstddef>
#include <cstdint>

#include "finnet/model.hpp"

namespace finnet {

struct OracleConfig {
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 1;
    // Reuse each uniform as 1-u for the Bernoulli activity draws of a paired
    // trial. Off by default.
    bool antithetic = false;
    unsigned workers = 0;  // 0 = hardware concurrency
};

struct OracleEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t outages = 0;
    std::uint64_t trials = 0;
};

// Trials are split into fixed blocks of this many, each with its own stream.
inline constexpr std::uint64_t kOracleBlockSize = 1u << 14;

// Fading-level Monte Carlo: draws unit-mean gamma fading for every link and a
// Bernoulli activity per interferer, and counts SINR <= beta.
OracleEstimate simulate_outage(double gamma_snr, const NormalizedPowers& omega,
                               const ChannelParams& ch, const OracleConfig& cfg);

// Same, with a real-valued Nakagami parameter on the reference link in place
// of ch.m0.
OracleEstimate simulate_outage(double gamma_snr, const NormalizedPowers& omega,
                               const ChannelParams& ch, const OracleConfig& cfg,
                               double reference_m);

}  // namespace finnet
