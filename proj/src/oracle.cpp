#include "finnet/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "finnet/errors.hpp"
#include "finnet/parallel.hpp"
#include "finnet/random.hpp"

namespace finnet {

OracleEstimate simulate_outage(double gamma_snr, const NormalizedPowers& omega,
                               const ChannelParams& ch, const OracleConfig& cfg) {
    return simulate_outage(gamma_snr, omega, ch, cfg, static_cast<double>(ch.m0));
}

OracleEstimate simulate_outage(double gamma_snr, const NormalizedPowers& omega,
                               const ChannelParams& ch, const OracleConfig& cfg,
                               double reference_m) {
    if (cfg.trials < 1) throw ContractError("oracle needs at least one trial");
    if (!(gamma_snr > 0.0)) throw ContractError("SNR must be positive");
    if (!(reference_m > 0.0)) throw ContractError("reference Nakagami parameter must be positive");
    if (omega.interferer_count() != ch.interferer_count())
        throw ContractError("Omega and channel disagree on the interferer count");

    const std::size_t count = ch.interferer_count();
    const auto interferers = omega.interferers();
    const double signal_scale = omega.reference();
    const double noise = 1.0 / gamma_snr;
    const double beta = ch.sinr_threshold;

    const std::uint64_t blocks = (cfg.trials + kOracleBlockSize - 1) / kOracleBlockSize;
    std::vector<std::uint64_t> outages(blocks, 0);

    parallel_for(
        blocks,
        [&](std::size_t block) {
            RandomStream rng = derive_stream(cfg.seed, block, StreamPurpose::kFading);
            const std::uint64_t first = block * kOracleBlockSize;
            const std::uint64_t last = std::min(cfg.trials, first + kOracleBlockSize);
            std::vector<double> activity_u(count);
            std::uint64_t hits = 0;
            for (std::uint64_t trial = first; trial < last; ++trial) {
                const bool mirrored = cfg.antithetic && ((trial - first) & 1u);
                double interference = 0.0;
                for (std::size_t i = 0; i < count; ++i) {
                    double u;
                    if (mirrored) {
                        u = 1.0 - activity_u[i];
                    } else {
                        u = uniform01(rng);
                        activity_u[i] = u;
                    }
                    if (u < ch.p[i]) {
                        interference += unit_mean_gamma(ch.m[i], rng) * interferers[i];
                    }
                }
                const double signal = unit_mean_gamma(reference_m, rng) * signal_scale;
                if (signal <= beta * (noise + interference)) ++hits;
            }
            outages[block] = hits;
        },
        cfg.workers);

    OracleEstimate out;
    out.trials = cfg.trials;
    for (auto h : outages) out.outages += h;
    out.estimate = static_cast<double>(out.outages) / static_cast<double>(cfg.trials);
    out.std_error =
        std::sqrt(out.estimate * (1.0 - out.estimate) / static_cast<double>(cfg.trials));
    return out;
}

}  // namespace finnet
