#include "finnet/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "finnet/errors.hpp"
#include "finnet/outage.hpp"
#include "finnet/parallel.hpp"
#include "finnet/random.hpp"

namespace finnet {

namespace {

constexpr std::size_t kChunk = 4096;

}  // namespace

void SpatialConfig::validate() const {
    channel.validate();
    geometry.validate();
    if (channel.interferer_count() != geometry.num_interferers) {
        throw ContractError("channel lists " + std::to_string(channel.interferer_count()) +
                            " interferers but the geometry places " +
                            std::to_string(geometry.num_interferers));
    }
    if (!(tx_distance > 0.0)) throw ContractError("transmitter distance must be positive");
    if (realizations < 1) throw ContractError("need at least one network realization");
}

Point2 reference_transmitter(const SpatialConfig& cfg) {
    const Point2 center = cfg.geometry.network_center;
    const double offset = center.norm();
    if (offset == 0.0) return {cfg.tx_distance, 0.0};
    return {cfg.tx_distance * center.x / offset, cfg.tx_distance * center.y / offset};
}

NetworkRealization draw_realization(const SpatialConfig& cfg, std::size_t index) {
    RandomStream placement_rng = derive_stream(cfg.seed, index, StreamPurpose::kPlacement);
    NetworkRealization net;
    try {
        net = place_interferers(cfg.geometry, reference_transmitter(cfg), placement_rng);
    } catch (const SaturationError& e) {
        throw SaturationError(e.placed(), e.requested(),
                              "realization " + std::to_string(index) + ": " + e.what());
    }
    // Separate stream so xi_0..xi_k agree across runs that differ only in M.
    RandomStream shadow_rng = derive_stream(cfg.seed, index, StreamPurpose::kShadowing);
    net.shadowing_db =
        draw_shadowing(cfg.channel.shadow_sigma_db, net.interferer_count() + 1, shadow_rng);
    return net;
}

SpatialAverageResult average_outage(const SpatialConfig& cfg, std::span<const double> gamma_grid) {
    cfg.validate();
    for (double g : gamma_grid) {
        if (!(g > 0.0)) throw ContractError("SNR grid values must be positive");
    }
    const std::size_t n = cfg.realizations;
    const std::size_t width = gamma_grid.size();
    const bool keep = cfg.keep_per_realization && n <= kMaxRetainedRealizations;

    SpatialAverageResult result;
    result.grid.assign(gamma_grid.begin(), gamma_grid.end());
    result.num_realizations = n;
    result.master_seed = cfg.seed;
    if (keep) result.per_realization_outage.assign(width, std::vector<double>(n));

    std::vector<double> sums(width, 0.0);
    std::vector<double> slots;
    for (std::size_t begin = 0; begin < n; begin += kChunk) {
        const std::size_t end = std::min(n, begin + kChunk);
        slots.assign((end - begin) * width, 0.0);
        parallel_for(
            end - begin,
            [&](std::size_t k) {
                const NetworkRealization net = draw_realization(cfg, begin + k);
                const ConditionalTerms terms =
                    prepare_conditional(normalized_powers(net, cfg.channel), cfg.channel);
                for (std::size_t g = 0; g < width; ++g) {
                    slots[k * width + g] = terms.ccdf(1.0 / gamma_grid[g]);
                }
            },
            cfg.workers);
        // Sequential reduction in realization order keeps sums bit-exact.
        for (std::size_t k = 0; k < end - begin; ++k) {
            for (std::size_t g = 0; g < width; ++g) {
                const double ccdf = slots[k * width + g];
                sums[g] += ccdf;
                if (keep) result.per_realization_outage[g][begin + k] = 1.0 - ccdf;
            }
        }
    }

    result.avg_ccdf.resize(width);
    result.avg_outage.resize(width);
    for (std::size_t g = 0; g < width; ++g) {
        result.avg_ccdf[g] = std::clamp(sums[g] / static_cast<double>(n), 0.0, 1.0);
        result.avg_outage[g] = 1.0 - result.avg_ccdf[g];
    }
    return result;
}

NetworkOutageCdf network_outage_cdf(std::span<const double> per_network_outage,
                                    std::span<const double> thresholds) {
    if (!std::is_sorted(thresholds.begin(), thresholds.end())) {
        throw ContractError("outage thresholds must be sorted ascending");
    }
    if (per_network_outage.empty()) throw ContractError("no per-network outage values");
    std::vector<double> sorted(per_network_outage.begin(), per_network_outage.end());
    std::sort(sorted.begin(), sorted.end());

    NetworkOutageCdf out;
    out.thresholds.assign(thresholds.begin(), thresholds.end());
    out.cdf_values.reserve(thresholds.size());
    const auto total = static_cast<double>(sorted.size());
    for (double t : thresholds) {
        const auto at_or_below = std::upper_bound(sorted.begin(), sorted.end(), t) - sorted.begin();
        out.cdf_values.push_back(static_cast<double>(at_or_below) / total);
    }
    return out;
}

NetworkOutageCdf network_outage_cdf(const SpatialConfig& cfg, double gamma_snr,
                                    std::span<const double> thresholds) {
    if (cfg.realizations > kMaxRetainedRealizations) {
        throw ResourceError("network outage cdf needs per-network values; at most " +
                            std::to_string(kMaxRetainedRealizations) + " realizations");
    }
    SpatialConfig retained = cfg;
    retained.keep_per_realization = true;
    const double grid[] = {gamma_snr};
    const auto avg = average_outage(retained, grid);
    return network_outage_cdf(avg.per_realization_outage.front(), thresholds);
}

double transmission_capacity(double density, double avg_eps, double per_link_rate) {
    if (!(density >= 0.0)) throw ContractError("density must be nonnegative");
    if (!(avg_eps >= 0.0 && avg_eps <= 1.0)) throw ContractError("outage must lie in [0, 1]");
    if (!(per_link_rate > 0.0)) throw ContractError("per-link rate must be positive");
    return density * (1.0 - avg_eps) * per_link_rate;
}

double network_density(std::size_t interferers, double r_net) {
    return static_cast<double>(interferers) / (std::numbers::pi * r_net * r_net);
}

MSweepResult sweep_m(const SpatialConfig& cfg, std::span<const std::size_t> m_values,
                     double gamma_snr) {
    const ChannelParams& base = cfg.channel;
    if (base.interferer_count() == 0) {
        throw ContractError("sweep_m needs a channel with at least one interferer profile");
    }
    for (std::size_t i = 1; i < base.interferer_count(); ++i) {
        if (base.m[i] != base.m[0] || base.p[i] != base.p[0] ||
            base.power_ratio[i] != base.power_ratio[0]) {
            throw ContractError("sweep_m requires identical interferer parameters");
        }
    }

    MSweepResult out;
    const double grid[] = {gamma_snr};
    for (std::size_t m : m_values) {
        if (m < 1) throw ContractError("interferer counts in a sweep must be positive");
        SpatialConfig point = cfg;
        point.keep_per_realization = false;
        point.geometry.num_interferers = m;
        point.channel.set_homogeneous_interferers(m, base.m[0], base.p[0], base.power_ratio[0]);
        const double eps = average_outage(point, grid).avg_outage.front();
        out.m_values.push_back(m);
        out.avg_outage.push_back(eps);
        out.normalized_capacity.push_back(
            transmission_capacity(network_density(m, cfg.geometry.r_net), eps, 1.0));
    }
    return out;
}

double empirical_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw ContractError("quantile of an empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw ContractError("quantile level must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace finnet
