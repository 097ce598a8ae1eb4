#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "finnet/model.hpp"
#include "finnet/placement.hpp"

namespace finnet {

// One spatial experiment: a channel, a placement geometry and the number of
// network realizations to average over. channel's per-interferer lists must
// have geometry.num_interferers entries.
struct SpatialConfig {
    ChannelParams channel;
    GeometryConfig geometry;
    double tx_distance = 0.1;
    std::size_t realizations = 10'000;
    std::uint64_t seed = 1;
    bool keep_per_realization = true;
    unsigned workers = 0;

    void validate() const;
};

// Realizations above this count are averaged without retaining per-network values.
inline constexpr std::size_t kMaxRetainedRealizations = 1'000'000;

struct SpatialAverageResult {
    std::vector<double> grid;  // linear SNR values
    std::vector<double> avg_ccdf;
    std::vector<double> avg_outage;
    std::size_t num_realizations = 0;
    std::uint64_t master_seed = 0;
    // per_realization_outage[g][n]: epsilon of network n at grid point g.
    // Empty when not retained.
    std::vector<std::vector<double>> per_realization_outage;
};

struct NetworkOutageCdf {
    std::vector<double> thresholds;
    std::vector<double> cdf_values;  // fraction of networks with epsilon <= threshold
};

struct MSweepResult {
    std::vector<std::size_t> m_values;
    std::vector<double> avg_outage;
    std::vector<double> normalized_capacity;  // tau / b
};

// Reference transmitter position: tx_distance along +x, or toward the network
// center when the receiver sits off-center.
Point2 reference_transmitter(const SpatialConfig& cfg);

// Network n: placement and shadowing for realization index n of cfg.
NetworkRealization draw_realization(const SpatialConfig& cfg, std::size_t index);

SpatialAverageResult average_outage(const SpatialConfig& cfg, std::span<const double> gamma_grid);

// Empirical cdf of per-network outage. thresholds must be ascending.
NetworkOutageCdf network_outage_cdf(std::span<const double> per_network_outage,
                                    std::span<const double> thresholds);

NetworkOutageCdf network_outage_cdf(const SpatialConfig& cfg, double gamma_snr,
                                    std::span<const double> thresholds);

// tau = lambda (1 - epsilon) b.
double transmission_capacity(double density, double avg_eps, double per_link_rate);

// Interferers per unit network area, M / (pi r_net^2).
double network_density(std::size_t interferers, double r_net);

// Average outage and tau / b per M. The channel must be homogeneous; its
// first interferer's (m, p, P_i/P_0) is replicated for every M.
MSweepResult sweep_m(const SpatialConfig& cfg, std::span<const std::size_t> m_values,
                     double gamma_snr);

// Linear-interpolated sample quantile, q in [0, 1].
double empirical_quantile(std::vector<double> values, double q);

}  // namespace finnet
