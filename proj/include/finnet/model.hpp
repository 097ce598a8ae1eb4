#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "finnet/random.hpp"

namespace finnet {

// Planar coordinates in units of the network radius.
struct Point2 {
    double x = 0.0;
    double y = 0.0;

    double norm() const { return std::hypot(x, y); }
    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(const Point2&, const Point2&) = default;
};

inline double distance(Point2 a, Point2 b) { return (a - b).norm(); }

// One draw of the network as seen from the reference receiver at the origin.
// shadowing_db[0] belongs to the reference transmitter, shadowing_db[i] to
// interferer i-1.
struct NetworkRealization {
    Point2 transmitter{0.1, 0.0};
    std::vector<Point2> interferers;
    std::vector<double> shadowing_db;

    std::size_t interferer_count() const { return interferers.size(); }
};

// Link-level parameters, all linear. The noise power and reference distance
// are folded into snr_unit_distance.
struct ChannelParams {
    double alpha = 3.5;
    double spreading_gain = 1.0;
    double chip_factor = 1.0;
    double sinr_threshold = 1.0;
    double snr_unit_distance = 10.0;
    int m0 = 1;
    std::vector<double> m;            // Nakagami parameter per interferer
    std::vector<double> p;            // activity probability per interferer
    std::vector<double> power_ratio;  // P_i / P_0 per interferer
    double shadow_sigma_db = 0.0;

    std::size_t interferer_count() const { return m.size(); }

    // Throws ContractError on any violated invariant.
    void validate() const;

    // Fills the per-interferer vectors with identical values for `count` interferers.
    ChannelParams& set_homogeneous_interferers(std::size_t count, double nakagami_m,
                                               double activity, double ratio = 1.0);

    // h / G, the despreading attenuation applied to every interferer.
    double despreading_factor() const { return chip_factor / spreading_gain; }
};

// Index 0 is the reference link.
struct NormalizedPowers {
    std::vector<double> omega;

    double reference() const { return omega.front(); }
    std::span<const double> interferers() const {
        return std::span<const double>(omega).subspan(1);
    }
    std::size_t interferer_count() const { return omega.size() - 1; }
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

// Unit-distance SNR for a given mean SNR of the reference link at distance
// tx_distance, without fading or shadowing: Gamma_link * |X0|^alpha.
inline double unit_distance_snr(double link_snr, double tx_distance, double alpha) {
    return link_snr * std::pow(tx_distance, alpha);
}

// h(tau) for a rectangular chip, tau given as a fraction of the chip period.
double chip_factor_rectangular(double offset_fraction);

// Default chip factor: the uniform-offset mean 2/3 when spreading, else 1.
inline double default_chip_factor(double spreading_gain) {
    return spreading_gain > 1.0 ? 2.0 / 3.0 : 1.0;
}

NormalizedPowers normalized_powers(const NetworkRealization& net, const ChannelParams& ch);

// count i.i.d. N(0, sigma_db^2) samples.
std::vector<double> draw_shadowing(double sigma_db, std::size_t count, RandomStream& rng);

}  // namespace finnet
