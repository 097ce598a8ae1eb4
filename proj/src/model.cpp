#include "finnet/model.hpp"

#include <string>

#include "finnet/errors.hpp"

namespace finnet {

void ChannelParams::validate() const {
    if (!(alpha >= 2.0)) throw ContractError("path-loss exponent must be >= 2");
    if (!(spreading_gain >= 1.0)) throw ContractError("spreading gain must be >= 1");
    if (!(chip_factor >= 0.5 && chip_factor <= 1.0))
        throw ContractError("chip factor must lie in [1/2, 1]");
    if (!(sinr_threshold > 0.0)) throw ContractError("SINR threshold must be positive");
    if (!(snr_unit_distance > 0.0)) throw ContractError("SNR must be positive");
    if (m0 < 1) throw ContractError("reference Nakagami parameter m0 must be a positive integer");
    if (!(shadow_sigma_db >= 0.0)) throw ContractError("shadowing deviation must be >= 0");
    const std::size_t count = m.size();
    if (p.size() != count || power_ratio.size() != count) {
        throw ContractError("interferer parameter lists differ in length (m=" +
                            std::to_string(count) + ", p=" + std::to_string(p.size()) +
                            ", power_ratio=" + std::to_string(power_ratio.size()) + ")");
    }
    for (std::size_t i = 0; i < count; ++i) {
        if (!(m[i] > 0.0)) throw ContractError("interferer Nakagami parameter must be positive");
        if (!(p[i] >= 0.0 && p[i] <= 1.0))
            throw ContractError("activity probability must lie in [0, 1]");
        if (!(power_ratio[i] > 0.0)) throw ContractError("power ratio must be positive");
    }
}

ChannelParams& ChannelParams::set_homogeneous_interferers(std::size_t count, double nakagami_m,
                                                          double activity, double ratio) {
    m.assign(count, nakagami_m);
    p.assign(count, activity);
    power_ratio.assign(count, ratio);
    return *this;
}

double chip_factor_rectangular(double offset_fraction) {
    if (!(offset_fraction >= 0.0 && offset_fraction < 1.0)) {
        throw std::domain_error("chip offset fraction must lie in [0, 1)");
    }
    const double x = offset_fraction;
    return 1.0 + 2.0 * x * x - 2.0 * x;
}

NormalizedPowers normalized_powers(const NetworkRealization& net, const ChannelParams& ch) {
    const std::size_t count = net.interferer_count();
    if (ch.interferer_count() != count) {
        throw ContractError("channel describes " + std::to_string(ch.interferer_count()) +
                            " interferers but the network has " + std::to_string(count));
    }
    const double tx_distance = net.transmitter.norm();
    if (!(tx_distance > 0.0)) {
        throw std::domain_error("reference transmitter coincides with the receiver");
    }
    const bool shadowed = !net.shadowing_db.empty();
    if (shadowed && net.shadowing_db.size() != count + 1) {
        throw ContractError("shadowing list must hold one entry per mobile (M+1)");
    }
    auto shadow = [&](std::size_t i) { return shadowed ? db_to_linear(net.shadowing_db[i]) : 1.0; };

    NormalizedPowers out;
    out.omega.resize(count + 1);
    out.omega[0] = shadow(0) * std::pow(tx_distance, -ch.alpha);
    const double despread = ch.despreading_factor();
    for (std::size_t i = 0; i < count; ++i) {
        const double d = net.interferers[i].norm();
        out.omega[i + 1] = despread * ch.power_ratio[i] * shadow(i + 1) * std::pow(d, -ch.alpha);
    }
    return out;
}

std::vector<double> draw_shadowing(double sigma_db, std::size_t count, RandomStream& rng) {
    std::vector<double> xi(count, 0.0);
    if (sigma_db == 0.0) return xi;
    for (auto& v : xi) v = sigma_db * standard_normal(rng);
    return xi;
}

}  // namespace finnet
