#include "finnet/placement.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "finnet/errors.hpp"

namespace finnet {

std::string_view to_string(PlacementModel model) {
    switch (model) {
        case PlacementModel::kUniformAnnulus: return "annulus";
        case PlacementModel::kUniformClustering: return "clustering";
    }
    return "unknown";
}

PlacementModel placement_model_from_string(std::string_view name) {
    if (name == "annulus") return PlacementModel::kUniformAnnulus;
    if (name == "clustering") return PlacementModel::kUniformClustering;
    throw ContractError("unknown placement model '" + std::string(name) +
                        "' (expected annulus or clustering)");
}

void GeometryConfig::validate() const {
    if (!(r_net > 0.0)) throw ContractError("network radius must be positive");
    if (!(r_ex >= 0.0 && r_ex < r_net))
        throw ContractError("exclusion radius must satisfy 0 <= r_ex < r_net");
    if (model == PlacementModel::kUniformAnnulus && receiver_on_perimeter())
        throw ContractError("annulus placement requires the receiver at the network center");
    if (max_rejection_attempts == 0) throw ContractError("max_rejection_attempts must be >= 1");
}

namespace {

Point2 polar(double r, double theta) { return {r * std::cos(theta), r * std::sin(theta)}; }

}  // namespace

NetworkRealization place_uniform_annulus(const GeometryConfig& geom, Point2 transmitter,
                                         RandomStream& rng) {
    geom.validate();
    if (geom.model != PlacementModel::kUniformAnnulus)
        throw ContractError("place_uniform_annulus called with a non-annulus geometry");

    const double inner2 = geom.r_ex * geom.r_ex;
    const double span2 = geom.r_net * geom.r_net - inner2;
    NetworkRealization net;
    net.transmitter = transmitter;
    net.interferers.reserve(geom.num_interferers);
    for (std::size_t i = 0; i < geom.num_interferers; ++i) {
        // Inverse cdf of the radius density 2r / (r_net^2 - r_ex^2).
        const double r = std::sqrt(inner2 + span2 * uniform01(rng));
        const double theta = 2.0 * std::numbers::pi * uniform01(rng);
        net.interferers.push_back(polar(r, theta));
    }
    return net;
}

NetworkRealization place_uniform_clustering(const GeometryConfig& geom, Point2 transmitter,
                                            RandomStream& rng) {
    geom.validate();
    if (geom.model != PlacementModel::kUniformClustering)
        throw ContractError("place_uniform_clustering called with a non-clustering geometry");

    NetworkRealization net;
    net.transmitter = transmitter;
    net.interferers.reserve(geom.num_interferers);

    const Point2 receiver{0.0, 0.0};
    auto clear_of_all = [&](Point2 candidate) {
        if (distance(candidate, receiver) < geom.r_ex) return false;
        if (distance(candidate, transmitter) < geom.r_ex) return false;
        for (const Point2& q : net.interferers) {
            if (distance(candidate, q) < geom.r_ex) return false;
        }
        return true;
    };

    for (std::size_t i = 0; i < geom.num_interferers; ++i) {
        bool placed = false;
        for (std::size_t attempt = 0; attempt < geom.max_rejection_attempts; ++attempt) {
            const double r = std::sqrt(uniform01(rng)) * geom.r_net;
            const double theta = 2.0 * std::numbers::pi * uniform01(rng);
            const Point2 candidate = geom.network_center + polar(r, theta);
            if (clear_of_all(candidate)) {
                net.interferers.push_back(candidate);
                placed = true;
                break;
            }
        }
        if (!placed) {
            throw SaturationError(i, geom.num_interferers,
                                  "uniform clustering saturated: placed " + std::to_string(i) +
                                      " of " + std::to_string(geom.num_interferers) +
                                      " interferers after " +
                                      std::to_string(geom.max_rejection_attempts) +
                                      " attempts for the next one");
        }
    }
    return net;
}

NetworkRealization place_interferers(const GeometryConfig& geom, Point2 transmitter,
                                     RandomStream& rng) {
    switch (geom.model) {
        case PlacementModel::kUniformAnnulus: return place_uniform_annulus(geom, transmitter, rng);
        case PlacementModel::kUniformClustering:
            return place_uniform_clustering(geom, transmitter, rng);
    }
    throw ContractError("unhandled placement model");
}

GeometryConfig offset_to_perimeter(GeometryConfig geom) {
    geom.network_center = {-geom.r_net, 0.0};
    return geom;
}

}  // namespace finnet
