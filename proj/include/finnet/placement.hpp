#pragma once

#include <cstddef>
#include <string_view>

#include "finnet/model.hpp"
#include "finnet/random.hpp"

namespace finnet {

enum class PlacementModel {
    kUniformAnnulus,     // i.i.d. uniform in r_ex <= |x| <= r_net around the receiver
    kUniformClustering,  // sequential uniform-disk draws with mutual exclusion zones
};

std::string_view to_string(PlacementModel model);
PlacementModel placement_model_from_string(std::string_view name);

struct GeometryConfig {
    double r_net = 1.0;
    double r_ex = 0.05;
    Point2 network_center{0.0, 0.0};
    std::size_t num_interferers = 28;
    PlacementModel model = PlacementModel::kUniformClustering;
    std::size_t max_rejection_attempts = 10'000;  // per mobile

    void validate() const;
    bool receiver_on_perimeter() const { return network_center != Point2{0.0, 0.0}; }
};

// Interferer positions only; the returned realization carries `transmitter`
// and no shadowing.
NetworkRealization place_uniform_annulus(const GeometryConfig& geom, Point2 transmitter,
                                         RandomStream& rng);

// Mobiles are drawn one at a time uniformly on the network disk and redrawn
// until they clear the exclusion zones of the receiver, the transmitter and
// every earlier interferer. Throws SaturationError once a single mobile
// exhausts max_rejection_attempts.
NetworkRealization place_uniform_clustering(const GeometryConfig& geom, Point2 transmitter,
                                            RandomStream& rng);

// Dispatches on geom.model.
NetworkRealization place_interferers(const GeometryConfig& geom, Point2 transmitter,
                                     RandomStream& rng);

// Moves the network disk so the receiver (origin) sits on its perimeter.
GeometryConfig offset_to_perimeter(GeometryConfig geom);

}  // namespace finnet
