#include <cmath>

#include "doctest.h"
#include "finnet/errors.hpp"
#include "finnet/placement.hpp"

using namespace finnet;

namespace {

GeometryConfig geometry(PlacementModel model, std::size_t count) {
    GeometryConfig g;
    g.model = model;
    g.num_interferers = count;
    return g;
}

}  // namespace

TEST_CASE("placement model names round-trip") {
    for (auto m : {PlacementModel::kUniformAnnulus, PlacementModel::kUniformClustering}) {
        CHECK(placement_model_from_string(to_string(m)) == m);
    }
    CHECK_THROWS_AS(placement_model_from_string("poisson"), ContractError);
}

TEST_CASE("annulus placement stays inside the annulus") {
    const GeometryConfig g = geometry(PlacementModel::kUniformAnnulus, 500);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        RandomStream rng = derive_stream(seed, 0, StreamPurpose::kPlacement);
        const NetworkRealization net = place_uniform_annulus(g, {0.1, 0.0}, rng);
        REQUIRE(net.interferer_count() == 500);
        for (const Point2& x : net.interferers) {
            CHECK(x.norm() >= g.r_ex - 1e-12);
            CHECK(x.norm() <= g.r_net + 1e-12);
        }
        CHECK(net.transmitter == Point2{0.1, 0.0});
        CHECK(net.shadowing_db.empty());
    }
}

TEST_CASE("annulus radii follow the area-uniform law") {
    const GeometryConfig g = geometry(PlacementModel::kUniformAnnulus, 200000);
    RandomStream rng = derive_stream(9, 0, StreamPurpose::kPlacement);
    const NetworkRealization net = place_uniform_annulus(g, {0.1, 0.0}, rng);
    const double r_half = 0.5;
    const double expected = (r_half * r_half - g.r_ex * g.r_ex) / (g.r_net * g.r_net - g.r_ex * g.r_ex);
    std::size_t inside = 0;
    std::size_t upper_half_plane = 0;
    for (const Point2& x : net.interferers) {
        inside += x.norm() <= r_half;
        upper_half_plane += x.y > 0.0;
    }
    const double n = static_cast<double>(net.interferer_count());
    CHECK(std::abs(inside / n - expected) < 5.0 * std::sqrt(expected * (1 - expected) / n));
    CHECK(std::abs(upper_half_plane / n - 0.5) < 5.0 * std::sqrt(0.25 / n));
}

TEST_CASE("clustering keeps every pair of mobiles at least r_ex apart") {
    for (bool perimeter : {false, true}) {
        GeometryConfig g = geometry(PlacementModel::kUniformClustering, 60);
        if (perimeter) g = offset_to_perimeter(g);
        const Point2 tx = perimeter ? Point2{-0.1, 0.0} : Point2{0.1, 0.0};
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            RandomStream rng = derive_stream(seed, 1, StreamPurpose::kPlacement);
            const NetworkRealization net = place_uniform_clustering(g, tx, rng);
            std::vector<Point2> all = net.interferers;
            all.push_back({0.0, 0.0});
            all.push_back(tx);
            double min_pair = 1e9;
            for (std::size_t i = 0; i < all.size(); ++i) {
                for (std::size_t j = i + 1; j < all.size(); ++j) {
                    min_pair = std::min(min_pair, distance(all[i], all[j]));
                }
            }
            CHECK(min_pair >= g.r_ex);
            for (const Point2& x : net.interferers) {
                CHECK(distance(x, g.network_center) <= g.r_net + 1e-12);
            }
        }
    }
}

TEST_CASE("perimeter offset puts the receiver on the network boundary") {
    const GeometryConfig g = offset_to_perimeter(geometry(PlacementModel::kUniformClustering, 5));
    CHECK(g.network_center == Point2{-1.0, 0.0});
    CHECK(g.receiver_on_perimeter());
    CHECK(distance(g.network_center, {0.0, 0.0}) == doctest::Approx(g.r_net));
    GeometryConfig annulus = offset_to_perimeter(geometry(PlacementModel::kUniformAnnulus, 5));
    CHECK_THROWS_AS(annulus.validate(), ContractError);
}

TEST_CASE("placement is a deterministic function of the stream and draws sequentially") {
    GeometryConfig small = geometry(PlacementModel::kUniformClustering, 20);
    GeometryConfig large = geometry(PlacementModel::kUniformClustering, 35);
    RandomStream a = derive_stream(5, 2, StreamPurpose::kPlacement);
    RandomStream b = derive_stream(5, 2, StreamPurpose::kPlacement);
    const auto net_small = place_interferers(small, {0.1, 0.0}, a);
    const auto net_large = place_interferers(large, {0.1, 0.0}, b);
    for (std::size_t i = 0; i < 20; ++i) CHECK(net_small.interferers[i] == net_large.interferers[i]);
}

TEST_CASE("over-dense clustering reports saturation with counts") {
    GeometryConfig g = geometry(PlacementModel::kUniformClustering, 2000);
    g.r_ex = 0.1;
    g.max_rejection_attempts = 200;
    RandomStream rng = derive_stream(1, 0, StreamPurpose::kPlacement);
    try {
        place_uniform_clustering(g, {0.1, 0.0}, rng);
        FAIL("expected saturation");
    } catch (const SaturationError& e) {
        CHECK(e.requested() == 2000);
        CHECK(e.placed() > 0);
        CHECK(e.placed() < 2000);
    }
}

TEST_CASE("geometry validation") {
    GeometryConfig g;
    g.r_ex = 1.5;
    CHECK_THROWS_AS(g.validate(), ContractError);
    g = GeometryConfig{};
    g.r_net = 0.0;
    CHECK_THROWS_AS(g.validate(), ContractError);
    g = GeometryConfig{};
    g.max_rejection_attempts = 0;
    CHECK_THROWS_AS(g.validate(), ContractError);
    g = GeometryConfig{};
    g.model = PlacementModel::kUniformAnnulus;
    RandomStream rng = derive_stream(1, 0, StreamPurpose::kPlacement);
    CHECK_THROWS_AS(place_uniform_clustering(g, {0.1, 0.0}, rng), ContractError);
}
