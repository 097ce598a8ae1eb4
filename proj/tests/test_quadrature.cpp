#include <cmath>
#include <numbers>

#include "doctest.h"
#include "finnet/quadrature.hpp"

using namespace finnet;

TEST_CASE("adaptive Gauss-Kronrod on smooth integrands") {
    const auto e = integrate_adaptive([](double x) { return std::exp(x); }, 0.0, 1.0, 0.0, 1e-13);
    CHECK(e.converged);
    CHECK(e.value == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));

    const auto atan = integrate_adaptive([](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, 0.0, 1e-13);
    CHECK(atan.value == doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));

    const auto reversed = integrate_adaptive([](double x) { return x * x; }, 2.0, 0.0, 0.0, 1e-13);
    CHECK(reversed.value == doctest::Approx(-8.0 / 3.0).epsilon(1e-14));

    const auto empty = integrate_adaptive([](double) { return 1.0; }, 1.0, 1.0, 0.0, 1e-13);
    CHECK(empty.converged);
    CHECK(empty.value == 0.0);
}

TEST_CASE("adaptive subdivision resolves endpoint singularities and peaks") {
    const auto root = integrate_adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0, 0.0, 1e-12);
    CHECK(root.converged);
    CHECK(root.value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(root.intervals > 1);

    const auto inv_root = integrate_adaptive([](double x) { return x > 0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0, 1.0,
                                             0.0, 1e-10, 5000);
    CHECK(inv_root.value == doctest::Approx(2.0).epsilon(1e-9));

    const double w = 1e-3;
    const auto peak = integrate_adaptive([w](double x) { return w / (x * x + w * w); }, -1.0, 1.0, 0.0, 1e-12);
    CHECK(peak.converged);
    CHECK(peak.value == doctest::Approx(2.0 * std::atan(1.0 / w)).epsilon(1e-12));
}

TEST_CASE("interval budget exhaustion is reported") {
    const auto r = integrate_adaptive([](double x) { return std::sin(200.0 * x); }, 0.0, 10.0, 0.0, 1e-14, 1);
    CHECK_FALSE(r.converged);
    CHECK(r.intervals == 1);
}
