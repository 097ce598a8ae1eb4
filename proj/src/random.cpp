#include "finnet/random.hpp"

#include <cmath>

namespace finnet {

double standard_normal(RandomStream& rng) {
    // Marsaglia polar method; the second variate is dropped so the call is
    // stateless and the stream position depends only on the call count.
    for (;;) {
        const double u = 2.0 * uniform01(rng) - 1.0;
        const double v = 2.0 * uniform01(rng) - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            return u * std::sqrt(-2.0 * std::log(s) / s);
        }
    }
}

namespace {

// Marsaglia & Tsang (2000), unit scale, shape >= 1.
double gamma_mt(double shape, RandomStream& rng) {
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x;
        double v;
        do {
            x = standard_normal(rng);
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform_open0(rng);
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

}  // namespace

double unit_mean_gamma(double shape, RandomStream& rng) {
    if (shape == 1.0) {
        return -std::log(uniform_open0(rng));
    }
    if (shape < 1.0) {
        const double g = gamma_mt(shape + 1.0, rng);
        return g * std::pow(uniform_open0(rng), 1.0 / shape) / shape;
    }
    return gamma_mt(shape, rng) / shape;
}

}  // namespace finnet
