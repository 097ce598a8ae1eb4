#pragma once

#include <cstddef>
#include <functional>

namespace finnet {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t intervals = 0;
    bool converged = false;
};

// Globally adaptive 15-point Gauss-Kronrod: repeatedly bisects the interval
// with the largest error estimate until the summed estimate falls below
// max(abs_tol, rel_tol * |value|) or max_intervals is reached.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lower,
                                    double upper, double abs_tol, double rel_tol,
                                    std::size_t max_intervals = 2000);

}  // namespace finnet
