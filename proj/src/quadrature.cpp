#include "finnet/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace finnet {

namespace {

// Kronrod abscissae (nonnegative half) and weights; odd-indexed nodes are the Gauss points.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
    double lower;
    double upper;
    double value;
    double error;
    bool operator<(const Piece& other) const { return error < other.error; }
};

Piece gauss_kronrod_15(const std::function<double(double)>& f, double lower, double upper) {
    const double center = 0.5 * (lower + upper);
    const double half = 0.5 * (upper - lower);
    const double f_center = f(center);
    double kronrod = f_center * kKronrodWeights[7];
    double gauss = f_center * kGaussWeights[3];
    double abs_sum = std::abs(kronrod);
    std::array<double, 7> f_left{};
    std::array<double, 7> f_right{};
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kNodes[j];
        f_left[j] = f(center - dx);
        f_right[j] = f(center + dx);
        const double pair = f_left[j] + f_right[j];
        kronrod += kKronrodWeights[j] * pair;
        abs_sum += kKronrodWeights[j] * (std::abs(f_left[j]) + std::abs(f_right[j]));
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    // QUADPACK error scaling.
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[7] * std::abs(f_center - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        asc += kKronrodWeights[j] * (std::abs(f_left[j] - mean) + std::abs(f_right[j] - mean));
    }
    asc *= std::abs(half);
    double error = std::abs((kronrod - gauss) * half);
    if (asc != 0.0 && error != 0.0) {
        error = asc * std::min(1.0, std::pow(200.0 * error / asc, 1.5));
    }
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
    error = std::max(error, roundoff);
    return {lower, upper, kronrod * half, error};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double lower,
                                    double upper, double abs_tol, double rel_tol,
                                    std::size_t max_intervals) {
    QuadratureResult out;
    if (lower == upper) {
        out.converged = true;
        return out;
    }
    std::priority_queue<Piece> heap;
    const Piece first = gauss_kronrod_15(f, lower, upper);
    heap.push(first);
    double value = first.value;
    double error = first.error;
    while (error > std::max(abs_tol, rel_tol * std::abs(value)) && heap.size() < max_intervals) {
        const Piece worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.lower + worst.upper);
        const Piece left = gauss_kronrod_15(f, worst.lower, mid);
        const Piece right = gauss_kronrod_15(f, mid, worst.upper);
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // Re-sum to drop the drift of the running updates.
    value = 0.0;
    error = 0.0;
    out.intervals = heap.size();
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    out.value = value;
    out.error = error;
    out.converged = error <= std::max(abs_tol, rel_tol * std::abs(value));
    return out;
}

}  // namespace finnet
