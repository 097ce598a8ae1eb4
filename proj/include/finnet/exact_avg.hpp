#pragma once

#include "finnet/model.hpp"
#include "finnet/outage.hpp"

namespace finnet {

// Gauss hypergeometric function 2F1(a, b; c; x) for x <= 0 and c > b > 0.
//
// x is first mapped to w = x / (x - 1) in [0, 1) by the Pfaff transformation.
// For w <= 0.75 the Gauss series in w is summed directly; beyond that the
// 1 - w connection formula is used, with the logarithmic (digamma) forms when
// b - a is an integer. Relative accuracy is about 1e-13 except when b - a lies
// within 1e-4 of a nonzero distance from an integer, where the w series is
// summed with an enlarged term budget instead. Throws NumericalError if a
// series fails to converge.
double gauss_2f1(double a, double b, double c, double x);

// J(y) = 2F1(m + l, m + 2/alpha; m + 2/alpha + 1; -m y / beta0) y^(m + 2/alpha).
double j_kernel(double y, double m, int ell, double alpha, double beta0);

// Uniform interferers on the annulus r_ex <= r <= r_net around a receiver at
// the network center, without shadowing.
struct AnnulusAverageInputs {
    ChannelParams channel;  // shadow_sigma_db must be 0
    double r_ex = 0.05;
    double r_net = 1.0;
    double tx_distance = 0.1;

    void validate() const;
    // beta m0 |X0|^alpha.
    double beta0() const;
    // (G/h) (P0/P_i).
    double inverse_power_scale(std::size_t i) const;
};

// Table of the per-interferer averaged factors E[G_l], in the layout of g_table.
GTable averaged_g_table_closed(const AnnulusAverageInputs& in);
GTable averaged_g_table_quadrature(const AnnulusAverageInputs& in);

// Spatially averaged ccdf via the hypergeometric closed form.
double averaged_ccdf_closed(double z, const AnnulusAverageInputs& in);

// Same quantity by adaptive quadrature of the pre-hypergeometric integrals.
double averaged_ccdf_quadrature(double z, const AnnulusAverageInputs& in);

}  // namespace finnet
