#include "finnet/exact_avg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <map>
#include <sstream>
#include <tuple>
#include <vector>

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "finnet/errors.hpp"
#include "finnet/quadrature.hpp"

namespace finnet {

namespace {

constexpr double kSeriesEps = 1e-16;
constexpr std::size_t kSeriesTermCap = 100'000;
constexpr std::size_t kExtendedTermCap = 5'000'000;
constexpr double kQuadratureTol = 1e-12;
constexpr double kDirectSeriesLimit = 0.75;  // largest w summed directly
constexpr double kIntegerSnap = 1e-10;
constexpr double kNearIntegerBand = 1e-4;

std::string describe(double a, double b, double c, double x) {
    std::ostringstream os;
    os.precision(17);
    os << "2F1(" << a << ", " << b << "; " << c << "; " << x << ")";
    return os.str();
}

bool is_nonpositive_integer(double v) { return v <= 0.0 && v == std::floor(v); }

// Gauss series sum_n (a)_n (b)_n / ((c)_n n!) w^n, 0 <= w < 1.
double gauss_series(double a, double b, double c, double w, std::size_t cap, const char* where) {
    double sum = 1.0;
    double term = 1.0;
    for (std::size_t n = 0; n < cap; ++n) {
        const double dn = static_cast<double>(n);
        const double factor = (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * w;
        term *= factor;
        sum += term;
        if (term == 0.0) return sum;
        // Ratios approach w monotonically, so max(|factor|, w) bounds the tail ratio.
        const double r = std::max(std::abs(factor), w);
        if (r < 1.0 && std::abs(term) * r / (1.0 - r) <= kSeriesEps * std::abs(sum)) return sum;
    }
    std::ostringstream os;
    os << "Gauss series did not converge in " << cap << " terms (" << where << ", a=" << a
       << ", b=" << b << ", c=" << c << ", w=" << w << ")";
    throw NumericalError(os.str());
}

// prod Gamma(num) / prod Gamma(den); zero when any den is a pole.
double gamma_ratio(std::initializer_list<double> num, std::initializer_list<double> den) {
    double log_mag = 0.0;
    int sign = 1;
    for (double v : den) {
        if (is_nonpositive_integer(v)) return 0.0;
        int s = 1;
        log_mag -= boost::math::lgamma(v, &s);
        sign *= s;
    }
    for (double v : num) {
        if (is_nonpositive_integer(v)) {
            throw NumericalError("gamma function pole in a connection coefficient");
        }
        int s = 1;
        log_mag += boost::math::lgamma(v, &s);
        sign *= s;
    }
    return sign * std::exp(log_mag);
}

double pochhammer_ratio_term(double a, double b, double c_like, std::size_t n) {
    // (a)_n (b)_n / (n! (c_like)_n), built incrementally.
    double t = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double dk = static_cast<double>(k);
        t *= (a + dk) * (b + dk) / ((dk + 1.0) * (c_like + dk));
    }
    return t;
}

// sum_n (p)_n (q)_n / (n! (n+k)!) v^n [ln v - psi(n+1) - psi(n+k+1) + psi(p+n) + psi(q+n)]
double log_series(double p, double q, int k, double v) {
    const double log_v = std::log(v);
    double psi_1 = boost::math::digamma(1.0);
    double psi_k1 = boost::math::digamma(static_cast<double>(k) + 1.0);
    double psi_p = boost::math::digamma(p);
    double psi_q = boost::math::digamma(q);
    double coef = 1.0 / std::tgamma(static_cast<double>(k) + 1.0);
    double sum = 0.0;
    int quiet = 0;
    for (std::size_t n = 0; n < kSeriesTermCap; ++n) {
        const double dn = static_cast<double>(n);
        const double term = coef * (log_v - psi_1 - psi_k1 + psi_p + psi_q);
        sum += term;
        if (std::abs(term) <= kSeriesEps * std::abs(sum) || coef == 0.0) {
            if (++quiet >= 2) return sum;
        } else {
            quiet = 0;
        }
        coef *= (p + dn) * (q + dn) / ((dn + 1.0) * (dn + 1.0 + k)) * v;
        psi_1 += 1.0 / (dn + 1.0);
        psi_k1 += 1.0 / (dn + 1.0 + k);
        psi_p += 1.0 / (p + dn);
        psi_q += 1.0 / (q + dn);
    }
    throw NumericalError("logarithmic connection series did not converge");
}

// 2F1(a, b; c; 1 - v) for 0 < v < 0.25 via the 1 - w connection formulas.
double connection_1mw(double a, double b, double c, double v) {
    const double d = c - a - b;
    const double nearest = std::round(d);
    const double offset = std::abs(d - nearest);

    if (offset <= kIntegerSnap * std::max(1.0, std::abs(d))) {
        const int m = static_cast<int>(nearest);
        if (m >= 0) {
            // c = a + b + m.
            double finite = 0.0;
            if (m >= 1) {
                double partial = 0.0;
                double vn = 1.0;
                for (int n = 0; n < m; ++n) {
                    partial += pochhammer_ratio_term(a, b, 1.0 - m, static_cast<std::size_t>(n)) * vn;
                    vn *= v;
                }
                finite = gamma_ratio({static_cast<double>(m), a + b + m}, {a + m, b + m}) * partial;
            }
            const double sign = (m % 2 == 0) ? 1.0 : -1.0;
            const double log_part = gamma_ratio({a + b + m}, {a, b}) * sign * std::pow(v, m) *
                                    log_series(a + m, b + m, m, v);
            return finite - log_part;
        }
        // c = a + b - k.
        const int k = -m;
        double partial = 0.0;
        double vn = 1.0;
        for (int n = 0; n < k; ++n) {
            partial += pochhammer_ratio_term(a - k, b - k, 1.0 - k, static_cast<std::size_t>(n)) * vn;
            vn *= v;
        }
        const double finite =
            gamma_ratio({static_cast<double>(k), a + b - k}, {a, b}) * std::pow(v, -k) * partial;
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        const double scale = gamma_ratio({a + b - k}, {a - k, b - k});
        const double log_part = scale == 0.0 ? 0.0 : sign * scale * log_series(a, b, k, v);
        return finite - log_part;
    }

    const double first = gamma_ratio({c, d}, {c - a, c - b}) *
                         gauss_series(a, b, 1.0 - d, v, kSeriesTermCap, "connection");
    const double second = std::pow(v, d) * gamma_ratio({c, -d}, {a, b}) *
                          gauss_series(c - a, c - b, 1.0 + d, v, kSeriesTermCap, "connection");
    return first + second;
}

}  // namespace

double gauss_2f1(double a, double b, double c, double x) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(x)) {
        throw ContractError("non-finite argument to " + describe(a, b, c, x));
    }
    if (!(c > b && b > 0.0)) throw ContractError("2F1 requires c > b > 0: " + describe(a, b, c, x));
    if (!(x <= 0.0)) throw ContractError("2F1 implemented for x <= 0 only: " + describe(a, b, c, x));
    if (x == 0.0 || a == 0.0) return 1.0;

    // Pfaff: 2F1(a, b; c; x) = (1 - x)^(-a) 2F1(a, c - b; c; x / (x - 1)).
    const double w = x / (x - 1.0);
    const double prefactor = std::exp(-a * std::log1p(-x));
    const double bb = c - b;

    if (w <= kDirectSeriesLimit || is_nonpositive_integer(a)) {
        const std::size_t cap = is_nonpositive_integer(a) ? static_cast<std::size_t>(-a) + 2
                                                          : kSeriesTermCap;
        return prefactor * gauss_series(a, bb, c, w, std::max(cap, std::size_t{2}), "direct");
    }

    const double d = c - a - bb;
    const double offset = std::abs(d - std::round(d));
    if (offset > kIntegerSnap * std::max(1.0, std::abs(d)) && offset < kNearIntegerBand) {
        // Connection coefficients cancel to ~eps/offset here; sum the slow series instead.
        try {
            return prefactor * gauss_series(a, bb, c, w, kExtendedTermCap, "near-integer");
        } catch (const NumericalError& e) {
            throw NumericalError(std::string(e.what()) + " while evaluating " + describe(a, b, c, x));
        }
    }
    try {
        // 1 - w = 1 / (1 - x), formed directly to keep its relative accuracy for large |x|.
        return prefactor * connection_1mw(a, bb, c, 1.0 / (1.0 - x));
    } catch (const NumericalError& e) {
        throw NumericalError(std::string(e.what()) + " while evaluating " + describe(a, b, c, x));
    }
}

double j_kernel(double y, double m, int ell, double alpha, double beta0) {
    if (!(y >= 0.0)) throw ContractError("J(y) requires y >= 0");
    if (y == 0.0) return 0.0;
    const double b = m + 2.0 / alpha;
    return gauss_2f1(m + ell, b, b + 1.0, -m * y / beta0) * std::pow(y, b);
}

void AnnulusAverageInputs::validate() const {
    channel.validate();
    if (channel.shadow_sigma_db != 0.0) {
        throw ContractError("the annulus average is defined without shadowing (sigma_s = 0)");
    }
    if (!(r_ex >= 0.0 && r_ex < r_net)) throw ContractError("need 0 <= r_ex < r_net");
    if (!(tx_distance > 0.0)) throw ContractError("transmitter distance must be positive");
}

double AnnulusAverageInputs::beta0() const {
    return channel.sinr_threshold * channel.m0 * std::pow(tx_distance, channel.alpha);
}

double AnnulusAverageInputs::inverse_power_scale(std::size_t i) const {
    return 1.0 / (channel.despreading_factor() * channel.power_ratio[i]);
}

namespace {

using BracketKey = std::tuple<double, double, double>;  // m, p, c

// Fills one column per distinct interferer profile via `bracket(m, p, c, ell)`,
// which returns the integral part E[G_ell] - (1-p) delta_ell.
template <typename Bracket>
GTable averaged_table(const AnnulusAverageInputs& in, Bracket&& bracket) {
    in.validate();
    const std::size_t count = in.channel.interferer_count();
    const auto rows = static_cast<std::size_t>(in.channel.m0);
    GTable table(rows, count);
    std::map<BracketKey, std::vector<double>> memo;
    for (std::size_t i = 0; i < count; ++i) {
        const double m = in.channel.m[i];
        const double p = in.channel.p[i];
        const double c = in.inverse_power_scale(i);
        auto [it, fresh] = memo.try_emplace(BracketKey{m, p, c});
        if (fresh) {
            it->second.resize(rows);
            for (std::size_t ell = 0; ell < rows; ++ell) {
                const double delta = ell == 0 ? 1.0 - p : 0.0;
                it->second[ell] = delta + bracket(m, p, c, static_cast<int>(ell));
            }
        }
        for (std::size_t ell = 0; ell < rows; ++ell) table.at(ell, i) = it->second[ell];
    }
    return table;
}

// 2 p Gamma(l+m) / (alpha c^(2/alpha) (r_net^2 - r_ex^2) l! Gamma(m)).
double bracket_constant(const AnnulusAverageInputs& in, double m, double p, double c, int ell) {
    const double alpha = in.channel.alpha;
    const double log_rising = std::lgamma(ell + m) - std::lgamma(ell + 1.0) - std::lgamma(m);
    return 2.0 * p * std::exp(log_rising) /
           (alpha * std::pow(c, 2.0 / alpha) * (in.r_net * in.r_net - in.r_ex * in.r_ex));
}

}  // namespace

GTable averaged_g_table_closed(const AnnulusAverageInputs& in) {
    const double alpha = in.channel.alpha;
    const double beta0 = in.beta0();
    return averaged_table(in, [&](double m, double p, double c, int ell) {
        if (p == 0.0) return 0.0;
        const double lower = c * std::pow(in.r_ex, alpha);
        const double upper = c * std::pow(in.r_net, alpha);
        const double diff = j_kernel(upper, m, ell, alpha, beta0) - j_kernel(lower, m, ell, alpha, beta0);
        // m^m / (beta0^(m+l) (m + 2/alpha)) in log form.
        const double log_scale = m * std::log(m) - (m + ell) * std::log(beta0) -
                                 std::log(m + 2.0 / alpha);
        return bracket_constant(in, m, p, c, ell) * std::exp(log_scale) * diff;
    });
}

GTable averaged_g_table_quadrature(const AnnulusAverageInputs& in) {
    const double alpha = in.channel.alpha;
    const double beta0 = in.beta0();
    return averaged_table(in, [&](double m, double p, double c, int ell) {
        if (p == 0.0) return 0.0;
        const double lower = c * std::pow(in.r_ex, alpha);
        const double upper = c * std::pow(in.r_net, alpha);
        auto integrand = [&](double x) {
            if (x <= 0.0) return 0.0;
            const double log_f = (2.0 - alpha) / alpha * std::log(x) - ell * std::log(m * x) -
                                 (m + ell) * std::log1p(beta0 / (m * x));
            return std::exp(log_f);
        };
        // Split around the knee at x ~ beta0 / m so each piece is smooth.
        std::vector<double> cuts{lower};
        for (double k : {1e-2, 1e-1, 1.0, 1e1, 1e2}) {
            const double pt = k * beta0 / m;
            if (pt > lower && pt < upper) cuts.push_back(pt);
        }
        cuts.push_back(upper);

        double total = 0.0;
        for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
            const QuadratureResult piece =
                integrate_adaptive(integrand, cuts[s], cuts[s + 1], 0.0, kQuadratureTol);
            if (!piece.converged) {
                std::ostringstream os;
                os << "quadrature tolerance not met on [" << cuts[s] << ", " << cuts[s + 1]
                   << "]: error " << piece.error << " for value " << piece.value;
                throw NumericalError(os.str());
            }
            total += piece.value;
        }
        return bracket_constant(in, m, p, c, ell) * total;
    });
}

double averaged_ccdf_closed(double z, const AnnulusAverageInputs& in) {
    const GTable table = averaged_g_table_closed(in);
    return ccdf_from_h(z, in.beta0(), h_coefficients(table));
}

double averaged_ccdf_quadrature(double z, const AnnulusAverageInputs& in) {
    const GTable table = averaged_g_table_quadrature(in);
    return ccdf_from_h(z, in.beta0(), h_coefficients(table));
}

}  // namespace finnet
