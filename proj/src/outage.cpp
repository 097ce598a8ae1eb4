#include "finnet/outage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "finnet/errors.hpp"

namespace finnet {

IndexMatrix::IndexMatrix(int t, std::size_t columns, std::vector<std::uint16_t> flat)
    : t_(t), columns_(columns), flat_(std::move(flat)) {}

std::uint64_t index_row_count(int t, std::size_t columns) {
    if (t < 0 || columns == 0) return 0;
    // binomial(t + M - 1, t) = prod_{k=1}^{t} (M - 1 + k) / k, exact at every step.
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t value = 1;
    for (int k = 1; k <= t; ++k) {
        const std::uint64_t factor = columns - 1 + static_cast<std::uint64_t>(k);
        if (value > kMax / factor) return kMax;
        value = value * factor / static_cast<std::uint64_t>(k);
    }
    return value;
}

IndexMatrix enumerate_indices(int t, std::size_t columns, std::uint64_t row_cap) {
    if (t < 0) throw ContractError("index sum t must be nonnegative");
    if (columns == 0) throw ContractError("index matrix needs at least one column");
    if (t > std::numeric_limits<std::uint16_t>::max())
        throw ContractError("index sum t too large");
    const std::uint64_t count = index_row_count(t, columns);
    if (count > row_cap) {
        throw ResourceError("index matrix for t=" + std::to_string(t) + ", M=" +
                            std::to_string(columns) + " needs " + std::to_string(count) +
                            " rows, cap is " + std::to_string(row_cap));
    }

    std::vector<std::uint16_t> flat;
    flat.reserve(static_cast<std::size_t>(count) * columns);
    std::vector<std::uint16_t> current(columns, 0);

    // Fill positions from the last column down; smaller values in later
    // columns come first, which is colexicographic order.
    auto fill = [&](auto&& self, std::size_t pos, int remaining) -> void {
        if (pos == 0) {
            current[0] = static_cast<std::uint16_t>(remaining);
            flat.insert(flat.end(), current.begin(), current.end());
            return;
        }
        for (int v = 0; v <= remaining; ++v) {
            current[pos] = static_cast<std::uint16_t>(v);
            self(self, pos - 1, remaining - v);
        }
    };
    fill(fill, columns - 1, t);
    return IndexMatrix(t, columns, std::move(flat));
}

std::shared_ptr<const IndexMatrix> IndexMatrixCache::get(int t, std::size_t columns) {
    const auto key = std::make_pair(t, columns);
    {
        std::shared_lock lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    }
    auto built = std::make_shared<const IndexMatrix>(enumerate_indices(t, columns));
    std::unique_lock lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
    if (cached_rows_ + built->rows() <= total_row_cap_) {
        cached_rows_ += built->rows();
        entries_.emplace(key, built);
    }
    return built;
}

std::uint64_t IndexMatrixCache::cached_rows() const {
    std::shared_lock lock(mutex_);
    return cached_rows_;
}

IndexMatrixCache& default_index_cache() {
    static IndexMatrixCache cache;
    return cache;
}

double reference_beta0(const NormalizedPowers& omega, const ChannelParams& ch) {
    const double beta0 = ch.sinr_threshold * ch.m0 / omega.reference();
    if (!(beta0 > 0.0) || !std::isfinite(beta0)) {
        throw ContractError("beta0 = beta m0 / Omega_0 must be positive and finite");
    }
    return beta0;
}

namespace {

void check_conditional_inputs(const NormalizedPowers& omega, const ChannelParams& ch) {
    if (omega.omega.empty()) throw ContractError("normalized power vector is empty");
    if (omega.interferer_count() != ch.interferer_count()) {
        throw ContractError("Omega holds " + std::to_string(omega.interferer_count()) +
                            " interferers but the channel describes " +
                            std::to_string(ch.interferer_count()));
    }
    if (ch.m0 < 1) {
        throw ContractError("closed-form ccdf requires a positive integer m0");
    }
}

}  // namespace

std::vector<double> psi_vector(const NormalizedPowers& omega, const ChannelParams& ch,
                               double beta0) {
    if (!(beta0 > 0.0)) throw ContractError("beta0 must be positive");
    const auto interferers = omega.interferers();
    std::vector<double> psi(interferers.size());
    for (std::size_t i = 0; i < interferers.size(); ++i) {
        psi[i] = 1.0 / (beta0 * interferers[i] / ch.m[i] + 1.0);
    }
    return psi;
}

GTable g_table(std::span<const double> psi, const NormalizedPowers& omega,
               const ChannelParams& ch, int max_ell) {
    if (max_ell < 0) throw ContractError("max_ell must be nonnegative");
    const auto interferers = omega.interferers();
    const std::size_t count = psi.size();
    GTable g(static_cast<std::size_t>(max_ell) + 1, count);
    for (std::size_t i = 0; i < count; ++i) {
        const double m = ch.m[i];
        const double p = ch.p[i];
        // Psi^m and 1 - Psi^m from log1p/expm1 to keep precision when Psi -> 1.
        const double log_psi = std::log(psi[i]);
        const double psi_m = std::exp(m * log_psi);
        const double one_minus_psi_m = -std::expm1(m * log_psi);
        g.at(0, i) = 1.0 - p * one_minus_psi_m;

        // G_l = p (m)_l / l! (Omega/m)^l Psi^(m+l), built as a running product.
        const double step = interferers[i] / m * psi[i];
        double term = p * psi_m;
        for (int ell = 1; ell <= max_ell; ++ell) {
            term *= (m + ell - 1) / ell * step;
            g.at(static_cast<std::size_t>(ell), i) = term;
        }
    }
    return g;
}

double h_t(const GTable& g, const IndexMatrix& idx) {
    if (idx.columns() != g.columns()) throw ContractError("index matrix width differs from M");
    if (static_cast<std::size_t>(idx.t()) >= g.rows())
        throw ContractError("index sum t exceeds the rows of the G table");
    double sum = 0.0;
    for (std::size_t r = 0; r < idx.rows(); ++r) {
        double product = 1.0;
        const auto row = idx.row(r);
        for (std::size_t i = 0; i < row.size(); ++i) product *= g.at(row[i], i);
        sum += product;
    }
    return sum;
}

std::vector<double> h_coefficients(const GTable& g) {
    const std::size_t degree = g.rows();
    std::vector<double> poly(degree, 0.0);
    poly[0] = 1.0;
    std::vector<double> next(degree);
    for (std::size_t i = 0; i < g.columns(); ++i) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t a = 0; a < degree; ++a) {
            if (poly[a] == 0.0) continue;
            for (std::size_t ell = 0; a + ell < degree; ++ell) {
                next[a + ell] += poly[a] * g.at(ell, i);
            }
        }
        poly.swap(next);
    }
    return poly;
}

double ccdf_from_h(double z, double beta0, std::span<const double> h) {
    if (!(z >= 0.0)) throw ContractError("ccdf argument z must be nonnegative");
    const std::size_t m0 = h.size();
    double total = 0.0;
    if (z == 0.0) {
        // Only t == s survives as z -> 0+.
        double power = 1.0;
        for (std::size_t s = 0; s < m0; ++s) {
            total += power * h[s];
            power *= beta0;
        }
        return std::clamp(total, 0.0, 1.0);
    }
    const double log_b0z = std::log(beta0 * z);
    const double log_z = std::log(z);
    // e^{-beta0 z} (beta0 z)^s z^{-t} / (s-t)! in log space.
    for (std::size_t s = 0; s < m0; ++s) {
        for (std::size_t t = 0; t <= s; ++t) {
            if (h[t] == 0.0) continue;
            const double log_weight = static_cast<double>(s) * log_b0z - beta0 * z -
                                      static_cast<double>(t) * log_z -
                                      std::lgamma(static_cast<double>(s - t) + 1.0);
            total += std::exp(log_weight) * h[t];
        }
    }
    return std::clamp(total, 0.0, 1.0);
}

ConditionalTerms prepare_conditional(const NormalizedPowers& omega, const ChannelParams& ch) {
    check_conditional_inputs(omega, ch);
    ConditionalTerms terms;
    terms.beta0 = reference_beta0(omega, ch);
    const auto psi = psi_vector(omega, ch, terms.beta0);
    terms.h = h_coefficients(g_table(psi, omega, ch, ch.m0 - 1));
    return terms;
}

double ccdf_conditional(double z, const NormalizedPowers& omega, const ChannelParams& ch,
                        HMethod method) {
    check_conditional_inputs(omega, ch);
    const double beta0 = reference_beta0(omega, ch);
    const auto psi = psi_vector(omega, ch, beta0);
    const GTable g = g_table(psi, omega, ch, ch.m0 - 1);

    std::vector<double> h;
    if (method == HMethod::kConvolution || ch.interferer_count() == 0) {
        h = h_coefficients(g);
    } else {
        h.resize(static_cast<std::size_t>(ch.m0));
        for (int t = 0; t < ch.m0; ++t) {
            const auto idx = default_index_cache().get(t, ch.interferer_count());
            h[static_cast<std::size_t>(t)] = h_t(g, *idx);
        }
    }
    return ccdf_from_h(z, beta0, h);
}

bool is_rayleigh(const ChannelParams& ch) {
    return ch.m0 == 1 && std::all_of(ch.m.begin(), ch.m.end(), [](double m) { return m == 1.0; });
}

double ccdf_rayleigh(double z, const NormalizedPowers& omega, const ChannelParams& ch) {
    check_conditional_inputs(omega, ch);
    if (!is_rayleigh(ch)) {
        throw ContractError("Rayleigh product form requires m0 = 1 and every m_i = 1");
    }
    if (!(z >= 0.0)) throw ContractError("ccdf argument z must be nonnegative");
    const double beta0 = reference_beta0(omega, ch);
    const auto interferers = omega.interferers();
    double product = std::exp(-beta0 * z);
    for (std::size_t i = 0; i < interferers.size(); ++i) {
        const double x = beta0 * interferers[i];
        product *= (1.0 + (1.0 - ch.p[i]) * x) / (1.0 + x);
    }
    return std::clamp(product, 0.0, 1.0);
}

double outage_conditional(double gamma_snr, const NormalizedPowers& omega,
                          const ChannelParams& ch) {
    if (!(gamma_snr > 0.0)) throw ContractError("SNR must be positive");
    const double z = 1.0 / gamma_snr;
    const double ccdf = is_rayleigh(ch) ? ccdf_rayleigh(z, omega, ch)
                                        : ccdf_conditional(z, omega, ch);
    return 1.0 - ccdf;
}

}  // namespace finnet
