#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <shared_mutex>
#include <span>
#include <utility>
#include <vector>

#include "finnet/model.hpp"

namespace finnet {

// All M-tuples of nonnegative integers summing to t, one per row, in
// colexicographic order (last column varies slowest).
class IndexMatrix {
public:
    IndexMatrix(int t, std::size_t columns, std::vector<std::uint16_t> flat);

    int t() const { return t_; }
    std::size_t columns() const { return columns_; }
    std::size_t rows() const { return columns_ == 0 ? 0 : flat_.size() / columns_; }
    std::span<const std::uint16_t> row(std::size_t r) const {
        return std::span<const std::uint16_t>(flat_).subspan(r * columns_, columns_);
    }

private:
    int t_;
    std::size_t columns_;
    std::vector<std::uint16_t> flat_;
};

// binomial(t + M - 1, t); saturates at UINT64_MAX.
std::uint64_t index_row_count(int t, std::size_t columns);

inline constexpr std::uint64_t kDefaultIndexRowCap = 10'000'000;

// Throws ResourceError when the row count exceeds row_cap.
IndexMatrix enumerate_indices(int t, std::size_t columns,
                              std::uint64_t row_cap = kDefaultIndexRowCap);

// Thread-safe memo of index matrices keyed by (t, M). Matrices that would push
// the cached total past total_row_cap are built but not retained.
class IndexMatrixCache {
public:
    explicit IndexMatrixCache(std::uint64_t total_row_cap = kDefaultIndexRowCap)
        : total_row_cap_(total_row_cap) {}

    std::shared_ptr<const IndexMatrix> get(int t, std::size_t columns);
    std::uint64_t cached_rows() const;

private:
    mutable std::shared_mutex mutex_;
    std::map<std::pair<int, std::size_t>, std::shared_ptr<const IndexMatrix>> entries_;
    std::uint64_t total_row_cap_;
    std::uint64_t cached_rows_ = 0;
};

IndexMatrixCache& default_index_cache();

// Row-major table of G_l(Psi_i): rows l = 0..max_ell, one column per interferer.
class GTable {
public:
    GTable(std::size_t rows, std::size_t columns)
        : rows_(rows), columns_(columns), data_(rows * columns, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t columns() const { return columns_; }
    double& at(std::size_t ell, std::size_t i) { return data_[ell * columns_ + i]; }
    double at(std::size_t ell, std::size_t i) const { return data_[ell * columns_ + i]; }

private:
    std::size_t rows_;
    std::size_t columns_;
    std::vector<double> data_;
};

// beta * m0 / Omega_0.
double reference_beta0(const NormalizedPowers& omega, const ChannelParams& ch);

std::vector<double> psi_vector(const NormalizedPowers& omega, const ChannelParams& ch,
                               double beta0);

GTable g_table(std::span<const double> psi, const NormalizedPowers& omega,
               const ChannelParams& ch, int max_ell);

// Sum over the rows of idx of the product of the indexed G entries.
double h_t(const GTable& g, const IndexMatrix& idx);

// H_0..H_{rows-1} as the coefficients of prod_i (sum_l G_l(Psi_i) x^l),
// truncated at degree rows-1. Equivalent to h_t over every t.
std::vector<double> h_coefficients(const GTable& g);

// e^{-beta0 z} sum_s (beta0 z)^s sum_{t<=s} z^{-t} H_t / (s-t)!, clamped to [0, 1].
// z = 0 gives the z -> 0+ limit.
double ccdf_from_h(double z, double beta0, std::span<const double> h);

// The z-independent part of the conditional ccdf for one Omega.
struct ConditionalTerms {
    double beta0 = 0.0;
    std::vector<double> h;  // H_0..H_{m0-1}

    double ccdf(double z) const { return ccdf_from_h(z, beta0, h); }
};

ConditionalTerms prepare_conditional(const NormalizedPowers& omega, const ChannelParams& ch);

enum class HMethod {
    kConvolution,  // truncated polynomial product, O(M m0^2)
    kIndexMatrix,  // explicit enumeration of the index sets
};

// Complementary cdf of Z = S - sum Y_i given Omega. Requires integer m0 >= 1.
double ccdf_conditional(double z, const NormalizedPowers& omega, const ChannelParams& ch,
                        HMethod method = HMethod::kConvolution);

// Product form valid only for m0 = 1 and every m_i = 1.
double ccdf_rayleigh(double z, const NormalizedPowers& omega, const ChannelParams& ch);

bool is_rayleigh(const ChannelParams& ch);

// epsilon = 1 - ccdf(1 / gamma_snr). gamma_snr may be +inf.
double outage_conditional(double gamma_snr, const NormalizedPowers& omega,
                          const ChannelParams& ch);

}  // namespace finnet
