#pragma once

#include <cstddef>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "finnet/model.hpp"
#include "finnet/placement.hpp"
#include "finnet/spatial.hpp"

namespace finnet {

enum class SweepAxis { kGamma, kM, kEpsT };

// Where the SNR of the config is referenced: at unit distance (Gamma as used
// by the outage formulas) or at the reference link distance |X0|.
enum class SnrReference { kUnitDistance, kLink };

// How sigma_s_db is read: as the shadowing standard deviation, or as its
// variance in dB^2.
enum class ShadowParameter { kStdDev, kVariance };

std::string_view to_string(SweepAxis axis);
std::string_view to_string(SnrReference ref);
std::string_view to_string(ShadowParameter param);

// Presets with a name other than "custom" fix the series they compute and
// their sweep axis; explicit keys still override the shared parameters.
struct ExperimentConfig {
    std::string preset = "custom";
    SweepAxis sweep = SweepAxis::kGamma;
    std::vector<double> gamma_db{0.0, 5.0, 10.0, 15.0, 20.0, 25.0};
    std::vector<std::size_t> m_values;
    std::vector<double> eps_t;
    SnrReference snr_reference = SnrReference::kUnitDistance;

    double alpha = 3.5;
    double beta_db = 0.0;
    double spreading_gain = 1.0;
    double chip_factor = 0.0;  // 0 selects default_chip_factor(G)
    int m0 = 4;
    double m_i = 1.0;
    double p = 0.5;
    double power_ratio = 1.0;
    double sigma_s_db = 0.0;
    ShadowParameter shadow_parameter = ShadowParameter::kStdDev;

    PlacementModel placement = PlacementModel::kUniformClustering;
    std::size_t num_interferers = 28;
    double r_ex = 0.05;
    double r_net = 1.0;
    double tx_distance = 0.1;
    bool receiver_on_perimeter = false;

    std::size_t realizations = 10'000;
    std::uint64_t trials = 1'000'000;
    bool oracle = true;
    std::uint64_t seed = 1;
    unsigned workers = 0;

    // Throws ContractError naming the offending field.
    void validate() const;

    // Linear unit-distance SNR for a grid value in dB.
    double unit_snr(double gamma_db_value) const;
    // Shadowing standard deviation in dB after applying shadow_parameter.
    double shadow_stddev_db() const;
    double resolved_chip_factor() const;
};

const std::vector<std::string>& preset_names();

// Baseline parameters of a named preset. Throws ContractError for unknown names.
ExperimentConfig preset_config(std::string_view name);

// Applies one key=value setting. Throws ContractError for unknown keys or
// malformed values.
void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view value);

// Parses flat key=value lines with '#' comments. A preset key is applied
// first wherever it appears; the remaining keys override it in file order.
// Errors carry "source:line:" context.
ExperimentConfig parse_config(std::istream& in, std::string_view source = "config");
ExperimentConfig load_config(const std::string& path);

// Resolved parameters as a re-loadable config.
std::string to_manifest(const ExperimentConfig& cfg);

std::string_view library_version();

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

ResultTable run_experiment(const ExperimentConfig& cfg);

// Header row plus one line per row, values with 10 significant digits.
std::string to_csv(const ResultTable& table);
void write_text_file(const std::string& path, const std::string& text);

// Shared builders, exposed for tests.
ChannelParams make_channel(const ExperimentConfig& cfg, std::size_t interferers);
SpatialConfig make_spatial(const ExperimentConfig& cfg);

}  // namespace finnet
