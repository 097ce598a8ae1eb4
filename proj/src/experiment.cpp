#include "finnet/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <type_traits>

#include "finnet/errors.hpp"
#include "finnet/exact_avg.hpp"
#include "finnet/oracle.hpp"
#include "finnet/outage.hpp"

#ifndef FINNET_VERSION
#define FINNET_VERSION "0.0.0"
#endif

namespace finnet {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
    throw ContractError("field '" + std::string(key) + "': cannot read '" + std::string(value) +
                        "' as " + std::string(want));
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        bad_value(key, text, "a number");
    }
    return out;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
    text = trim(text);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
        bad_value(key, text, "a nonnegative integer");
    }
    return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
    text = trim(text);
    if (text == "true" || text == "yes" || text == "on" || text == "1") return true;
    if (text == "false" || text == "no" || text == "off" || text == "0") return false;
    bad_value(key, text, "a boolean (true/false)");
}

std::vector<std::string_view> split_list(std::string_view text) {
    std::vector<std::string_view> items;
    text = trim(text);
    if (text.empty()) return items;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        items.push_back(trim(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return items;
}

std::vector<double> parse_double_list(std::string_view key, std::string_view text) {
    std::vector<double> out;
    for (auto item : split_list(text)) out.push_back(parse_double(key, item));
    return out;
}

std::vector<std::size_t> parse_size_list(std::string_view key, std::string_view text) {
    std::vector<std::size_t> out;
    for (auto item : split_list(text)) out.push_back(parse_unsigned(key, item));
    return out;
}

std::string format_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        if constexpr (std::is_floating_point_v<T>) {
            out += format_exact(values[i]);
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

// Fading models of the examples: Rayleigh, Nakagami (m0 = m_i = 4) and mixed.
struct Fading {
    const char* name;
    int m0;
    double m_i;
};
constexpr Fading kFadingModels[] = {{"rayleigh", 1, 1.0}, {"nakagami", 4, 4.0}, {"mixed", 4, 1.0}};

struct Series {
    std::string name;
    ExperimentConfig cfg;
};

ExperimentConfig with_fading(ExperimentConfig cfg, const Fading& f) {
    cfg.m0 = f.m0;
    cfg.m_i = f.m_i;
    return cfg;
}

ExperimentConfig with_gain(ExperimentConfig cfg, double gain) {
    cfg.spreading_gain = gain;
    cfg.chip_factor = 0.0;
    return cfg;
}

std::string gain_label(double g) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "G%g", g);
    return buf;
}

// The three unspread fading models followed by mixed fading with spreading.
std::vector<Series> fading_and_gain_series(const ExperimentConfig& cfg,
                                           std::initializer_list<double> gains) {
    std::vector<Series> out;
    for (const auto& f : kFadingModels) out.push_back({f.name, with_gain(with_fading(cfg, f), 1.0)});
    for (double g : gains) {
        out.push_back({std::string("mixed_") + gain_label(g), with_gain(with_fading(cfg, kFadingModels[2]), g)});
    }
    return out;
}

double single_gamma_db(const ExperimentConfig& cfg) {
    if (cfg.gamma_db.size() != 1) {
        throw ContractError("preset " + cfg.preset + " evaluates a single SNR; gamma_db must hold one value");
    }
    return cfg.gamma_db.front();
}

ResultTable run_gamma_conditional(const ExperimentConfig& cfg, const std::vector<Series>& series,
                                  bool with_oracle) {
    const NetworkRealization net = draw_realization(make_spatial(cfg), 0);
    ResultTable table;
    table.columns.push_back("gamma_db");
    for (const auto& s : series) table.columns.push_back("eps_" + s.name);
    if (with_oracle) {
        for (const auto& s : series) {
            table.columns.push_back("oracle_" + s.name);
            table.columns.push_back("oracle_stderr_" + s.name);
        }
    }
    for (double gdb : cfg.gamma_db) table.rows.push_back({gdb});
    for (const auto& s : series) {
        const ChannelParams ch = make_channel(s.cfg, net.interferer_count());
        const NormalizedPowers omega = normalized_powers(net, ch);
        for (std::size_t g = 0; g < cfg.gamma_db.size(); ++g) {
            table.rows[g].push_back(outage_conditional(s.cfg.unit_snr(cfg.gamma_db[g]), omega, ch));
        }
    }
    if (with_oracle) {
        OracleConfig ocfg;
        ocfg.trials = cfg.trials;
        ocfg.seed = cfg.seed;
        ocfg.workers = cfg.workers;
        for (const auto& s : series) {
            const ChannelParams ch = make_channel(s.cfg, net.interferer_count());
            const NormalizedPowers omega = normalized_powers(net, ch);
            for (std::size_t g = 0; g < cfg.gamma_db.size(); ++g) {
                const OracleEstimate est =
                    simulate_outage(s.cfg.unit_snr(cfg.gamma_db[g]), omega, ch, ocfg);
                table.rows[g].push_back(est.estimate);
                table.rows[g].push_back(est.std_error);
            }
        }
    }
    return table;
}

ResultTable run_fig_c(const ExperimentConfig& cfg) {
    constexpr std::size_t kShownNetworks = 10;
    const SpatialConfig sp = make_spatial(cfg);
    ResultTable table;
    table.columns.push_back("gamma_db");
    for (std::size_t k = 0; k < kShownNetworks; ++k) {
        table.columns.push_back("eps_network_" + std::to_string(k + 1));
    }
    table.columns.push_back("eps_avg");
    std::vector<double> grid;
    for (double gdb : cfg.gamma_db) {
        table.rows.push_back({gdb});
        grid.push_back(cfg.unit_snr(gdb));
    }
    for (std::size_t k = 0; k < kShownNetworks; ++k) {
        const NetworkRealization net = draw_realization(sp, k);
        const ConditionalTerms terms = prepare_conditional(normalized_powers(net, sp.channel), sp.channel);
        for (std::size_t g = 0; g < grid.size(); ++g) table.rows[g].push_back(1.0 - terms.ccdf(1.0 / grid[g]));
    }
    SpatialConfig avg_cfg = sp;
    avg_cfg.keep_per_realization = false;
    const SpatialAverageResult avg = average_outage(avg_cfg, grid);
    for (std::size_t g = 0; g < grid.size(); ++g) table.rows[g].push_back(avg.avg_outage[g]);
    return table;
}

ResultTable run_outage_cdf(const ExperimentConfig& cfg, const std::vector<Series>& series) {
    const double gdb = single_gamma_db(cfg);
    ResultTable table;
    table.columns.push_back("eps_t");
    for (double t : cfg.eps_t) table.rows.push_back({t});
    for (const auto& s : series) {
        table.columns.push_back("cdf_" + s.name);
        const double grid[] = {s.cfg.unit_snr(gdb)};
        const SpatialAverageResult avg = average_outage(make_spatial(s.cfg), grid);
        const NetworkOutageCdf cdf = network_outage_cdf(avg.per_realization_outage.front(), cfg.eps_t);
        for (std::size_t k = 0; k < cfg.eps_t.size(); ++k) table.rows[k].push_back(cdf.cdf_values[k]);
    }
    return table;
}

ResultTable run_m_sweep(const ExperimentConfig& cfg, const std::vector<Series>& series,
                        bool outage_columns, bool capacity_columns) {
    const double gdb = single_gamma_db(cfg);
    ResultTable table;
    table.columns.push_back("M");
    for (std::size_t m : cfg.m_values) table.rows.push_back({static_cast<double>(m)});
    for (const auto& s : series) {
        if (outage_columns) table.columns.push_back("eps_" + s.name);
        if (capacity_columns) table.columns.push_back("capacity_" + s.name);
        const MSweepResult sweep = sweep_m(make_spatial(s.cfg), s.cfg.m_values, s.cfg.unit_snr(gdb));
        for (std::size_t k = 0; k < cfg.m_values.size(); ++k) {
            if (outage_columns) table.rows[k].push_back(sweep.avg_outage[k]);
            if (capacity_columns) table.rows[k].push_back(sweep.normalized_capacity[k]);
        }
    }
    return table;
}

ResultTable run_table_1(const ExperimentConfig& cfg) {
    const double gdb = single_gamma_db(cfg);
    ResultTable table;
    table.columns = {"M", "alpha", "G", "eps_sim", "eps_theory"};
    for (std::size_t m : {30u, 60u}) {
        for (double alpha : {3.0, 4.0}) {
            for (double gain : {1.0, 32.0}) {
                ExperimentConfig row = with_gain(cfg, gain);
                row.alpha = alpha;
                row.num_interferers = m;
                const double snr = row.unit_snr(gdb);
                const SpatialConfig sp = make_spatial(row);
                const double grid[] = {snr};
                SpatialConfig avg_cfg = sp;
                avg_cfg.keep_per_realization = false;
                const double eps_sim = average_outage(avg_cfg, grid).avg_outage.front();
                AnnulusAverageInputs in;
                in.channel = sp.channel;
                in.r_ex = row.r_ex;
                in.r_net = row.r_net;
                in.tx_distance = row.tx_distance;
                const double eps_theory = 1.0 - averaged_ccdf_closed(1.0 / snr, in);
                table.rows.push_back({static_cast<double>(m), alpha, gain, eps_sim, eps_theory});
            }
        }
    }
    return table;
}

ResultTable run_table_2(const ExperimentConfig& cfg) {
    const double gdb = single_gamma_db(cfg);
    ResultTable table;
    table.columns = {"M", "alpha", "G", "sigma_s", "eps_center", "eps_perimeter"};
    for (std::size_t m : {30u, 60u}) {
        for (double alpha : {3.0, 4.0}) {
            for (double gain : {1.0, 32.0}) {
                for (double sigma : {0.0, 8.0}) {
                    ExperimentConfig row = with_gain(cfg, gain);
                    row.alpha = alpha;
                    row.num_interferers = m;
                    row.sigma_s_db = sigma;
                    std::vector<double> eps;
                    for (bool perimeter : {false, true}) {
                        row.receiver_on_perimeter = perimeter;
                        SpatialConfig sp = make_spatial(row);
                        sp.keep_per_realization = false;
                        const double grid[] = {row.unit_snr(gdb)};
                        eps.push_back(average_outage(sp, grid).avg_outage.front());
                    }
                    table.rows.push_back({static_cast<double>(m), alpha, gain, sigma, eps[0], eps[1]});
                }
            }
        }
    }
    return table;
}

ResultTable run_custom(const ExperimentConfig& cfg) {
    ResultTable table;
    switch (cfg.sweep) {
        case SweepAxis::kGamma: {
            table.columns = {"gamma_db", "eps_avg"};
            std::vector<double> grid;
            for (double gdb : cfg.gamma_db) grid.push_back(cfg.unit_snr(gdb));
            SpatialConfig sp = make_spatial(cfg);
            sp.keep_per_realization = false;
            const SpatialAverageResult avg = average_outage(sp, grid);
            for (std::size_t g = 0; g < grid.size(); ++g) table.rows.push_back({cfg.gamma_db[g], avg.avg_outage[g]});
            return table;
        }
        case SweepAxis::kM: {
            const MSweepResult sweep =
                sweep_m(make_spatial(cfg), cfg.m_values, cfg.unit_snr(single_gamma_db(cfg)));
            table.columns = {"M", "eps_avg", "capacity"};
            for (std::size_t k = 0; k < sweep.m_values.size(); ++k) {
                table.rows.push_back({static_cast<double>(sweep.m_values[k]), sweep.avg_outage[k],
                                      sweep.normalized_capacity[k]});
            }
            return table;
        }
        case SweepAxis::kEpsT: {
            const double grid[] = {cfg.unit_snr(single_gamma_db(cfg))};
            const SpatialAverageResult avg = average_outage(make_spatial(cfg), grid);
            const NetworkOutageCdf cdf = network_outage_cdf(avg.per_realization_outage.front(), cfg.eps_t);
            table.columns = {"eps_t", "cdf"};
            for (std::size_t k = 0; k < cfg.eps_t.size(); ++k) table.rows.push_back({cfg.eps_t[k], cdf.cdf_values[k]});
            return table;
        }
    }
    throw ContractError("unknown sweep axis");
}

SweepAxis preset_axis(std::string_view name) {
    if (name == "fig-d" || name == "fig-e") return SweepAxis::kEpsT;
    if (name == "fig-f" || name == "fig-g") return SweepAxis::kM;
    return SweepAxis::kGamma;
}

std::vector<std::size_t> default_m_values() {
    std::vector<std::size_t> out;
    for (std::size_t m = 5; m <= 100; m += 5) out.push_back(m);
    return out;
}

}  // namespace

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::kGamma: return "gamma";
        case SweepAxis::kM: return "m";
        case SweepAxis::kEpsT: return "eps_t";
    }
    return "?";
}

std::string_view to_string(SnrReference ref) {
    return ref == SnrReference::kLink ? "link" : "unit";
}

std::string_view to_string(ShadowParameter param) {
    return param == ShadowParameter::kVariance ? "variance" : "stddev";
}

void ExperimentConfig::validate() const {
    auto fail = [](const std::string& field, const std::string& why) {
        throw ContractError("field '" + field + "': " + why);
    };
    if (std::find(preset_names().begin(), preset_names().end(), preset) == preset_names().end()) {
        fail("preset", "unknown preset '" + preset + "'");
    }
    if (preset != "custom" && sweep != preset_axis(preset)) {
        fail("sweep", "preset " + preset + " sweeps " + std::string(to_string(preset_axis(preset))));
    }
    if (gamma_db.empty()) fail("gamma_db", "needs at least one SNR value");
    if (sweep == SweepAxis::kM && m_values.empty()) fail("m_values", "an M sweep needs at least one value");
    if (sweep == SweepAxis::kEpsT) {
        if (eps_t.empty()) fail("eps_t", "an eps_t sweep needs at least one threshold");
        if (!std::is_sorted(eps_t.begin(), eps_t.end())) fail("eps_t", "thresholds must be ascending");
    }
    if (!(alpha >= 2.0)) fail("alpha", "must be at least 2");
    if (!(spreading_gain >= 1.0)) fail("G", "must be at least 1");
    if (chip_factor != 0.0 && !(chip_factor >= 0.5 && chip_factor <= 1.0)) {
        fail("h", "must lie in [0.5, 1] (or 0 for the default)");
    }
    if (m0 < 1) fail("m0", "must be a positive integer");
    if (!(m_i > 0.0)) fail("m_i", "must be positive");
    if (!(p >= 0.0 && p <= 1.0)) fail("p", "must lie in [0, 1]");
    if (!(power_ratio > 0.0)) fail("power_ratio", "must be positive");
    if (!(sigma_s_db >= 0.0)) fail("sigma_s_db", "must be nonnegative");
    if (!(r_ex >= 0.0 && r_ex < r_net)) fail("r_ex", "must satisfy 0 <= r_ex < r_net");
    if (!(tx_distance > 0.0)) fail("tx_distance", "must be positive");
    if (realizations < 1) fail("realizations", "must be at least 1");
    if (oracle && trials < 1) fail("trials", "must be at least 1 when the oracle is on");
}

double ExperimentConfig::unit_snr(double gamma_db_value) const {
    const double linear = db_to_linear(gamma_db_value);
    return snr_reference == SnrReference::kLink ? unit_distance_snr(linear, tx_distance, alpha) : linear;
}

double ExperimentConfig::shadow_stddev_db() const {
    return shadow_parameter == ShadowParameter::kVariance ? std::sqrt(sigma_s_db) : sigma_s_db;
}

double ExperimentConfig::resolved_chip_factor() const {
    return chip_factor == 0.0 ? default_chip_factor(spreading_gain) : chip_factor;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names{"fig-a", "fig-b", "fig-c", "fig-d", "fig-e", "fig-f",
                                                "fig-g", "table-1", "table-2", "custom"};
    return names;
}

ExperimentConfig preset_config(std::string_view name) {
    ExperimentConfig cfg;
    cfg.preset = std::string(name);
    if (std::find(preset_names().begin(), preset_names().end(), cfg.preset) == preset_names().end()) {
        throw ContractError("field 'preset': unknown preset '" + cfg.preset + "'");
    }
    cfg.sweep = preset_axis(name);
    if (name == "fig-a" || name == "fig-b" || name == "fig-c") {
        cfg.oracle = name == "fig-a";
    } else if (name == "fig-d" || name == "fig-e") {
        cfg.gamma_db = {5.0};
        cfg.eps_t = linspace(0.0, 1.0, 101);
        cfg.snr_reference = SnrReference::kLink;
        cfg.oracle = false;
    } else if (name == "fig-f" || name == "fig-g") {
        cfg.gamma_db = {10.0};
        cfg.m_values = default_m_values();
        cfg.sigma_s_db = 8.0;
        cfg.snr_reference = SnrReference::kLink;
        cfg.oracle = false;
    } else if (name == "table-1") {
        cfg.gamma_db = {10.0};
        cfg.placement = PlacementModel::kUniformAnnulus;
        cfg.snr_reference = SnrReference::kLink;
        cfg.oracle = false;
    } else if (name == "table-2") {
        cfg.gamma_db = {10.0};
        cfg.snr_reference = SnrReference::kLink;
        cfg.shadow_parameter = ShadowParameter::kVariance;
        cfg.oracle = false;
    } else {
        cfg.oracle = false;
    }
    return cfg;
}

void apply_setting(ExperimentConfig& cfg, std::string_view key, std::string_view raw) {
    const std::string_view value = trim(raw);
    const std::string k(key);
    auto need_value = [&] {
        if (value.empty()) throw ContractError("field '" + k + "': missing value");
    };
    if (k == "preset") {
        need_value();
        cfg = preset_config(value);
    } else if (k == "version") {
        need_value();
    } else if (k == "sweep") {
        if (value == "gamma") cfg.sweep = SweepAxis::kGamma;
        else if (value == "m") cfg.sweep = SweepAxis::kM;
        else if (value == "eps_t") cfg.sweep = SweepAxis::kEpsT;
        else bad_value(k, value, "one of gamma, m, eps_t");
    } else if (k == "gamma_db") {
        cfg.gamma_db = parse_double_list(k, value);
    } else if (k == "m_values") {
        cfg.m_values = parse_size_list(k, value);
    } else if (k == "eps_t") {
        cfg.eps_t = parse_double_list(k, value);
    } else if (k == "snr_reference") {
        if (value == "unit") cfg.snr_reference = SnrReference::kUnitDistance;
        else if (value == "link") cfg.snr_reference = SnrReference::kLink;
        else bad_value(k, value, "one of unit, link");
    } else if (k == "alpha") {
        need_value();
        cfg.alpha = parse_double(k, value);
    } else if (k == "beta_db") {
        need_value();
        cfg.beta_db = parse_double(k, value);
    } else if (k == "G") {
        need_value();
        cfg.spreading_gain = parse_double(k, value);
    } else if (k == "h") {
        need_value();
        cfg.chip_factor = parse_double(k, value);
    } else if (k == "m0") {
        need_value();
        const std::uint64_t m0 = parse_unsigned(k, value);
        if (m0 < 1 || m0 > 1000) bad_value(k, value, "an integer in [1, 1000]");
        cfg.m0 = static_cast<int>(m0);
    } else if (k == "m_i") {
        need_value();
        cfg.m_i = parse_double(k, value);
    } else if (k == "p") {
        need_value();
        cfg.p = parse_double(k, value);
    } else if (k == "power_ratio") {
        need_value();
        cfg.power_ratio = parse_double(k, value);
    } else if (k == "sigma_s_db") {
        need_value();
        cfg.sigma_s_db = parse_double(k, value);
    } else if (k == "shadow_parameter") {
        if (value == "stddev") cfg.shadow_parameter = ShadowParameter::kStdDev;
        else if (value == "variance") cfg.shadow_parameter = ShadowParameter::kVariance;
        else bad_value(k, value, "one of stddev, variance");
    } else if (k == "placement") {
        need_value();
        try {
            cfg.placement = placement_model_from_string(value);
        } catch (const ContractError&) {
            bad_value(k, value, "one of annulus, clustering");
        }
    } else if (k == "M") {
        need_value();
        cfg.num_interferers = parse_unsigned(k, value);
    } else if (k == "r_ex") {
        need_value();
        cfg.r_ex = parse_double(k, value);
    } else if (k == "r_net") {
        need_value();
        cfg.r_net = parse_double(k, value);
    } else if (k == "tx_distance") {
        need_value();
        cfg.tx_distance = parse_double(k, value);
    } else if (k == "receiver") {
        if (value == "center") cfg.receiver_on_perimeter = false;
        else if (value == "perimeter") cfg.receiver_on_perimeter = true;
        else bad_value(k, value, "one of center, perimeter");
    } else if (k == "realizations") {
        need_value();
        cfg.realizations = parse_unsigned(k, value);
    } else if (k == "trials") {
        need_value();
        cfg.trials = parse_unsigned(k, value);
    } else if (k == "oracle") {
        need_value();
        cfg.oracle = parse_bool(k, value);
    } else if (k == "seed") {
        need_value();
        cfg.seed = parse_unsigned(k, value);
    } else if (k == "workers") {
        need_value();
        cfg.workers = static_cast<unsigned>(parse_unsigned(k, value));
    } else {
        throw ContractError("unknown field '" + k + "'");
    }
}

ExperimentConfig parse_config(std::istream& in, std::string_view source) {
    struct Entry {
        std::size_t line;
        std::string key;
        std::string value;
    };
    std::vector<Entry> entries;
    std::set<std::string> seen;
    const std::string src(source);
    std::string line;
    for (std::size_t number = 1; std::getline(in, line); ++number) {
        std::string_view text(line);
        if (const auto hash = text.find('#'); hash != std::string_view::npos) text = text.substr(0, hash);
        text = trim(text);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        const std::string where = src + ":" + std::to_string(number) + ": ";
        if (eq == std::string_view::npos) throw ContractError(where + "expected key = value");
        const std::string key(trim(text.substr(0, eq)));
        if (key.empty()) throw ContractError(where + "missing key before '='");
        if (!seen.insert(key).second) throw ContractError(where + "duplicate field '" + key + "'");
        entries.push_back({number, key, std::string(trim(text.substr(eq + 1)))});
    }
    if (entries.empty()) {
        std::string names;
        for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
        throw ContractError(src +
                            ": configuration is empty; required fields: preset (one of " + names +
                            "); a custom run also needs sweep (gamma, m or eps_t) and its grid "
                            "(gamma_db, m_values or eps_t)");
    }

    ExperimentConfig cfg;
    auto apply = [&](const Entry& e) {
        try {
            apply_setting(cfg, e.key, e.value);
        } catch (const ContractError& err) {
            throw ContractError(src + ":" + std::to_string(e.line) + ": " + err.what());
        }
    };
    for (const auto& e : entries) {
        if (e.key == "preset") apply(e);
    }
    for (const auto& e : entries) {
        if (e.key != "preset") apply(e);
    }
    try {
        cfg.validate();
    } catch (const ContractError& err) {
        // Point at the line that set the offending field when there is one.
        std::string msg = err.what();
        for (const auto& e : entries) {
            if (msg.find("'" + e.key + "'") != std::string::npos) {
                throw ContractError(src + ":" + std::to_string(e.line) + ": " + msg);
            }
        }
        throw ContractError(src + ": " + msg);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ContractError("cannot read config file '" + path + "'");
    return parse_config(in, path);
}

std::string_view library_version() { return FINNET_VERSION; }

std::string to_manifest(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os << "# finnet run manifest; reload with --config\n";
    os << "version = " << library_version() << "\n";
    os << "preset = " << cfg.preset << "\n";
    os << "sweep = " << to_string(cfg.sweep) << "\n";
    os << "gamma_db = " << join(cfg.gamma_db) << "\n";
    os << "m_values = " << join(cfg.m_values) << "\n";
    os << "eps_t = " << join(cfg.eps_t) << "\n";
    os << "snr_reference = " << to_string(cfg.snr_reference) << "\n";
    os << "alpha = " << format_exact(cfg.alpha) << "\n";
    os << "beta_db = " << format_exact(cfg.beta_db) << "\n";
    os << "G = " << format_exact(cfg.spreading_gain) << "\n";
    os << "h = " << format_exact(cfg.chip_factor) << "\n";
    os << "m0 = " << cfg.m0 << "\n";
    os << "m_i = " << format_exact(cfg.m_i) << "\n";
    os << "p = " << format_exact(cfg.p) << "\n";
    os << "power_ratio = " << format_exact(cfg.power_ratio) << "\n";
    os << "sigma_s_db = " << format_exact(cfg.sigma_s_db) << "\n";
    os << "shadow_parameter = " << to_string(cfg.shadow_parameter) << "\n";
    os << "placement = " << to_string(cfg.placement) << "\n";
    os << "M = " << cfg.num_interferers << "\n";
    os << "r_ex = " << format_exact(cfg.r_ex) << "\n";
    os << "r_net = " << format_exact(cfg.r_net) << "\n";
    os << "tx_distance = " << format_exact(cfg.tx_distance) << "\n";
    os << "receiver = " << (cfg.receiver_on_perimeter ? "perimeter" : "center") << "\n";
    os << "realizations = " << cfg.realizations << "\n";
    os << "trials = " << cfg.trials << "\n";
    os << "oracle = " << (cfg.oracle ? "true" : "false") << "\n";
    os << "seed = " << cfg.seed << "\n";
    os << "workers = " << cfg.workers << "\n";
    return os.str();
}

ChannelParams make_channel(const ExperimentConfig& cfg, std::size_t interferers) {
    ChannelParams ch;
    ch.alpha = cfg.alpha;
    ch.spreading_gain = cfg.spreading_gain;
    ch.chip_factor = cfg.resolved_chip_factor();
    ch.sinr_threshold = db_to_linear(cfg.beta_db);
    ch.snr_unit_distance = cfg.unit_snr(cfg.gamma_db.front());
    ch.m0 = cfg.m0;
    ch.set_homogeneous_interferers(interferers, cfg.m_i, cfg.p, cfg.power_ratio);
    ch.shadow_sigma_db = cfg.shadow_stddev_db();
    return ch;
}

SpatialConfig make_spatial(const ExperimentConfig& cfg) {
    SpatialConfig sp;
    sp.channel = make_channel(cfg, cfg.num_interferers);
    sp.geometry.r_net = cfg.r_net;
    sp.geometry.r_ex = cfg.r_ex;
    sp.geometry.num_interferers = cfg.num_interferers;
    sp.geometry.model = cfg.placement;
    if (cfg.receiver_on_perimeter) sp.geometry = offset_to_perimeter(sp.geometry);
    sp.tx_distance = cfg.tx_distance;
    sp.realizations = cfg.realizations;
    sp.seed = cfg.seed;
    sp.workers = cfg.workers;
    return sp;
}

ResultTable run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::string& name = cfg.preset;
    if (name == "fig-a") {
        std::vector<Series> series;
        for (const auto& f : kFadingModels) series.push_back({f.name, with_gain(with_fading(cfg, f), 1.0)});
        return run_gamma_conditional(cfg, series, cfg.oracle);
    }
    if (name == "fig-b") {
        std::vector<Series> series;
        for (double g : {1.0, 8.0, 32.0, 100.0}) {
            series.push_back({gain_label(g), with_gain(with_fading(cfg, kFadingModels[2]), g)});
        }
        return run_gamma_conditional(cfg, series, cfg.oracle);
    }
    if (name == "fig-c") return run_fig_c(with_gain(with_fading(cfg, kFadingModels[2]), 1.0));
    if (name == "fig-d") return run_outage_cdf(cfg, fading_and_gain_series(cfg, {8.0, 32.0, 100.0}));
    if (name == "fig-e") {
        std::vector<Series> series;
        for (double sigma : {0.0, 2.0, 8.0}) {
            ExperimentConfig s = with_gain(with_fading(cfg, kFadingModels[2]), 1.0);
            s.sigma_s_db = sigma;
            char label[32];
            std::snprintf(label, sizeof label, "sigma%g", sigma);
            series.push_back({label, s});
        }
        return run_outage_cdf(cfg, series);
    }
    if (name == "fig-f") return run_m_sweep(cfg, fading_and_gain_series(cfg, {8.0, 32.0, 100.0}), true, false);
    if (name == "fig-g") return run_m_sweep(cfg, fading_and_gain_series(cfg, {8.0, 32.0}), false, true);
    if (name == "table-1") return run_table_1(cfg);
    if (name == "table-2") return run_table_2(cfg);
    return run_custom(cfg);
}

std::string to_csv(const ResultTable& table) {
    std::string out;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out += ',';
        out += table.columns[c];
    }
    out += '\n';
    char buf[40];
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            std::snprintf(buf, sizeof buf, "%.10g", row[c]);
            out += buf;
        }
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw ResourceError("failed writing '" + path + "'");
}

}  // namespace finnet
