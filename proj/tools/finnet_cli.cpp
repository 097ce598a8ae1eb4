#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "finnet/errors.hpp"
#include "finnet/experiment.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kBadConfig = 2, kComputation = 3, kIo = 4 };

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Outage probability experiments for finite ad hoc networks"};
    app.set_version_flag("--version", std::string(finnet::library_version()));

    std::string config_path;
    std::string preset;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<std::uint64_t> realizations;
    bool no_oracle = false;

    auto* config_opt = app.add_option("--config", config_path, "key = value experiment file");
    auto* preset_opt = app.add_option("--preset", preset, "named experiment")
                           ->check(CLI::IsMember(finnet::preset_names()));
    config_opt->excludes(preset_opt);
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out_dir, "output directory")->capture_default_str();
    app.add_option("--trials", trials, "oracle trials per point");
    app.add_option("--realizations", realizations, "network realizations");
    app.add_flag("--no-oracle", no_oracle, "skip the fading-level Monte Carlo oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; every other parse failure is a usage error.
        const int code = app.exit(e);
        return code == 0 ? 0 : kUsage;
    }
    if (config_path.empty() && preset.empty()) {
        std::cerr << "finnet: error: give --config <file> or --preset <name>\n";
        return kUsage;
    }

    finnet::ExperimentConfig cfg;
    try {
        cfg = config_path.empty() ? finnet::preset_config(preset) : finnet::load_config(config_path);
        if (seed) cfg.seed = *seed;
        if (trials) cfg.trials = *trials;
        if (realizations) cfg.realizations = *realizations;
        if (no_oracle) cfg.oracle = false;
        cfg.validate();
    } catch (const finnet::ContractError& e) {
        std::cerr << "finnet: invalid configuration: " << e.what() << "\n";
        return kBadConfig;
    }

    finnet::ResultTable table;
    try {
        table = finnet::run_experiment(cfg);
    } catch (const finnet::SaturationError& e) {
        std::cerr << "finnet: placement failed (" << e.placed() << " of " << e.requested()
                  << " interferers placed): " << e.what() << "\n";
        return kComputation;
    } catch (const finnet::NumericalError& e) {
        std::cerr << "finnet: numerical failure: " << e.what() << "\n";
        return kComputation;
    } catch (const finnet::ResourceError& e) {
        std::cerr << "finnet: resource limit: " << e.what() << "\n";
        return kComputation;
    } catch (const finnet::ContractError& e) {
        std::cerr << "finnet: invalid configuration: " << e.what() << "\n";
        return kBadConfig;
    }

    try {
        std::filesystem::create_directories(out_dir);
        const std::filesystem::path base = std::filesystem::path(out_dir) / cfg.preset;
        const std::string csv_path = base.string() + ".csv";
        const std::string manifest_path = base.string() + ".manifest";
        finnet::write_text_file(csv_path, finnet::to_csv(table));
        finnet::write_text_file(manifest_path, finnet::to_manifest(cfg));
        std::cout << "wrote " << csv_path << " (" << table.rows.size() << " rows) and "
                  << manifest_path << "\n";
    } catch (const std::exception& e) {
        std::cerr << "finnet: cannot write output: " << e.what() << "\n";
        return kIo;
    }
    return kOk;
}
