// Batch runner: anderson-lab --config run.yaml [--seed S] [--samples N] ...

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "anderson/config.hpp"
#include "anderson/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo experiments for random Schroedinger operators on a periodic grid"};
    app.set_version_flag("--version", anderson::kToolVersion);
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<unsigned> workers;
    std::optional<std::string> out_path;
    std::optional<long long> dense_threshold;
    app.add_option("--config", config_path, "YAML experiment configuration")->required();
    app.add_option("--seed", seed, "master seed (overrides the config)");
    app.add_option("--samples", samples, "sample count (overrides the config)")->check(CLI::PositiveNumber);
    app.add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", out_path, "output file, '-' for stdout (overrides the config)");
    app.add_option("--dense-threshold", dense_threshold, "largest dimension for dense eigensolves")
        ->check(CLI::PositiveNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : anderson::kExitConfigError;
    }

    auto loaded = anderson::load_config(config_path);
    if (!loaded.ok()) {
        std::cerr << "invalid configuration " << config_path << ":\n";
        for (const auto& v : loaded.violations) std::cerr << "  " << v << '\n';
        return anderson::kExitConfigError;
    }
    auto config = std::move(*loaded.config);
    if (seed) config.seed = *seed;
    if (samples) config.samples = *samples;
    if (workers) config.workers = *workers;
    if (out_path) config.output = *out_path;
    if (dense_threshold) config.spectral.dense_threshold = *dense_threshold;
    config.digest = anderson::config_digest(config);

    if (config.output.empty() || config.output == "-") return anderson::run_experiment(config, std::cout, std::cerr);
    std::ofstream out(config.output);
    if (!out) {
        std::cerr << "cannot open output file " << config.output << '\n';
        return anderson::kExitConfigError;
    }
    const int status = anderson::run_experiment(config, out, std::cout);
    return status;
}
