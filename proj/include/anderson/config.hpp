#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "anderson/box.hpp"
#include "anderson/model.hpp"
#include "anderson/spectral.hpp"

namespace anderson {

enum class ExperimentType { Ids, Dos, Wegner, LocalWegner, KlwScan, SpectralAveraging, Lifshitz, Lemma31, Beta };

const char* experiment_name(ExperimentType type);
std::optional<ExperimentType> parse_experiment(const std::string& name);

/// Everything one run needs, with defaults applied.
///
/// `digest` covers every field that can change a result. The seed, worker
/// count, dense threshold and output path are excluded: the seed is reported
/// next to the digest, and the others only change how a result is computed
/// or where it goes.
struct ExperimentConfig {
    ModelSpec model;
    BoxSpec box;
    ExperimentType type = ExperimentType::Ids;
    std::size_t samples = 100;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::string output;  // empty or "-" writes to stdout
    SpectralOptions spectral;

    std::vector<double> energies;  // ids, dos, lifshitz
    std::optional<double> bandwidth;  // dos, lifshitz on the DOS
    Interval interval;              // wegner, local-wegner, spectral-averaging
    std::optional<double> E0;       // reported E0 for wegner, local-wegner

    std::vector<double> E0_list;  // klw-scan
    double interval_fraction = 0.5;
    double eta = 0.25;
    double holder_alpha = 1.0;
    double slope_tolerance = 0.0;
    bool spine_verdicts = true;

    Site site;                   // spectral-averaging
    std::string weight = "unit";  // spectral-averaging: unit | indicator

    Interval fit_window{0.02, 0.2};  // lifshitz
    std::string fit_source = "ids";  // lifshitz: ids | dos
    std::size_t min_nonzero = 10;

    std::size_t trials = 100;  // lemma31
    int min_dim = 4;
    int max_dim = 16;

    std::vector<double> C_list{1.0};  // beta
    std::vector<double> alpha_list{1.0};
    std::vector<double> s_list{0.01};

    std::string digest;
};

struct ConfigResult {
    std::optional<ExperimentConfig> config;
    /// Human-readable problems, each naming the line and field when known.
    std::vector<std::string> violations;

    bool ok() const { return config.has_value(); }
};

/// Parses and validates a YAML experiment configuration.
ConfigResult validate_config(const std::string& text);
ConfigResult load_config(const std::string& path);

/// Canonical JSON of the semantically relevant fields (sorted keys, fixed
/// number formatting), and its 64-bit FNV-1a hash in hex.
std::string canonical_form(const ExperimentConfig& config);
std::string config_digest(const ExperimentConfig& config);

}  // namespace anderson
