#pragma once

#include <iosfwd>
#include <string>

#include "anderson/config.hpp"

namespace anderson {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitStatus : int { kExitPass = 0, kExitVerdictFail = 1, kExitConfigError = 2, kExitIncomplete = 3 };

/// Runs one validated experiment. Writes a JSON metadata line followed by
/// the CSV rows to `out`, and a one-line summary to `summary`. If the run
/// stops after the metadata line, a "# incomplete: <reason>" line closes the
/// output.
int run_experiment(const ExperimentConfig& config, std::ostream& out, std::ostream& summary);

}  // namespace anderson
