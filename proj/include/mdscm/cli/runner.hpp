#ifndef MDSCM_CLI_RUNNER_HPP_
#define MDSCM_CLI_RUNNER_HPP_

#include <ostream>
#include <string>
#include <vector>

#include "mdscm/analysis.hpp"
#include "mdscm/cli/config.hpp"

namespace mdscm::cli {

/// Helmholtz case for config.problem ("sine" or "lowreg") and its exact solution.
HelmholtzCase helmholtz_case(const ExperimentConfig& config);

struct RunResult {
  std::string summary;               // one line, no trailing newline
  std::vector<std::string> files;    // CSV files written
  std::vector<std::string> warnings;
};

/// Executes the command, writing CSV files under config.output_dir.
RunResult run(const ExperimentConfig& config);

}  // namespace mdscm::cli

#endif  // MDSCM_CLI_RUNNER_HPP_
