#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "archdpg_cli/run_config.hpp"

namespace archdpg::cli {

struct CommandOptions {
  std::filesystem::path out_dir = ".";
  std::optional<std::vector<int>> n_list;
  std::uint64_t seed = 20240229;
  int threads = 1;
};

struct StabilityOptions {
  double lambda_min = 0.1;
  double lambda_max = 6.0;
  double lambda_step = 0.1;
  std::vector<std::string> bc_codes{"cc", "sd", "cd", "cf", "ff"};
  /// Parameters entering C_stab through eps^-2 and (mu eps^2)^-1.
  double epsilon = 1e-4;
  double mu = 1.0;
};

/// Each command writes its files below options.out_dir and returns the list
/// of written paths. Errors: ConfigError, SolverError, OutputError.
std::vector<std::filesystem::path> cmd_solve(const RunConfig& config, const CommandOptions& options,
                                             std::ostream& log);
std::vector<std::filesystem::path> cmd_converge(const RunConfig& config, const CommandOptions& options,
                                                std::ostream& log);
std::vector<std::filesystem::path> cmd_compare_fem(const RunConfig& config, const CommandOptions& options,
                                                   std::ostream& log);
std::vector<std::filesystem::path> cmd_oracle(const RunConfig& config, const CommandOptions& options,
                                              std::ostream& log);
std::vector<std::filesystem::path> cmd_stability(const StabilityOptions& stability, const CommandOptions& options,
                                                 std::ostream& log);

/// Uniform grid lambda_min + i * step up to lambda_max (inclusive within 1e-9 * step).
std::vector<double> lambda_grid(double lambda_min, double lambda_max, double step);

}  // namespace archdpg::cli
