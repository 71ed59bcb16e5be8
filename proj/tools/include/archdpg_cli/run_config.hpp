#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "archdpg/arch.hpp"
#include "archdpg/assembly.hpp"
#include "archdpg/mesh.hpp"
#include "archdpg/oracle.hpp"

namespace archdpg::cli {

/// Invalid configuration file or command-line value (exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputSpec {
  int samples_per_element = 21;
  std::string prefix;
};

/// Everything a run needs, validated as a whole when parsed.
struct RunConfig {
  ArchConfig problem;
  DiscretizationConfig discretization;
  int elements = 8;
  /// Explicit mesh nodes; overrides `elements` when non-empty.
  std::vector<double> nodes;
  std::vector<int> n_list{8, 16, 32, 64, 128};
  OracleOptions oracle;
  OutputSpec output;

  Mesh mesh() const;
};

/// Throws ConfigError naming the offending key path (e.g. "discretization.tau").
RunConfig parse_run_config(const nlohmann::json& root);
RunConfig load_run_config(const std::filesystem::path& path);

/// Parses "8,16,32": positive, strictly increasing integers.
std::vector<int> parse_n_list(const std::string& text);

}  // namespace archdpg::cli
