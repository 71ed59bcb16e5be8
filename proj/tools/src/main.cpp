#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "archdpg/solver.hpp"
#include "archdpg_cli/commands.hpp"
#include "archdpg_cli/csv.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOutput = 1;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::vector<std::string> split_codes(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(tok);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace archdpg::cli;

  CLI::App app{"Ultra-weak DPG solver for the scaled circular arch"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", n_list, bc_codes = "cc,sd,cd,cf,ff";
  std::uint64_t seed = CommandOptions{}.seed;
  int threads = 1;
  StabilityOptions stab;

  const auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", config_path, "JSON run configuration");
    if (needs_config) c->required();
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "seed for randomized checks")->capture_default_str();
    sub->add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  };

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one configuration and write fields, traces and summary");
  add_common(solve_cmd, true);
  CLI::App* converge_cmd = app.add_subcommand("converge", "convergence study against the collocation oracle");
  add_common(converge_cmd, true);
  converge_cmd->add_option("--n-list", n_list, "comma-separated element counts");
  CLI::App* compare_cmd = app.add_subcommand("compare-fem", "compare DPG with reduced and unreduced P1 FEM");
  add_common(compare_cmd, true);
  compare_cmd->add_option("--n-list", n_list, "comma-separated element counts");
  CLI::App* oracle_cmd = app.add_subcommand("oracle", "dump the collocation reference solution");
  add_common(oracle_cmd, true);
  CLI::App* stability_cmd = app.add_subcommand("stability", "tabulate stability constants over lambda");
  add_common(stability_cmd, false);
  stability_cmd->add_option("--lambda-min", stab.lambda_min)->capture_default_str();
  stability_cmd->add_option("--lambda-max", stab.lambda_max)->capture_default_str();
  stability_cmd->add_option("--lambda-step", stab.lambda_step)->capture_default_str();
  stability_cmd->add_option("--bc", bc_codes, "comma-separated boundary codes")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  CommandOptions options;
  options.out_dir = out_dir;
  options.seed = seed;
  options.threads = threads;

  try {
    if (!n_list.empty()) options.n_list = parse_n_list(n_list);
    if (stability_cmd->parsed()) {
      stab.bc_codes = split_codes(bc_codes);
      if (!config_path.empty()) {
        const RunConfig rc = load_run_config(config_path);
        stab.epsilon = rc.problem.params.epsilon();
        stab.mu = rc.problem.params.mu();
      }
      cmd_stability(stab, options, std::cout);
      return kExitOk;
    }
    const RunConfig rc = load_run_config(config_path);
    if (solve_cmd->parsed()) cmd_solve(rc, options, std::cout);
    if (converge_cmd->parsed()) cmd_converge(rc, options, std::cout);
    if (compare_cmd->parsed()) cmd_compare_fem(rc, options, std::cout);
    if (oracle_cmd->parsed()) cmd_oracle(rc, options, std::cout);
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const OutputError& e) {
    std::cerr << "output error: " << e.what() << '\n';
    return kExitOutput;
  } catch (const archdpg::SolverError& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kExitSolver;
  }
}
