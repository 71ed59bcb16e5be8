#include "archdpg_cli/commands.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "archdpg/fem.hpp"
#include "archdpg/oracle.hpp"
#include "archdpg/solver.hpp"
#include "archdpg/stability.hpp"
#include "archdpg_cli/csv.hpp"

namespace archdpg::cli {

namespace {

const std::vector<std::string> kFieldColumns = {"u", "w", "theta", "n", "q", "m"};

std::vector<std::string> with_prefix(const std::string& prefix, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (const auto& n : names) out.push_back(prefix + n);
  return out;
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string test_norm_name(TestNorm n) { return n == TestNorm::Standard ? "standard" : "scaled-graph"; }

std::string c_stab_text(const StabilityReport& r) {
  return r.c_stab ? format_number(*r.c_stab) : std::string("uncovered");
}

void report_warnings(const std::vector<std::string>& warnings, std::ostream& log) {
  for (const auto& w : warnings) log << "warning: " << w << '\n';
}

std::filesystem::path emit(const CommandOptions& options, const std::string& name, const CsvTable& table,
                           std::vector<std::filesystem::path>& written) {
  const std::filesystem::path path = options.out_dir / name;
  write_file(path, table.text());
  written.push_back(path);
  return path;
}

OracleOptions oracle_options(const RunConfig& config) {
  OracleOptions o = config.oracle;
  o.cache_dir = oracle_cache_dir_from_env();
  return o;
}

ReferenceSolution reference_for(const RunConfig& config, std::ostream& log) {
  ReferenceSolution ref = solve_reference(config.problem, oracle_options(config));
  log << "reference: Gauss collocation oracle, " << ref.elements() << " elements x " << ref.stages()
      << " stages" << (ref.from_cache ? " (cached)" : "") << '\n';
  report_warnings(ref.warnings, log);
  return ref;
}

const std::vector<int>& n_list_of(const RunConfig& config, const CommandOptions& options) {
  return options.n_list ? *options.n_list : config.n_list;
}

double relative_gap(double value, double reference) {
  const double d = std::abs(value - reference);
  return std::abs(reference) >= 1e-14 ? d / std::abs(reference) : d;
}

}  // namespace

std::vector<double> lambda_grid(double lambda_min, double lambda_max, double step) {
  if (!(step > 0.0)) throw ConfigError("--lambda-step: must be positive");
  if (!(lambda_min <= lambda_max)) throw ConfigError("--lambda-min must not exceed --lambda-max");
  const double two_pi = 2.0 * std::numbers::pi;
  if (!(lambda_min > 0.0) || !(lambda_max < two_pi))
    throw ConfigError("lambda samples must lie in the open interval (0, 2*pi)");
  std::vector<double> grid;
  const long count = static_cast<long>(std::floor((lambda_max - lambda_min) / step + 1e-9)) + 1;
  if (count > 10000000) throw ConfigError("lambda grid too large");
  for (long i = 0; i < count; ++i) grid.push_back(lambda_min + static_cast<double>(i) * step);
  return grid;
}

std::vector<std::filesystem::path> cmd_solve(const RunConfig& config, const CommandOptions& options,
                                             std::ostream& log) {
  const Mesh mesh = config.mesh();
  const Solution sol = solve(config.problem, mesh, config.discretization, SolveOptions{options.threads});
  report_warnings(sol.warnings, log);
  const std::string& prefix = config.output.prefix;
  std::vector<std::filesystem::path> written;

  CsvTable fields(concat({"x"}, kFieldColumns));
  const int samples = config.output.samples_per_element;
  for (int j = 0; j < mesh.num_elements(); ++j) {
    for (int i = 0; i < samples; ++i) {
      const double xi = -1.0 + 2.0 * i / (samples - 1);
      fields.cell(mesh.node(j) + 0.5 * (xi + 1.0) * mesh.h(j));
      for (Component c : kAllComponents) fields.cell(sol.fields.evaluate_on_element(c, j, xi));
      fields.end_row();
    }
  }
  emit(options, prefix + "solution.csv", fields, written);

  CsvTable traces(concat({"x"}, with_prefix("hat_", kFieldColumns)));
  for (int i = 0; i < mesh.num_nodes(); ++i) {
    traces.cell(mesh.node(i));
    for (Component c : kAllComponents) traces.cell(sol.traces.values[index(c)][i]);
    traces.end_row();
  }
  emit(options, prefix + "traces.csv", traces, written);

  CsvTable indicators({"element", "x_left", "x_right", "indicator"});
  for (int j = 0; j < mesh.num_elements(); ++j)
    indicators.cell(j).cell(mesh.node(j)).cell(mesh.node(j + 1)).cell(sol.element_indicators[j]).end_row();
  emit(options, prefix + "indicators.csv", indicators, written);

  const int p = config.discretization.p;
  CsvTable summary({"quantity", "value"});
  summary.cell("bc").cell(config.problem.bc.code()).end_row();
  summary.cell("elements").cell(mesh.num_elements()).end_row();
  summary.cell("p").cell(p).end_row();
  summary.cell("delta_p").cell(config.discretization.delta_p).end_row();
  summary.cell("test_norm").cell(test_norm_name(config.discretization.test_norm)).end_row();
  summary.cell("indicator").cell(sol.indicator).end_row();
  summary.cell("trace_dofs").cell(kNumComponents * mesh.num_nodes()).end_row();
  summary.cell("free_trace_dofs").cell(sol.num_free_trace_dofs).end_row();
  summary.cell("field_dofs").cell(kNumComponents * (p + 1) * mesh.num_elements()).end_row();
  summary.cell("C_n").cell(sol.stability.c_n).end_row();
  summary.cell("C_q").cell(sol.stability.c_q).end_row();
  summary.cell("C_q0").cell(sol.stability.c_q0).end_row();
  summary.cell("C_stab").cell(c_stab_text(sol.stability)).end_row();
  summary.cell("regime").cell(std::string(regime_label(sol.stability.regime))).end_row();
  summary.cell("flagged").cell(sol.stability.flagged ? 1 : 0).end_row();
  summary.cell("warnings").cell(static_cast<int>(sol.warnings.size())).end_row();
  emit(options, prefix + "summary.csv", summary, written);

  log << "bc " << config.problem.bc.code() << ", N = " << mesh.num_elements() << ", indicator "
      << format_number(sol.indicator) << ", free trace dofs " << sol.num_free_trace_dofs << ", C_stab "
      << c_stab_text(sol.stability) << " (" << regime_label(sol.stability.regime) << ")\n";
  return written;
}

std::vector<std::filesystem::path> cmd_converge(const RunConfig& config, const CommandOptions& options,
                                                std::ostream& log) {
  const std::vector<int>& n_list = n_list_of(config, options);
  const ReferenceSolution ref = reference_for(config, log);
  const ConvergenceReport report = convergence_study(config.problem, config.discretization, n_list,
                                                     ref.evaluator(), SolveOptions{options.threads});

  CsvTable table(concat(concat({"N", "h_max"}, with_prefix("err_", kFieldColumns)),
                        concat({"indicator"}, with_prefix("rate_", kFieldColumns))));
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const ConvergenceRow& row = report.rows[i];
    table.cell(row.num_elements).cell(row.h_max);
    for (double e : row.errors.error) table.cell(e);
    table.cell(row.indicator);
    for (int c = 0; c < kNumComponents; ++c)
      table.cell(i == 0 ? std::numeric_limits<double>::quiet_NaN() : report.rates[i - 1][c]);
    table.end_row();
  }
  std::vector<std::filesystem::path> written;
  emit(options, config.output.prefix + "converge.csv", table, written);

  log << "least-squares rates over the last rows:";
  for (int c = 0; c < kNumComponents; ++c) log << ' ' << kFieldColumns[c] << '=' << report.tail_rate[c];
  log << " indicator=" << report.tail_rate[kNumComponents] << '\n';
  return written;
}

std::vector<std::filesystem::path> cmd_compare_fem(const RunConfig& config, const CommandOptions& options,
                                                   std::ostream& log) {
  if (!(config.problem.params.mu() > 0.0))
    throw ConfigError("compare-fem requires parameters.mu > 0");
  const std::vector<int>& n_list = n_list_of(config, options);
  const ReferenceSolution ref = reference_for(config, log);
  const FieldEvaluator reference = ref.evaluator();
  const double tip = tip_location(config.problem.bc);
  const double w_ref = ref.evaluate(tip)[index(Component::W)];

  const std::vector<std::string> disp = {"u", "w", "theta"};
  std::vector<std::string> header = {"N", "dpg_trace_dofs", "fem_dofs"};
  header = concat(header, with_prefix("dpg_err_", kFieldColumns));
  header = concat(header, with_prefix("fem_reduced_err_", disp));
  header = concat(header, with_prefix("fem_unreduced_err_", disp));
  header = concat(header, {"dpg_tip_err", "fem_reduced_tip_err", "fem_unreduced_tip_err"});
  CsvTable table(header);

  for (int n : n_list) {
    const Mesh mesh = Mesh::uniform(n);
    const Solution sol = solve(config.problem, mesh, config.discretization, SolveOptions{options.threads});
    const FemSolution reduced = fem_solve(config.problem, mesh, true);
    const FemSolution unreduced = fem_solve(config.problem, mesh, false);
    const ErrorTable dpg = l2_errors(sol.fields, reference);

    table.cell(n).cell(sol.num_free_trace_dofs).cell(reduced.num_dofs() - fem_constrained_dofs(config.problem.bc));
    for (double e : dpg.error) table.cell(e);
    for (double e : fem_displacement_errors(reduced, reference)) table.cell(e);
    for (double e : fem_displacement_errors(unreduced, reference)) table.cell(e);
    const double dpg_tip = tip == 0.0   ? sol.traces.values[index(Component::W)].front()
                           : tip == 1.0 ? sol.traces.values[index(Component::W)].back()
                                        : sol.fields.evaluate(Component::W, tip);
    table.cell(relative_gap(dpg_tip, w_ref))
        .cell(relative_gap(reduced.displacement(Component::W, tip), w_ref))
        .cell(relative_gap(unreduced.displacement(Component::W, tip), w_ref));
    table.end_row();
  }
  std::vector<std::filesystem::path> written;
  emit(options, config.output.prefix + "compare_fem.csv", table, written);
  log << "tip deflection reported at x = " << tip << ", reference w = " << format_number(w_ref) << '\n';
  return written;
}

std::vector<std::filesystem::path> cmd_oracle(const RunConfig& config, const CommandOptions& options,
                                              std::ostream& log) {
  const ReferenceSolution ref = reference_for(config, log);
  CsvTable nodal(concat({"x"}, kFieldColumns));
  for (int j = 0; j <= ref.elements(); ++j) {
    nodal.cell(static_cast<double>(j) / ref.elements());
    for (int c = 0; c < kNumComponents; ++c) nodal.cell(ref.nodal()(c, j));
    nodal.end_row();
  }
  std::vector<std::filesystem::path> written;
  emit(options, config.output.prefix + "oracle.csv", nodal, written);

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const auto norms = ref.l2_norms();
  double scale = 1.0;
  for (double v : norms) scale = std::max(scale, v);
  double random_residual = 0.0;
  for (int i = 0; i < 200; ++i)
    for (double r : ref.residual(uniform(rng))) random_residual = std::max(random_residual, std::abs(r) / scale);

  CsvTable summary({"quantity", "value"});
  summary.cell("elements").cell(ref.elements()).end_row();
  summary.cell("stages").cell(ref.stages()).end_row();
  for (int c = 0; c < kNumComponents; ++c) summary.cell("l2_norm_" + kFieldColumns[c]).cell(norms[c]).end_row();
  summary.cell("richardson_change").cell(ref.richardson_change).end_row();
  summary.cell("condition_estimate").cell(ref.condition_estimate).end_row();
  summary.cell("residual_bound").cell(ref.residual_bound()).end_row();
  summary.cell("random_residual_max").cell(random_residual).end_row();
  emit(options, config.output.prefix + "oracle_summary.csv", summary, written);
  log << "richardson change " << format_number(ref.richardson_change) << ", residual bound "
      << format_number(ref.residual_bound()) << '\n';
  return written;
}

std::vector<std::filesystem::path> cmd_stability(const StabilityOptions& stability, const CommandOptions& options,
                                                 std::ostream& log) {
  const std::vector<double> grid = lambda_grid(stability.lambda_min, stability.lambda_max, stability.lambda_step);
  std::vector<BcPair> codes;
  for (const auto& code : stability.bc_codes) {
    try {
      codes.push_back(BcPair::parse(code));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--bc: ") + e.what());
    }
  }
  if (!(stability.epsilon > 0.0) || !(stability.mu >= 0.0))
    throw ConfigError("stability parameters need epsilon > 0 and mu >= 0");

  std::vector<std::filesystem::path> written;
  for (const BcPair& bc : codes) {
    CsvTable table({"lambda", "C_n", "C_q", "C_q0", "C_stab", "regime"});
    for (double lam : grid) {
      const StabilityReport r = stability_constants(ArchParameters(stability.epsilon, stability.mu, lam), bc);
      table.cell(lam).cell(r.c_n).cell(r.c_q).cell(r.c_q0).cell(c_stab_text(r));
      table.cell(std::string(regime_label(r.regime)));
      table.end_row();
    }
    emit(options, "stability_" + bc.code() + ".csv", table, written);
  }
  log << grid.size() << " lambda samples for " << codes.size() << " boundary codes\n";
  return written;
}

}  // namespace archdpg::cli
