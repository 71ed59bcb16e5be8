#pragma once

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "archdpg/arch.hpp"
#include "archdpg/assembly.hpp"
#include "archdpg/mesh.hpp"
#include "archdpg/stability.hpp"

namespace archdpg {

/// Piecewise polynomial fields (u, w, theta, n, q, m) in Legendre modes.
struct FieldSolution {
  Mesh mesh{std::vector<double>{0.0, 1.0}};
  int degree = 0;
  /// coefficients[c](element, mode)
  std::array<Eigen::MatrixXd, kNumComponents> coefficients;

  double evaluate_on_element(Component c, int element, double xi) const;
  /// At interior nodes the left element is used.
  double evaluate(Component c, double x) const;
  std::array<double, kNumComponents> evaluate_all(double x) const;
};

/// Nodal traces, one vector of length N + 1 per component.
struct TraceSolution {
  std::array<std::vector<double>, kNumComponents> values;
};

struct Solution {
  FieldSolution fields;
  TraceSolution traces;
  /// Energy-residual indicator ||T(u - u_h)||_V over the enriched test space.
  double indicator = 0.0;
  std::vector<double> element_indicators;
  StabilityReport stability;
  std::vector<std::string> warnings;
  int num_free_trace_dofs = 0;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SolveOptions {
  int threads = 1;
};

/// Throws SolverError when the trace system cannot be factored or an element
/// is under-enriched; std::invalid_argument on invalid configuration.
Solution solve(const ArchConfig& config, const Mesh& mesh, const DiscretizationConfig& disc,
               const SolveOptions& options = {});

/// Solution of the reflected problem expressed through `sol`: fields and
/// traces reflected by x -> 1 - x with u, theta, q sign-flipped.
Solution mirror_solution(const Solution& sol);

using FieldEvaluator = std::function<std::array<double, kNumComponents>(double)>;

struct ErrorTable {
  std::array<double, kNumComponents> error{};
  std::array<double, kNumComponents> reference_norm{};
  /// False where the reference norm is below 1e-14 and the error is absolute.
  std::array<bool, kNumComponents> relative{};
};

/// Per-field L2 errors against `reference`, by element quadrature with
/// p + extra_points Gauss points.
ErrorTable l2_errors(const FieldSolution& fields, const FieldEvaluator& reference, int extra_points = 6);

struct ConvergenceRow {
  int num_elements = 0;
  double h_max = 0.0;
  ErrorTable errors;
  double indicator = 0.0;
  int free_trace_dofs = 0;
};

/// Index 0..5 are the fields, index 6 the indicator.
using RateVector = std::array<double, kNumComponents + 1>;

struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  /// rates[i] between rows i and i + 1: log(e_i / e_{i+1}) / log(N_{i+1} / N_i).
  std::vector<RateVector> rates;
  /// Negated least-squares log-log slope over the last three rows (or fewer).
  RateVector tail_rate{};
};

/// Observed rate between two refinements.
double observed_rate(double e_coarse, double e_fine, int n_coarse, int n_fine);

/// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Solves on uniform meshes for each N (rows may run concurrently) and
/// measures errors against `reference`. Throws std::invalid_argument unless
/// n_list is strictly increasing.
ConvergenceReport convergence_study(const ArchConfig& config, const DiscretizationConfig& disc,
                                    const std::vector<int>& n_list, const FieldEvaluator& reference,
                                    const SolveOptions& options = {});

}  // namespace archdpg
