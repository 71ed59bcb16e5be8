#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "archdpg/arch.hpp"
#include "archdpg/quadrature.hpp"
#include "archdpg/solver.hpp"

namespace archdpg {

struct OracleOptions {
  int elements = 512;
  /// Gauss collocation stages per element; the local polynomial degree equals `stages`.
  int stages = 8;
  /// Re-solve at 2 * elements and report the change of the field L2 norms.
  bool richardson_check = true;
  /// Directory for cached solutions, e.g. from ARCHDPG_CACHE.
  std::optional<std::filesystem::path> cache_dir;
};

/// Gauss collocation solution of y' = A y + F on a uniform mesh,
/// y = (u, w, theta, n, q, m).
class ReferenceSolution {
 public:
  ReferenceSolution(const ArchConfig& config, int elements, int stages, Eigen::MatrixXd nodal);

  std::array<double, kNumComponents> evaluate(double x) const;
  std::array<double, kNumComponents> evaluate_derivative(double x) const;
  /// Residuals of the six scaled equations, each written as "lhs - rhs" in the
  /// order eps^2 n - u' - lam w, mu eps^2 q - w' + lam u + theta, m - theta',
  /// -n' - lam q - f_u, -q' + lam n - f_w, -m' - q.
  std::array<double, kNumComponents> residual(double x) const;
  std::array<double, kNumComponents> l2_norms() const;
  /// Largest equation residual over 200 fixed sample points, divided by
  /// max(1, largest field L2 norm).
  double residual_bound() const;

  FieldEvaluator evaluator() const;
  int elements() const { return elements_; }
  int stages() const { return stages_; }
  /// Nodal values, 6 x (elements + 1).
  const Eigen::MatrixXd& nodal() const { return nodal_; }
  const ArchConfig& config() const { return config_; }

  /// Largest relative change of the six field L2 norms on doubling the mesh; NaN if not checked.
  double richardson_change = std::numeric_limits<double>::quiet_NaN();
  /// 2-norm condition number of the 3x3 shooting matrix of the boundary conditions.
  double condition_estimate = std::numeric_limits<double>::quiet_NaN();
  bool from_cache = false;
  std::vector<std::string> warnings;

 private:
  ArchConfig config_;
  int elements_;
  int stages_;
  Eigen::MatrixXd nodal_;
  Eigen::MatrixXd slopes_;  // (6 * stages) x elements
  std::vector<double> c_;   // collocation abscissae on [0, 1]
  QuadratureRule rule_;

  int locate(double x, double& tau) const;
};

/// Throws std::invalid_argument for elements < 1 or stages outside [1, 32];
/// SolverError when the collocation system is singular.
ReferenceSolution solve_reference(const ArchConfig& config, const OracleOptions& options = {});

/// Canonical text form of everything the oracle solution depends on.
std::string oracle_canonical_key(const ArchConfig& config, int elements, int stages);
std::uint64_t fnv1a64(const std::string& text);

/// ARCHDPG_CACHE, when set and non-empty.
std::optional<std::filesystem::path> oracle_cache_dir_from_env();

}  // namespace archdpg
