#pragma once

#include <functional>
#include <span>

#include <Eigen/Dense>

#include "archdpg/quadrature.hpp"

namespace archdpg {

/// Legendre modes P_0..P_p on the reference interval [-1, 1].
///
/// Unnormalized (P_k(1) = 1), so the reference mass matrix is
/// diag(2 / (2k + 1)). Derivatives are with respect to the reference
/// coordinate.
class LegendreBasis {
 public:
  /// Throws std::invalid_argument for a negative degree.
  explicit LegendreBasis(int degree);

  int degree() const { return degree_; }
  int size() const { return degree_ + 1; }

  /// Fills values[k] = P_k(xi) and derivatives[k] = P_k'(xi).
  void evaluate(double xi, std::span<double> values, std::span<double> derivatives) const;

  /// Rows are points, columns are modes.
  Eigen::MatrixXd values(std::span<const double> points) const;
  Eigen::MatrixXd derivatives(std::span<const double> points) const;

  Eigen::VectorXd mass_diagonal() const;

 private:
  int degree_;
};

/// Value at reference point xi of the expansion sum_k c_k P_k.
double evaluate_expansion(std::span<const double> coefficients, double xi);
double evaluate_expansion_derivative(std::span<const double> coefficients, double xi);

/// Best L2(a, b) approximation of f in span{P_k((2x - a - b)/(b - a))}.
/// `quad_points` defaults to p + 4 when zero.
Eigen::VectorXd project_l2(const std::function<double(double)>& f, const LegendreBasis& basis,
                           double a, double b, int quad_points = 0);

}  // namespace archdpg
