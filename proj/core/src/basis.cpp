#include "archdpg/basis.hpp"

#include <stdexcept>
#include <vector>

namespace archdpg {

LegendreBasis::LegendreBasis(int degree) : degree_(degree) {
  if (degree < 0) throw std::invalid_argument("basis degree must be nonnegative");
}

void LegendreBasis::evaluate(double xi, std::span<double> values, std::span<double> derivatives) const {
  values[0] = 1.0;
  derivatives[0] = 0.0;
  if (degree_ == 0) return;
  values[1] = xi;
  derivatives[1] = 1.0;
  for (int k = 2; k <= degree_; ++k) {
    values[k] = ((2.0 * k - 1.0) * xi * values[k - 1] - (k - 1.0) * values[k - 2]) / k;
    // P_k' = P_{k-2}' + (2k - 1) P_{k-1}
    derivatives[k] = derivatives[k - 2] + (2.0 * k - 1.0) * values[k - 1];
  }
}

Eigen::MatrixXd LegendreBasis::values(std::span<const double> points) const {
  Eigen::MatrixXd v(points.size(), size());
  std::vector<double> val(size()), der(size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    evaluate(points[i], val, der);
    for (int k = 0; k < size(); ++k) v(i, k) = val[k];
  }
  return v;
}

Eigen::MatrixXd LegendreBasis::derivatives(std::span<const double> points) const {
  Eigen::MatrixXd d(points.size(), size());
  std::vector<double> val(size()), der(size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    evaluate(points[i], val, der);
    for (int k = 0; k < size(); ++k) d(i, k) = der[k];
  }
  return d;
}

Eigen::VectorXd LegendreBasis::mass_diagonal() const {
  Eigen::VectorXd m(size());
  for (int k = 0; k < size(); ++k) m(k) = 2.0 / (2.0 * k + 1.0);
  return m;
}

double evaluate_expansion(std::span<const double> coefficients, double xi) {
  if (coefficients.empty()) return 0.0;
  // Clenshaw for the Legendre recurrence.
  double b1 = 0.0, b2 = 0.0;
  for (int k = static_cast<int>(coefficients.size()) - 1; k >= 1; --k) {
    const double alpha = (2.0 * k + 1.0) / (k + 1.0) * xi;
    const double beta = -(k + 1.0) / (k + 2.0);
    const double b0 = coefficients[k] + alpha * b1 + beta * b2;
    b2 = b1;
    b1 = b0;
  }
  return coefficients[0] + xi * b1 - 0.5 * b2;
}

double evaluate_expansion_derivative(std::span<const double> coefficients, double xi) {
  const int n = static_cast<int>(coefficients.size());
  if (n <= 1) return 0.0;
  std::vector<double> val(n), der(n);
  LegendreBasis(n - 1).evaluate(xi, val, der);
  double d = 0.0;
  for (int k = 0; k < n; ++k) d += coefficients[k] * der[k];
  return d;
}

Eigen::VectorXd project_l2(const std::function<double(double)>& f, const LegendreBasis& basis,
                           double a, double b, int quad_points) {
  const QuadratureRule rule = gauss_legendre(quad_points > 0 ? quad_points : basis.degree() + 4);
  const int n = basis.size();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  std::vector<double> val(n), der(n);
  for (int i = 0; i < rule.size(); ++i) {
    const double xi = rule.points[i];
    const double fx = f(0.5 * (a + b) + 0.5 * (b - a) * xi);
    basis.evaluate(xi, val, der);
    for (int k = 0; k < n; ++k) rhs(k) += rule.weights[i] * fx * val[k];
  }
  // Diagonal mass in reference coordinates; the Jacobian cancels.
  return rhs.cwiseQuotient(basis.mass_diagonal());
}

}  // namespace archdpg
