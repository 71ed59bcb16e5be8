#pragma once

#include <functional>
#include <vector>

namespace archdpg {

/// Gauss-Legendre rule on the reference interval [-1, 1].
struct QuadratureRule {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
  /// Highest polynomial degree integrated exactly (2g - 1).
  int exactness() const { return 2 * size() - 1; }

  /// Integral of f over (a, b) through the affine map of the reference rule.
  double integrate(const std::function<double(double)>& f, double a = -1.0, double b = 1.0) const;
};

inline constexpr int kMaxQuadraturePoints = 64;

/// g-point Gauss-Legendre rule, 1 <= g <= 64. Throws std::out_of_range otherwise.
QuadratureRule gauss_legendre(int g);

}  // namespace archdpg
