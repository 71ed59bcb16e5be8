#include "archdpg/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace archdpg {

double QuadratureRule::integrate(const std::function<double(double)>& f, double a, double b) const {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < size(); ++i) sum += weights[i] * f(mid + half * points[i]);
  return half * sum;
}

QuadratureRule gauss_legendre(int g) {
  if (g < 1 || g > kMaxQuadraturePoints)
    throw std::out_of_range("quadrature point count must lie in [1, 64], got " + std::to_string(g));

  QuadratureRule rule;
  rule.points.resize(g);
  rule.weights.resize(g);
  const int half = (g + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton on P_g from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (g + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= g; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pg = g == 1 ? x : p1;
      const double pgm1 = g == 1 ? 1.0 : p0;
      dp = g * (x * pg - pgm1) / (x * x - 1.0);
      const double dx = pg / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute the derivative at the converged node.
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= g; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    const double pg = g == 1 ? x : p1;
    const double pgm1 = g == 1 ? 1.0 : p0;
    dp = g * (x * pg - pgm1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.points[i] = -x;
    rule.points[g - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[g - 1 - i] = w;
  }
  if (g % 2 == 1) rule.points[g / 2] = 0.0;
  return rule;
}

}  // namespace archdpg
