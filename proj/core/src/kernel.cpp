#include "archdpg/kernel.hpp"

#include <cmath>

namespace archdpg {

KernelValues kernel_evaluate(const KernelField& k, double x) {
  const double c = std::cos(k.lambda * x);
  const double s = std::sin(k.lambda * x);
  KernelValues v;
  v.n = k.n0 * c - k.q0 * s;
  v.q = k.q0 * c + k.n0 * s;
  v.m = k.m0 + (v.n - k.n0) / k.lambda;
  return v;
}

std::array<std::array<double, 2>, 2> kernel_gram_n(double lambda) {
  const double a = std::sin(2.0 * lambda) / (2.0 * lambda);
  const double s = std::sin(lambda);
  const double b = s * s / lambda;
  return {{{1.0 + a, -b}, {-b, 1.0 - a}}};
}

std::array<std::array<double, 2>, 2> kernel_gram_q(double lambda) {
  const double a = std::sin(2.0 * lambda) / (2.0 * lambda);
  const double s = std::sin(lambda);
  const double b = s * s / lambda;
  return {{{1.0 - a, b}, {b, 1.0 + a}}};
}

KernelNorms kernel_l2_norms(const KernelField& k) {
  const auto quad = [&](const std::array<std::array<double, 2>, 2>& g) {
    return 0.5 * (k.n0 * (g[0][0] * k.n0 + g[0][1] * k.q0) + k.q0 * (g[1][0] * k.n0 + g[1][1] * k.q0));
  };
  return {quad(kernel_gram_n(k.lambda)), quad(kernel_gram_q(k.lambda))};
}

EigenBounds eigen_bounds(double lambda) {
  const double r = std::abs(std::sin(lambda)) / lambda;
  return {1.0 - r, 1.0 + r};
}

std::array<double, 2> kernel_extremal_direction(double lambda) {
  // Lambda_n - I = [[a, b], [b, -a]] is a scaled reflection with axis angle
  // phi/2, phi = atan2(b, a); the -r eigenvector is perpendicular to that axis.
  const double a = std::sin(2.0 * lambda) / (2.0 * lambda);
  const double s = std::sin(lambda);
  const double b = -s * s / lambda;
  const double half = 0.5 * std::atan2(b, a);
  return {-std::sin(half), std::cos(half)};
}

}  // namespace archdpg
