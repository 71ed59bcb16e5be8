#pragma once

#include <array>

namespace archdpg {

/// Stress field in the kernel of the equilibrium operator
/// (n' + lambda q = 0, q' - lambda n = 0, m' + q = 0), fixed by its values at x = 0.
struct KernelField {
  double n0 = 0.0;
  double q0 = 0.0;
  double m0 = 0.0;
  double lambda = 1.0;
};

struct KernelValues {
  double n = 0.0;
  double q = 0.0;
  double m = 0.0;
};

KernelValues kernel_evaluate(const KernelField& k, double x);

/// Squared L2(0,1) norms of n and q in closed form.
struct KernelNorms {
  double n_sq = 0.0;
  double q_sq = 0.0;
};
KernelNorms kernel_l2_norms(const KernelField& k);

/// The 2x2 Gram matrix Lambda_n with ||n||^2 = 1/2 (n0,q0) Lambda_n (n0,q0)^T.
/// Lambda_q is its rotation by a quarter turn.
std::array<std::array<double, 2>, 2> kernel_gram_n(double lambda);
std::array<std::array<double, 2>, 2> kernel_gram_q(double lambda);

/// Extreme eigenvalues 1 -/+ |sin lambda|/lambda shared by Lambda_n and Lambda_q.
struct EigenBounds {
  double min_eig = 0.0;
  double max_eig = 0.0;
};
EigenBounds eigen_bounds(double lambda);

/// Unit (n0, q0) along the lowest eigenvector of Lambda_n. On this direction
/// ||q||^2 / ||n||^2 equals C_q(lambda).
std::array<double, 2> kernel_extremal_direction(double lambda);

}  // namespace archdpg
