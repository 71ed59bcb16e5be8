#pragma once

#include <array>

#include "archdpg/arch.hpp"
#include "archdpg/expression.hpp"
#include "archdpg/mesh.hpp"

namespace archdpg {

/// Closed-form solution of the scaled arch system generated from u and theta.
struct ManufacturedCase {
  ArchParameters params{1.0, 1.0, 1.0};
  /// u, w, theta, n, q, m in component order.
  std::array<Expr, kNumComponents> fields;
  Expr f_u;
  Expr f_w;

  std::array<double, kNumComponents> evaluate(double x) const;
  /// Equation residuals in the same order and form as ReferenceSolution::residual.
  std::array<double, kNumComponents> residual(double x) const;
  /// Nodal values of every field, i.e. the exact traces.
  std::array<std::vector<double>, kNumComponents> trace_values(const Mesh& mesh) const;
  /// Problem with these loads and inhomogeneous essential traces taken from the fields.
  ArchConfig config(const BcPair& bc) const;
};

/// q = -theta'', m = theta', w = int_0^x (mu eps^2 q + lam u + theta),
/// n = eps^-2 (u' + lam w), f_u = -n' - lam q, f_w = -q' + lam n.
ManufacturedCase make_manufactured(const ArchParameters& params, const Expr& u, const Expr& theta);

}  // namespace archdpg
