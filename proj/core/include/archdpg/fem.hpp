#pragma once

#include <array>
#include <functional>
#include <vector>

#include "archdpg/arch.hpp"
#include "archdpg/mesh.hpp"

namespace archdpg {

/// Continuous piecewise-linear displacement solution of the strain-energy
/// minimization, with elementwise-constant stress resultants.
struct FemSolution {
  Mesh mesh{std::vector<double>{0.0, 1.0}};
  bool reduced = true;
  std::vector<double> u, w, theta;  // nodal
  std::vector<double> n, q, m;      // per element
  double energy = 0.0;

  /// Linear interpolation of a displacement component (U, W or Theta).
  double displacement(Component c, double x) const;
  /// Elementwise-constant resultant (N, Q or M).
  double resultant(Component c, double x) const;
  int num_dofs() const { return 3 * mesh.num_nodes(); }
};

/// Shear compliance used by the FEM: mu * eps^2, or 1e-3 * eps^2 penalty when mu = 0.
double fem_shear_compliance(const ArchParameters& params);

/// Minimizes
///   F = 1/2 (eps^-2 ||P(u' + lam w)||^2 + (mu eps^2)^-1 ||P(w' - lam u - theta)||^2 + ||theta'||^2)
///       - (f_u, u) - (f_w, w) - endpoint point-load work
/// with P the elementwise mean (reduced = true) or the identity (reduced = false).
/// Kinematic traces of the BC masks are constrained; stress conditions are
/// natural. Throws SolverError (solver.hpp) when a rigid mode remains.
FemSolution fem_solve(const ArchConfig& config, const Mesh& mesh, bool reduced);

/// F evaluated at the displacements of `sol`, including the load work.
double fem_energy(const FemSolution& sol, const ArchConfig& config);

/// Number of kinematic dofs fixed by the BC masks.
int fem_constrained_dofs(const BcPair& bc);

/// Point where the transverse deflection is reported: x = 0 if the left
/// support leaves w free, otherwise x = 1 if the right one does, else x = 0.5.
double tip_location(const BcPair& bc);

/// Relative L2 errors of (u, w, theta) against a reference returning the six
/// fields; absolute where the reference norm is below 1e-14.
std::array<double, 3> fem_displacement_errors(
    const FemSolution& sol, const std::function<std::array<double, kNumComponents>(double)>& reference);

}  // namespace archdpg
