#pragma once

#include <span>

#include "archdpg/mesh.hpp"

namespace archdpg {

/// Per-element contribution to the discrete trace norm:
/// h/3 (z0^2 + z0 z1 + z1^2) + (z0 - z1)^2 / h.
double element_trace_norm_gamma_sq(double z0, double z1, double h);

/// Squared H1(0,h) norm of the minimal extension (solution of -z'' + z = 0)
/// with end values z0, z1: ((z0^2 + z1^2) cosh h - 2 z0 z1) / sinh h.
double element_trace_norm_extension_sq(double z0, double z1, double h);

/// Discrete trace norm of nodal values; throws std::invalid_argument when the
/// vector length differs from the node count.
double trace_norm_gamma(std::span<const double> hat_z, const Mesh& mesh);

/// Exact minimal broken-H1 extension norm of nodal values.
double trace_norm_minimal_extension(std::span<const double> hat_z, const Mesh& mesh);

}  // namespace archdpg
