#include "archdpg/trace_norm.hpp"

#include <cmath>
#include <stdexcept>

namespace archdpg {

double element_trace_norm_gamma_sq(double z0, double z1, double h) {
  const double d = z0 - z1;
  return h / 3.0 * (z0 * z0 + z0 * z1 + z1 * z1) + d * d / h;
}

double element_trace_norm_extension_sq(double z0, double z1, double h) {
  // (z0^2 + z1^2)(cosh h - 1) + (z0 - z1)^2 avoids cancellation for small h.
  const double sh = std::sinh(0.5 * h);
  const double d = z0 - z1;
  return ((z0 * z0 + z1 * z1) * 2.0 * sh * sh + d * d) / std::sinh(h);
}

namespace {
template <typename F>
double summed_norm(std::span<const double> hat_z, const Mesh& mesh, F&& element_sq) {
  if (static_cast<int>(hat_z.size()) != mesh.num_nodes())
    throw std::invalid_argument("trace vector length must equal the number of mesh nodes");
  double sum = 0.0;
  for (int j = 0; j < mesh.num_elements(); ++j) sum += element_sq(hat_z[j], hat_z[j + 1], mesh.h(j));
  return std::sqrt(sum);
}
}  // namespace

double trace_norm_gamma(std::span<const double> hat_z, const Mesh& mesh) {
  return summed_norm(hat_z, mesh, element_trace_norm_gamma_sq);
}

double trace_norm_minimal_extension(std::span<const double> hat_z, const Mesh& mesh) {
  return summed_norm(hat_z, mesh, element_trace_norm_extension_sq);
}

}  // namespace archdpg
