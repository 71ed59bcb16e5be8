#include "archdpg/manufactured.hpp"

namespace archdpg {

ManufacturedCase make_manufactured(const ArchParameters& params, const Expr& u, const Expr& theta) {
  const double e2 = params.epsilon() * params.epsilon();
  const double lam = params.lambda();
  const Expr m = theta.derivative();
  const Expr q = -m.derivative();
  const Expr w = ((params.mu() * e2) * q + lam * u + theta).antiderivative();
  const Expr n = (1.0 / e2) * (u.derivative() + lam * w);

  ManufacturedCase mc;
  mc.params = params;
  mc.fields = {u, w, theta, n, q, m};
  mc.f_u = -n.derivative() - lam * q;
  mc.f_w = -q.derivative() + lam * n;
  return mc;
}

std::array<double, kNumComponents> ManufacturedCase::evaluate(double x) const {
  std::array<double, kNumComponents> v{};
  for (int c = 0; c < kNumComponents; ++c) v[c] = fields[c](x);
  return v;
}

std::array<double, kNumComponents> ManufacturedCase::residual(double x) const {
  const double e2 = params.epsilon() * params.epsilon();
  const double lam = params.lambda();
  const auto y = evaluate(x);
  std::array<double, kNumComponents> d{};
  for (int c = 0; c < kNumComponents; ++c) d[c] = fields[c].derivative()(x);
  const double u = y[0], w = y[1], th = y[2], n = y[3], q = y[4], m = y[5];
  return {e2 * n - d[0] - lam * w,
          params.mu() * e2 * q - d[1] + lam * u + th,
          m - d[2],
          -d[3] - lam * q - f_u(x),
          -d[4] + lam * n - f_w(x),
          -d[5] - q};
}

std::array<std::vector<double>, kNumComponents> ManufacturedCase::trace_values(const Mesh& mesh) const {
  std::array<std::vector<double>, kNumComponents> t;
  for (int c = 0; c < kNumComponents; ++c)
    for (double x : mesh.nodes()) t[c].push_back(fields[c](x));
  return t;
}

ArchConfig ManufacturedCase::config(const BcPair& bc) const {
  ArchConfig cfg;
  cfg.params = params;
  cfg.bc = bc;
  cfg.load.f_u = f_u;
  cfg.load.f_w = f_w;
  for (int endpoint = 0; endpoint < 2; ++endpoint)
    for (Component c : essential_components(bc.at(endpoint)))
      cfg.boundary_values.push_back({endpoint, c, fields[index(c)](static_cast<double>(endpoint))});
  return cfg;
}

}  // namespace archdpg
