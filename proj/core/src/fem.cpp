#include "archdpg/fem.hpp"

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "archdpg/banded.hpp"
#include "archdpg/quadrature.hpp"
#include "archdpg/solver.hpp"

namespace archdpg {

namespace {

constexpr int kDofsPerNode = 3;
constexpr double kEulerBernoulliPenalty = 1e-3;

using ElementVector = Eigen::Matrix<double, 6, 1>;  // (u0, w0, th0, u1, w1, th1)
using ElementMatrix = Eigen::Matrix<double, 6, 6>;

// Strain rows at reference point s in [0, 1] of an element of length h.
struct StrainRows {
  ElementVector membrane;  // u' + lam w
  ElementVector shear;     // w' - lam u - theta
  ElementVector bending;   // theta'
};

StrainRows strain_rows(double lam, double h, double s) {
  const double n0 = 1.0 - s, n1 = s;
  const double d0 = -1.0 / h, d1 = 1.0 / h;
  StrainRows r;
  r.membrane << d0, lam * n0, 0.0, d1, lam * n1, 0.0;
  r.shear << -lam * n0, d0, -n0, -lam * n1, d1, -n1;
  r.bending << 0.0, 0.0, d0, 0.0, 0.0, d1;
  return r;
}

struct Stiffness {
  double membrane;
  double shear;
};

Stiffness stiffness_of(const ArchParameters& params) {
  const double e2 = params.epsilon() * params.epsilon();
  return {1.0 / e2, 1.0 / fem_shear_compliance(params)};
}

// Strain sample points and weights on [0, 1]: midpoint when reduced, exact 2-point Gauss otherwise.
std::vector<std::array<double, 2>> strain_points(bool reduced) {
  if (reduced) return {{0.5, 1.0}};
  const double g = 0.5 / std::sqrt(3.0);
  return {{0.5 - g, 0.5}, {0.5 + g, 0.5}};
}

ElementMatrix element_stiffness(const ArchParameters& params, double h, bool reduced) {
  const Stiffness k = stiffness_of(params);
  ElementMatrix ke = ElementMatrix::Zero();
  for (const auto& [s, w] : strain_points(reduced)) {
    const StrainRows r = strain_rows(params.lambda(), h, s);
    ke += h * w * (k.membrane * r.membrane * r.membrane.transpose() + k.shear * r.shear * r.shear.transpose());
  }
  const StrainRows r = strain_rows(params.lambda(), h, 0.5);
  ke += h * r.bending * r.bending.transpose();
  return ke;
}

ElementVector element_load_vector(const LoadSpec& load, double a, double b) {
  static const QuadratureRule rule = gauss_legendre(8);
  ElementVector f = ElementVector::Zero();
  const double h = b - a;
  for (int g = 0; g < rule.size(); ++g) {
    const double s = 0.5 * (rule.points[g] + 1.0);
    const double x = a + s * h;
    const double jxw = 0.5 * h * rule.weights[g];
    const double fu = load.f_u(x), fw = load.f_w(x);
    f(0) += jxw * fu * (1.0 - s);
    f(3) += jxw * fu * s;
    f(1) += jxw * fw * (1.0 - s);
    f(4) += jxw * fw * s;
  }
  return f;
}

int kinematic_slot(Component c) { return index(c); }  // U, W, Theta -> 0, 1, 2

ElementVector gather(const FemSolution& sol, int j) {
  ElementVector v;
  v << sol.u[j], sol.w[j], sol.theta[j], sol.u[j + 1], sol.w[j + 1], sol.theta[j + 1];
  return v;
}

}  // namespace

double fem_shear_compliance(const ArchParameters& params) {
  const double e2 = params.epsilon() * params.epsilon();
  return params.mu() > 0.0 ? params.mu() * e2 : kEulerBernoulliPenalty * e2;
}

int fem_constrained_dofs(const BcPair& bc) {
  int count = 0;
  for (int endpoint = 0; endpoint < 2; ++endpoint)
    for (Component c : essential_components(bc.at(endpoint)))
      if (index(c) < kDofsPerNode) ++count;
  return count;
}

double FemSolution::displacement(Component c, double x) const {
  const std::vector<double>& v = c == Component::U ? u : (c == Component::W ? w : theta);
  const int j = mesh.locate(x);
  const double s = (x - mesh.node(j)) / mesh.h(j);
  return (1.0 - s) * v[j] + s * v[j + 1];
}

double FemSolution::resultant(Component c, double x) const {
  const std::vector<double>& v = c == Component::N ? n : (c == Component::Q ? q : m);
  return v[mesh.locate(x)];
}

FemSolution fem_solve(const ArchConfig& config, const Mesh& mesh, bool reduced) {
  const int nn = mesh.num_nodes();
  const int ndof = kDofsPerNode * nn;

  std::vector<int> fixed(ndof, 0);
  std::vector<double> fixed_value(ndof, 0.0);
  for (int endpoint = 0; endpoint < 2; ++endpoint) {
    const int node = endpoint == 0 ? 0 : nn - 1;
    const auto values = essential_values(config, endpoint, false);
    for (Component c : essential_components(config.bc.at(endpoint))) {
      if (index(c) >= kDofsPerNode) continue;
      const int d = kDofsPerNode * node + kinematic_slot(c);
      fixed[d] = 1;
      fixed_value[d] = values[index(c)];
    }
  }
  std::vector<int> free_index(ndof, -1);
  int nfree = 0;
  for (int d = 0; d < ndof; ++d)
    if (!fixed[d]) free_index[d] = nfree++;

  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(nfree);
  SymmetricBandMatrix k(nfree, 2 * kDofsPerNode - 1);
  for (int j = 0; j < mesh.num_elements(); ++j) {
    const ElementMatrix ke = element_stiffness(config.params, mesh.h(j), reduced);
    const ElementVector fe = element_load_vector(config.load, mesh.node(j), mesh.node(j + 1));
    const int base = kDofsPerNode * j;
    for (int a = 0; a < 6; ++a) {
      const int fa = free_index[base + a];
      if (fa < 0) continue;
      double r = fe(a);
      for (int b = 0; b < 6; ++b) {
        const int fb = free_index[base + b];
        if (fb < 0)
          r -= ke(a, b) * fixed_value[base + b];
        else if (b <= a)
          k.add(fa, fb, ke(a, b));
      }
      rhs(fa) += r;
    }
  }
  for (const PointLoad& pl : config.load.point_loads) {
    const int node = pl.endpoint == 0 ? 0 : nn - 1;
    const int fa = free_index[kDofsPerNode * node + kinematic_slot(pl.component)];
    if (fa >= 0) rhs(fa) += pl.magnitude;
  }

  Eigen::VectorXd x;
  try {
    x = BandCholesky(std::move(k)).solve(rhs);
  } catch (const FactorizationError& e) {
    throw SolverError("FEM stiffness matrix is singular for boundary code '" + config.bc.code() +
                      "': kinematic constraints leave a rigid-body mode (" + e.what() + ")");
  }

  FemSolution sol;
  sol.mesh = mesh;
  sol.reduced = reduced;
  sol.u.resize(nn);
  sol.w.resize(nn);
  sol.theta.resize(nn);
  for (int node = 0; node < nn; ++node) {
    for (int c = 0; c < kDofsPerNode; ++c) {
      const int d = kDofsPerNode * node + c;
      const double v = fixed[d] ? fixed_value[d] : x(free_index[d]);
      (c == 0 ? sol.u : c == 1 ? sol.w : sol.theta)[node] = v;
    }
  }
  const Stiffness stiff = stiffness_of(config.params);
  for (int j = 0; j < mesh.num_elements(); ++j) {
    const StrainRows r = strain_rows(config.params.lambda(), mesh.h(j), 0.5);
    const ElementVector ue = gather(sol, j);
    sol.n.push_back(stiff.membrane * r.membrane.dot(ue));
    sol.q.push_back(stiff.shear * r.shear.dot(ue));
    sol.m.push_back(r.bending.dot(ue));
  }
  sol.energy = fem_energy(sol, config);
  return sol;
}

double tip_location(const BcPair& bc) {
  if (!is_essential(bc.left, Component::W)) return 0.0;
  if (!is_essential(bc.right, Component::W)) return 1.0;
  return 0.5;
}

std::array<double, 3> fem_displacement_errors(
    const FemSolution& sol, const std::function<std::array<double, kNumComponents>(double)>& reference) {
  static const QuadratureRule rule = gauss_legendre(8);
  const Mesh& mesh = sol.mesh;
  std::array<double, 3> err_sq{}, ref_sq{};
  constexpr std::array<Component, 3> kDisplacements = {Component::U, Component::W, Component::Theta};
  for (int j = 0; j < mesh.num_elements(); ++j) {
    const double a = mesh.node(j), h = mesh.h(j);
    for (int g = 0; g < rule.size(); ++g) {
      const double s = 0.5 * (rule.points[g] + 1.0);
      const double jxw = 0.5 * h * rule.weights[g];
      const auto ref = reference(a + s * h);
      for (int c = 0; c < 3; ++c) {
        const std::vector<double>& v = c == 0 ? sol.u : (c == 1 ? sol.w : sol.theta);
        const double diff = (1.0 - s) * v[j] + s * v[j + 1] - ref[index(kDisplacements[c])];
        err_sq[c] += jxw * diff * diff;
        ref_sq[c] += jxw * ref[index(kDisplacements[c])] * ref[index(kDisplacements[c])];
      }
    }
  }
  std::array<double, 3> out{};
  for (int c = 0; c < 3; ++c) {
    const double norm = std::sqrt(ref_sq[c]);
    out[c] = std::sqrt(err_sq[c]) / (norm >= 1e-14 ? norm : 1.0);
  }
  return out;
}

double fem_energy(const FemSolution& sol, const ArchConfig& config) {
  const Mesh& mesh = sol.mesh;
  double strain = 0.0, work = 0.0;
  for (int j = 0; j < mesh.num_elements(); ++j) {
    const ElementVector ue = gather(sol, j);
    strain += ue.dot(element_stiffness(config.params, mesh.h(j), sol.reduced) * ue);
    work += ue.dot(element_load_vector(config.load, mesh.node(j), mesh.node(j + 1)));
  }
  const int last = mesh.num_nodes() - 1;
  for (const PointLoad& pl : config.load.point_loads) {
    const int node = pl.endpoint == 0 ? 0 : last;
    const std::vector<double>& v =
        pl.component == Component::U ? sol.u : (pl.component == Component::W ? sol.w : sol.theta);
    work += pl.magnitude * v[node];
  }
  return 0.5 * strain - work;
}

}  // namespace archdpg
