#include "archdpg/assembly.hpp"

#include <cmath>
#include <string>

#include "archdpg/basis.hpp"
#include "archdpg/quadrature.hpp"
#include "parallel.hpp"

namespace archdpg {

namespace {

/// Linear combination sum_t value[t] * v_t + derivative[t] * v_t' of the six
/// test components.
struct TestOperator {
  std::array<double, kNumComponents> value{};
  std::array<double, kNumComponents> derivative{};
};

// Adjoint term paired with each trial field in b(., .).
std::array<TestOperator, kNumComponents> adjoint_operators(const ArchParameters& params) {
  const double lam = params.lambda();
  const double e2 = params.epsilon() * params.epsilon();
  using C = Component;
  std::array<TestOperator, kNumComponents> ops{};
  // u: dn' + lam dq
  ops[index(C::U)].derivative[index(C::N)] = 1.0;
  ops[index(C::U)].value[index(C::Q)] = lam;
  // w: dq' - lam dn
  ops[index(C::W)].derivative[index(C::Q)] = 1.0;
  ops[index(C::W)].value[index(C::N)] = -lam;
  // theta: dm' + dq
  ops[index(C::Theta)].derivative[index(C::M)] = 1.0;
  ops[index(C::Theta)].value[index(C::Q)] = 1.0;
  // n: eps^2 dn + du' + lam dw
  ops[index(C::N)].value[index(C::N)] = e2;
  ops[index(C::N)].derivative[index(C::U)] = 1.0;
  ops[index(C::N)].value[index(C::W)] = lam;
  // q: mu eps^2 dq + dw' - lam du - dtheta
  ops[index(C::Q)].value[index(C::Q)] = params.mu() * e2;
  ops[index(C::Q)].derivative[index(C::W)] = 1.0;
  ops[index(C::Q)].value[index(C::U)] = -lam;
  ops[index(C::Q)].value[index(C::Theta)] = -1.0;
  // m: dm + dtheta'
  ops[index(C::M)].value[index(C::M)] = 1.0;
  ops[index(C::M)].derivative[index(C::Theta)] = 1.0;
  return ops;
}

std::array<TestOperator, kNumComponents> graph_operators(const ArchParameters& params,
                                                         GraphThirdTerm third) {
  auto ops = adjoint_operators(params);
  if (third == GraphThirdTerm::NormalShear) {
    TestOperator literal{};
    literal.derivative[index(Component::N)] = 1.0;
    literal.value[index(Component::Q)] = 1.0;
    ops[index(Component::Theta)] = literal;
  }
  return ops;
}

/// Test basis tabulated at the quadrature points of one element.
struct TestTable {
  QuadratureRule rule;
  Eigen::MatrixXd psi;   // points x modes
  Eigen::MatrixXd dpsi;  // x-derivatives
  Eigen::VectorXd jxw;   // Jacobian times weight
};

TestTable tabulate_test(const DiscretizationConfig& disc, double a, double b, int quad_points) {
  TestTable t;
  t.rule = gauss_legendre(quad_points);
  const LegendreBasis basis(disc.test_degree());
  const double h = b - a;
  t.psi = basis.values(t.rule.points);
  t.dpsi = basis.derivatives(t.rule.points) * (2.0 / h);
  t.jxw = Eigen::Map<const Eigen::VectorXd>(t.rule.weights.data(), t.rule.size()) * (0.5 * h);
  return t;
}

// Values of op(v_i) for every test dof v_i at every quadrature point.
Eigen::MatrixXd apply_operator(const TestOperator& op, const TestTable& t, const ElementLayout& layout) {
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(t.rule.size(), layout.num_test_dofs());
  for (Component c : kAllComponents) {
    const int col = layout.test_dof(c, 0);
    const double v = op.value[index(c)];
    const double d = op.derivative[index(c)];
    if (v != 0.0) e.middleCols(col, layout.test_modes()) += v * t.psi;
    if (d != 0.0) e.middleCols(col, layout.test_modes()) += d * t.dpsi;
  }
  return e;
}

Eigen::MatrixXd weighted_gram(const Eigen::MatrixXd& e, const Eigen::VectorXd& jxw) {
  return e.transpose() * jxw.asDiagonal() * e;
}

}  // namespace

DiscretizationConfig DiscretizationConfig::standard(int p, int delta_p) {
  DiscretizationConfig d;
  d.p = p;
  d.delta_p = delta_p;
  d.test_norm = TestNorm::Standard;
  return d;
}

DiscretizationConfig DiscretizationConfig::scaled_graph(int p, double tau_num, int delta_p,
                                                        GraphThirdTerm third) {
  DiscretizationConfig d;
  d.p = p;
  d.delta_p = delta_p;
  d.test_norm = TestNorm::ScaledGraph;
  d.tau_num = tau_num;
  d.third_term = third;
  return d;
}

void DiscretizationConfig::validate() const {
  if (p < 0) throw std::invalid_argument("trial degree p must be nonnegative");
  if (delta_p < 1) throw std::invalid_argument("enrichment delta_p must be at least 1");
  if (test_norm == TestNorm::ScaledGraph && !(tau_num > 0.0))
    throw std::invalid_argument("tau_num must be positive for the scaled graph norm");
  if (quadrature_points() + 4 > kMaxQuadraturePoints)
    throw std::invalid_argument("p + delta_p too large for the available quadrature");
}

ElementLayout element_layout(const DiscretizationConfig& disc) {
  return ElementLayout{disc.p, disc.test_degree()};
}

Eigen::MatrixXd element_b_matrix(const ArchParameters& params, double a, double b,
                                 const DiscretizationConfig& disc) {
  const ElementLayout layout = element_layout(disc);
  const TestTable t = tabulate_test(disc, a, b, disc.quadrature_points());
  const Eigen::MatrixXd phi = LegendreBasis(disc.p).values(t.rule.points);
  const auto ops = adjoint_operators(params);

  Eigen::MatrixXd bm = Eigen::MatrixXd::Zero(layout.num_test_dofs(), layout.num_trial_dofs());
  for (Component c : kAllComponents) {
    const Eigen::MatrixXd e = apply_operator(ops[index(c)], t, layout);
    bm.middleCols(layout.field_dof(c, 0), layout.field_modes()) = e.transpose() * t.jxw.asDiagonal() * phi;
  }

  // -<z_hat, dz>: right endpoint -z(b) dz(b-), left endpoint +z(a) dz(a+).
  for (Component c : kAllComponents) {
    const Component tc = dual_component(c);
    for (int i = 0; i < layout.test_modes(); ++i) {
      const double at_left = (i % 2 == 0) ? 1.0 : -1.0;  // P_i(-1)
      bm(layout.test_dof(tc, i), layout.trace_dof(0, c)) = at_left;
      bm(layout.test_dof(tc, i), layout.trace_dof(1, c)) = -1.0;  // -P_i(1)
    }
  }
  return bm;
}

Eigen::MatrixXd test_mass(const DiscretizationConfig& disc, double a, double b) {
  const ElementLayout layout = element_layout(disc);
  const TestTable t = tabulate_test(disc, a, b, disc.quadrature_points());
  const Eigen::MatrixXd m = weighted_gram(t.psi, t.jxw);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(layout.num_test_dofs(), layout.num_test_dofs());
  for (Component c : kAllComponents) {
    const int o = layout.test_dof(c, 0);
    g.block(o, o, layout.test_modes(), layout.test_modes()) = m;
  }
  return g;
}

Eigen::MatrixXd gram_standard(const DiscretizationConfig& disc, double a, double b) {
  const ElementLayout layout = element_layout(disc);
  const TestTable t = tabulate_test(disc, a, b, disc.quadrature_points());
  const Eigen::MatrixXd block = weighted_gram(t.psi, t.jxw) + weighted_gram(t.dpsi, t.jxw);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(layout.num_test_dofs(), layout.num_test_dofs());
  for (Component c : kAllComponents) {
    const int o = layout.test_dof(c, 0);
    g.block(o, o, layout.test_modes(), layout.test_modes()) = block;
  }
  return g;
}

Eigen::MatrixXd gram_graph_operator_terms(const ArchParameters& params, const DiscretizationConfig& disc,
                                          double a, double b) {
  const ElementLayout layout = element_layout(disc);
  const TestTable t = tabulate_test(disc, a, b, disc.quadrature_points());
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(layout.num_test_dofs(), layout.num_test_dofs());
  for (const TestOperator& op : graph_operators(params, disc.third_term))
    g += weighted_gram(apply_operator(op, t, layout), t.jxw);
  return g;
}

Eigen::MatrixXd gram_graph(const ArchParameters& params, const DiscretizationConfig& disc, double a,
                           double b) {
  return gram_graph_operator_terms(params, disc, a, b) + disc.tau_num * test_mass(disc, a, b);
}

Eigen::MatrixXd test_gram(const ArchParameters& params, const DiscretizationConfig& disc, double a,
                          double b) {
  return disc.test_norm == TestNorm::Standard ? gram_standard(disc, a, b)
                                              : gram_graph(params, disc, a, b);
}

Eigen::VectorXd element_load(const LoadSpec& load, const DiscretizationConfig& disc, double a, double b) {
  const ElementLayout layout = element_layout(disc);
  Eigen::VectorXd l = Eigen::VectorXd::Zero(layout.num_test_dofs());
  if (load.f_u.is_zero() && load.f_w.is_zero()) return l;
  const TestTable t = tabulate_test(disc, a, b, disc.load_quadrature_points());
  Eigen::VectorXd fu(t.rule.size()), fw(t.rule.size());
  for (int g = 0; g < t.rule.size(); ++g) {
    const double x = 0.5 * (a + b) + 0.5 * (b - a) * t.rule.points[g];
    fu(g) = load.f_u(x) * t.jxw(g);
    fw(g) = load.f_w(x) * t.jxw(g);
  }
  l.segment(layout.test_dof(Component::U, 0), layout.test_modes()) = t.psi.transpose() * fu;
  l.segment(layout.test_dof(Component::W, 0), layout.test_modes()) = t.psi.transpose() * fw;
  return l;
}

ElementSystem element_system(const ArchParameters& params, const LoadSpec& load,
                             const DiscretizationConfig& disc, double a, double b) {
  ElementSystem es;
  es.B = element_b_matrix(params, a, b, disc);
  es.G = test_gram(params, disc, a, b);
  es.l = element_load(load, disc, a, b);
  es.num_field_dofs = element_layout(disc).num_field_dofs();
  return es;
}

Eigen::MatrixXd normal_matrix(const ElementSystem& es) {
  return es.B.transpose() * es.G.llt().solve(es.B);
}

Eigen::VectorXd optimal_test_function(const ElementSystem& es, const Eigen::VectorXd& trial) {
  // Graph-norm Gram matrices reach condition numbers near 1e10, so the
  // residual of each refinement step is accumulated in long double.
  using LongVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
  const Eigen::LLT<Eigen::MatrixXd> llt(es.G);
  const LongVector rhs = es.B.cast<long double>() * trial.cast<long double>();
  const Eigen::MatrixXd g = es.G;
  Eigen::VectorXd v = llt.solve(rhs.cast<double>());
  for (int step = 0; step < 3; ++step) {
    const LongVector r = rhs - g.cast<long double>() * v.cast<long double>();
    v += llt.solve(r.cast<double>());
  }
  return v;
}

CondensedElement condense(const ElementSystem& es) {
  const int nf = es.num_field_dofs;
  const int m = static_cast<int>(es.B.rows());
  const Eigen::LLT<Eigen::MatrixXd> llt(es.G);
  if (llt.info() != Eigen::Success) throw std::runtime_error("test Gram matrix is not positive definite");

  const Eigen::MatrixXd w_all = llt.matrixL().solve(es.B);
  const Eigen::VectorXd w_load = llt.matrixL().solve(es.l);

  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(w_all.leftCols(nf));
  const Eigen::MatrixXd& packed = qr.matrixQR();
  const double rmax = packed.diagonal().head(nf).cwiseAbs().maxCoeff();
  const double rmin = packed.diagonal().head(nf).cwiseAbs().minCoeff();
  if (!(rmin > 1e-12 * rmax))
    throw InsufficientEnrichment("field block of the element operator is rank deficient "
                                 "(enrichment delta_p too small for this element)");

  // Q^T applied to trace columns and load; top rows live in range(W_f),
  // bottom rows are coordinates in its orthogonal complement.
  const Eigen::MatrixXd qt_t = qr.householderQ().adjoint() * w_all.rightCols(ElementLayout::kTraceDofs);
  const Eigen::VectorXd qt_l = qr.householderQ().adjoint() * w_load;

  CondensedElement ce;
  ce.r_factor = packed.topLeftCorner(nf, nf).triangularView<Eigen::Upper>();
  ce.qt_trace = qt_t.topRows(nf);
  ce.qt_load = qt_l.head(nf);
  ce.projected_trace = qt_t.bottomRows(m - nf);
  ce.projected_load = qt_l.tail(m - nf);
  ce.schur = ce.projected_trace.transpose() * ce.projected_trace;
  ce.rhs = ce.projected_trace.transpose() * ce.projected_load;
  return ce;
}

Eigen::VectorXd CondensedElement::recover_fields(const TraceVector& traces) const {
  const Eigen::VectorXd rhs_f = qt_load - qt_trace * traces;
  return r_factor.triangularView<Eigen::Upper>().solve(rhs_f);
}

double CondensedElement::residual_norm(const TraceVector& traces) const {
  return (projected_load - projected_trace * traces).norm();
}

GlobalSystem assemble_global(const ArchConfig& config, const Mesh& mesh, const DiscretizationConfig& disc,
                             int threads) {
  disc.validate();
  const int ne = mesh.num_elements();
  const ElementLayout layout = element_layout(disc);

  GlobalSystem sys;
  sys.num_nodes = mesh.num_nodes();
  sys.stability = stability_constants(config.params, config.bc);
  if (sys.stability.regime == StabilityRegime::Uncovered)
    sys.warnings.push_back("boundary code '" + config.bc.code() +
                           "' is not covered by the stability theory; no error bound is guaranteed");
  else if (sys.stability.flagged)
    sys.warnings.push_back("stability constant is infinite for code '" + config.bc.code() +
                           "' at this curvature (cos(lambda) = 0)");

  const bool trace_mode = config.point_load_mode == PointLoadMode::EssentialTrace;
  if (trace_mode) {
    for (const PointLoad& pl : config.load.point_loads)
      if (!is_essential(config.bc.at(pl.endpoint), point_load_trace(pl.component)))
        throw std::invalid_argument("point load on '" + std::string(component_name(pl.component)) +
                                    "' cannot be realized as an essential trace: '" +
                                    std::string(component_name(point_load_trace(pl.component))) +
                                    "' is not essential at that endpoint");
  }

  // Essential traces at both endpoints.
  std::vector<int> is_fixed(sys.num_trace_dofs(), 0);
  std::vector<double> fixed_value(sys.num_trace_dofs(), 0.0);
  for (int endpoint = 0; endpoint < 2; ++endpoint) {
    const int node = endpoint == 0 ? 0 : mesh.num_nodes() - 1;
    const auto values = essential_values(config, endpoint, trace_mode);
    for (Component c : essential_components(config.bc.at(endpoint))) {
      const int dof = global_trace_dof(node, c);
      is_fixed[dof] = 1;
      fixed_value[dof] = values[index(c)];
    }
  }
  std::vector<int> free_index(sys.num_trace_dofs(), -1);
  for (int d = 0; d < sys.num_trace_dofs(); ++d) {
    if (is_fixed[d]) {
      sys.essential_dofs.push_back(d);
      sys.essential_values.push_back(fixed_value[d]);
    } else {
      free_index[d] = sys.num_free();
      sys.free_dofs.push_back(d);
    }
  }

  sys.elements.resize(ne);
  detail::parallel_for(ne, threads, [&](int j) {
    ElementSystem es = element_system(config.params, config.load, disc, mesh.node(j), mesh.node(j + 1));
    if (!trace_mode) {
      for (const PointLoad& pl : config.load.point_loads) {
        const bool here = (pl.endpoint == 0 && j == 0) || (pl.endpoint == 1 && j == ne - 1);
        if (!here) continue;
        for (int i = 0; i < layout.test_modes(); ++i) {
          const double psi = pl.endpoint == 1 ? 1.0 : ((i % 2 == 0) ? 1.0 : -1.0);
          es.l(layout.test_dof(pl.component, i)) += pl.magnitude * psi;
        }
      }
    }
    sys.elements[j] = condense(es);
  });

  constexpr int kBand = ElementLayout::kTraceDofs - 1;
  sys.matrix = SymmetricBandMatrix(sys.num_free(), kBand);
  sys.rhs = Eigen::VectorXd::Zero(sys.num_free());
  for (int j = 0; j < ne; ++j) {
    const CondensedElement& ce = sys.elements[j];
    const int base = kNumComponents * j;
    for (int a = 0; a < ElementLayout::kTraceDofs; ++a) {
      const int fa = free_index[base + a];
      if (fa < 0) continue;
      double r = ce.rhs(a);
      for (int b = 0; b < ElementLayout::kTraceDofs; ++b) {
        const int gb = base + b;
        const int fb = free_index[gb];
        if (fb < 0)
          r -= ce.schur(a, b) * fixed_value[gb];
        else if (b <= a)
          sys.matrix.add(fa, fb, ce.schur(a, b));
      }
      sys.rhs(fa) += r;
    }
  }
  return sys;
}

}  // namespace archdpg
