#include "archdpg/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "archdpg/basis.hpp"
#include "archdpg/quadrature.hpp"
#include "parallel.hpp"

namespace archdpg {

double FieldSolution::evaluate_on_element(Component c, int element, double xi) const {
  const auto row = coefficients[index(c)].row(element);
  std::array<double, 64> buf{};
  for (int k = 0; k <= degree; ++k) buf[k] = row(k);
  return evaluate_expansion(std::span<const double>(buf.data(), degree + 1), xi);
}

double FieldSolution::evaluate(Component c, double x) const {
  const int j = mesh.locate(x);
  const double a = mesh.node(j);
  const double xi = 2.0 * (x - a) / mesh.h(j) - 1.0;
  return evaluate_on_element(c, j, std::clamp(xi, -1.0, 1.0));
}

std::array<double, kNumComponents> FieldSolution::evaluate_all(double x) const {
  std::array<double, kNumComponents> v{};
  for (Component c : kAllComponents) v[index(c)] = evaluate(c, x);
  return v;
}

namespace {

constexpr int kMaxRefinementSteps = 4;

// Iterative refinement of the trace least-squares problem. The gradient is
// formed as sum_K P_K^T (w_K - P_K t_K) rather than from the assembled normal
// matrix, which removes the cancellation that otherwise limits the traces to
// about cond(S) times machine precision.
void refine_traces(const GlobalSystem& sys, const BandCholesky& chol, Eigen::VectorXd& traces) {
  std::vector<int> free_index(sys.num_trace_dofs(), -1);
  for (int i = 0; i < sys.num_free(); ++i) free_index[sys.free_dofs[i]] = i;
  const int ne = static_cast<int>(sys.elements.size());
  for (int step = 0; step < kMaxRefinementSteps; ++step) {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(sys.num_free());
    for (int j = 0; j < ne; ++j) {
      const CondensedElement& ce = sys.elements[j];
      const TraceVector local = traces.segment<ElementLayout::kTraceDofs>(kNumComponents * j);
      const TraceVector gj = ce.projected_trace.transpose() * (ce.projected_load - ce.projected_trace * local);
      for (int a = 0; a < ElementLayout::kTraceDofs; ++a) {
        const int f = free_index[kNumComponents * j + a];
        if (f >= 0) g(f) += gj(a);
      }
    }
    const Eigen::VectorXd delta = chol.solve(g);
    double delta_norm = 0.0, trace_norm = 0.0;
    for (int i = 0; i < sys.num_free(); ++i) {
      traces(sys.free_dofs[i]) += delta(i);
      delta_norm = std::max(delta_norm, std::abs(delta(i)));
      trace_norm = std::max(trace_norm, std::abs(traces(sys.free_dofs[i])));
    }
    if (delta_norm <= 1e-15 * trace_norm) break;
  }
}

}  // namespace

Solution solve(const ArchConfig& config, const Mesh& mesh, const DiscretizationConfig& disc,
               const SolveOptions& options) {
  GlobalSystem sys = [&] {
    try {
      return assemble_global(config, mesh, disc, options.threads);
    } catch (const InsufficientEnrichment& e) {
      throw SolverError(std::string(e.what()) + "; boundary code '" + config.bc.code() +
                        "', delta_p = " + std::to_string(disc.delta_p) + ": increase delta_p");
    }
  }();

  std::optional<BandCholesky> chol;
  try {
    chol.emplace(sys.matrix);
  } catch (const FactorizationError& e) {
    throw SolverError("trace system for boundary code '" + config.bc.code() +
                      "' is not positive definite (" + e.what() + "); the problem may be ill-posed "
                      "for this code, or delta_p = " + std::to_string(disc.delta_p) + " is too small");
  }
  const Eigen::VectorXd free_values = chol->solve(sys.rhs);

  Eigen::VectorXd traces = Eigen::VectorXd::Zero(sys.num_trace_dofs());
  for (int i = 0; i < sys.num_free(); ++i) traces(sys.free_dofs[i]) = free_values(i);
  for (std::size_t i = 0; i < sys.essential_dofs.size(); ++i)
    traces(sys.essential_dofs[i]) = sys.essential_values[i];
  refine_traces(sys, *chol, traces);

  const int ne = mesh.num_elements();
  const ElementLayout layout = element_layout(disc);

  Solution sol;
  sol.fields.mesh = mesh;
  sol.fields.degree = disc.p;
  for (auto& c : sol.fields.coefficients) c.resize(ne, layout.field_modes());
  sol.element_indicators.resize(ne);
  detail::parallel_for(ne, options.threads, [&](int j) {
    const TraceVector local = traces.segment<ElementLayout::kTraceDofs>(kNumComponents * j);
    const Eigen::VectorXd y = sys.elements[j].recover_fields(local);
    for (Component c : kAllComponents)
      for (int k = 0; k < layout.field_modes(); ++k)
        sol.fields.coefficients[index(c)](j, k) = y(layout.field_dof(c, k));
    sol.element_indicators[j] = sys.elements[j].residual_norm(local);
  });

  for (Component c : kAllComponents) {
    auto& v = sol.traces.values[index(c)];
    v.resize(mesh.num_nodes());
    for (int i = 0; i < mesh.num_nodes(); ++i) v[i] = traces(global_trace_dof(i, c));
  }
  // A point load realized through the functional leaves its paired essential
  // stress trace at the load-free value; report the physical value instead.
  if (config.point_load_mode == PointLoadMode::Functional) {
    for (const PointLoad& pl : config.load.point_loads) {
      const Component paired = point_load_trace(pl.component);
      if (!is_essential(config.bc.at(pl.endpoint), paired)) continue;
      const int node = pl.endpoint == 0 ? 0 : mesh.num_nodes() - 1;
      sol.traces.values[index(paired)][node] += point_load_trace_value(pl);
    }
  }
  double sq = 0.0;
  for (double eta : sol.element_indicators) sq += eta * eta;
  sol.indicator = std::sqrt(sq);
  sol.stability = sys.stability;
  sol.warnings = std::move(sys.warnings);
  sol.num_free_trace_dofs = sys.num_free();
  return sol;
}

Solution mirror_solution(const Solution& sol) {
  const Mesh& mesh = sol.fields.mesh;
  const int ne = mesh.num_elements();
  std::vector<double> nodes(mesh.num_nodes());
  for (int i = 0; i < mesh.num_nodes(); ++i) nodes[i] = 1.0 - mesh.node(mesh.num_nodes() - 1 - i);
  nodes.front() = 0.0;
  nodes.back() = 1.0;

  Solution m = sol;
  m.fields.mesh = Mesh(std::move(nodes));
  for (Component c : kAllComponents) {
    const double s = mirror_sign(c);
    const auto& src = sol.fields.coefficients[index(c)];
    auto& dst = m.fields.coefficients[index(c)];
    for (int j = 0; j < ne; ++j)
      for (int k = 0; k <= sol.fields.degree; ++k)
        dst(ne - 1 - j, k) = s * ((k % 2 == 0) ? 1.0 : -1.0) * src(j, k);  // P_k(-xi) = (-1)^k P_k(xi)
    const auto& tsrc = sol.traces.values[index(c)];
    auto& tdst = m.traces.values[index(c)];
    for (int i = 0; i < mesh.num_nodes(); ++i) tdst[mesh.num_nodes() - 1 - i] = s * tsrc[i];
  }
  std::reverse(m.element_indicators.begin(), m.element_indicators.end());
  return m;
}

ErrorTable l2_errors(const FieldSolution& fields, const FieldEvaluator& reference, int extra_points) {
  const QuadratureRule rule = gauss_legendre(std::min(kMaxQuadraturePoints, fields.degree + extra_points));
  const Mesh& mesh = fields.mesh;
  std::array<double, kNumComponents> err_sq{}, ref_sq{};
  for (int j = 0; j < mesh.num_elements(); ++j) {
    const double a = mesh.node(j);
    const double h = mesh.h(j);
    for (int g = 0; g < rule.size(); ++g) {
      const double xi = rule.points[g];
      const double jxw = 0.5 * h * rule.weights[g];
      const auto ref = reference(a + 0.5 * h * (xi + 1.0));
      for (Component c : kAllComponents) {
        const double diff = fields.evaluate_on_element(c, j, xi) - ref[index(c)];
        err_sq[index(c)] += jxw * diff * diff;
        ref_sq[index(c)] += jxw * ref[index(c)] * ref[index(c)];
      }
    }
  }
  ErrorTable t;
  for (int c = 0; c < kNumComponents; ++c) {
    t.reference_norm[c] = std::sqrt(ref_sq[c]);
    t.relative[c] = t.reference_norm[c] >= 1e-14;
    t.error[c] = std::sqrt(err_sq[c]) / (t.relative[c] ? t.reference_norm[c] : 1.0);
  }
  return t;
}

double observed_rate(double e_coarse, double e_fine, int n_coarse, int n_fine) {
  return std::log(e_coarse / e_fine) / std::log(static_cast<double>(n_fine) / n_coarse);
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceReport convergence_study(const ArchConfig& config, const DiscretizationConfig& disc,
                                    const std::vector<int>& n_list, const FieldEvaluator& reference,
                                    const SolveOptions& options) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw std::invalid_argument("N list must be strictly increasing");
  if (!n_list.empty() && n_list.front() < 1) throw std::invalid_argument("N list entries must be >= 1");

  ConvergenceReport report;
  report.rows.resize(n_list.size());
  const int row_threads = std::max(1, options.threads);
  detail::parallel_for(static_cast<int>(n_list.size()), row_threads, [&](int i) {
    const Mesh mesh = Mesh::uniform(n_list[i]);
    const Solution sol = solve(config, mesh, disc, SolveOptions{1});
    ConvergenceRow& row = report.rows[i];
    row.num_elements = n_list[i];
    row.h_max = mesh.h_max();
    row.errors = l2_errors(sol.fields, reference);
    row.indicator = sol.indicator;
    row.free_trace_dofs = sol.num_free_trace_dofs;
  });

  const auto value = [&](std::size_t row, int k) {
    return k < kNumComponents ? report.rows[row].errors.error[k] : report.rows[row].indicator;
  };
  for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
    RateVector r{};
    for (int k = 0; k <= kNumComponents; ++k)
      r[k] = observed_rate(value(i, k), value(i + 1, k), n_list[i], n_list[i + 1]);
    report.rates.push_back(r);
  }
  if (report.rows.size() >= 2) {
    const std::size_t first = report.rows.size() >= 3 ? report.rows.size() - 3 : 0;
    std::vector<double> xs;
    for (std::size_t i = first; i < report.rows.size(); ++i) xs.push_back(n_list[i]);
    for (int k = 0; k <= kNumComponents; ++k) {
      std::vector<double> ys;
      for (std::size_t i = first; i < report.rows.size(); ++i) ys.push_back(value(i, k));
      report.tail_rate[k] = -log_log_slope(xs, ys);
    }
  }
  return report;
}

}  // namespace archdpg
