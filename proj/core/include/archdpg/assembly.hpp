#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "archdpg/arch.hpp"
#include "archdpg/banded.hpp"
#include "archdpg/mesh.hpp"
#include "archdpg/stability.hpp"

namespace archdpg {

enum class TestNorm { Standard, ScaledGraph };

/// Third adjoint term of the scaled graph norm: ||dm' + dq||^2 (Adjoint) or
/// ||dn' + dq||^2 (NormalShear).
enum class GraphThirdTerm { Adjoint, NormalShear };

struct DiscretizationConfig {
  int p = 1;
  int delta_p = 2;
  TestNorm test_norm = TestNorm::Standard;
  double tau_num = 1e-5;
  GraphThirdTerm third_term = GraphThirdTerm::Adjoint;

  /// Standard broken-H1 test norm with enrichment 2.
  static DiscretizationConfig standard(int p, int delta_p = 2);
  /// Scaled graph norm with enrichment 4.
  static DiscretizationConfig scaled_graph(int p, double tau_num = 1e-5, int delta_p = 4,
                                           GraphThirdTerm third = GraphThirdTerm::Adjoint);

  int test_degree() const { return p + delta_p; }
  /// Gauss points for bilinear-form and Gram integrals (exact for their degree).
  int quadrature_points() const { return p + delta_p + 2; }
  /// Gauss points for load integrals.
  int load_quadrature_points() const { return quadrature_points() + 4; }

  /// Throws std::invalid_argument on p < 0, delta_p < 1 or tau_num <= 0.
  void validate() const;
};

/// Dof numbering inside one element.
///
/// Trial columns: field dofs component-major (component * (p+1) + mode), then
/// 12 trace dofs (side * 6 + component, side 0 = left node). Test rows:
/// component * (p + delta_p + 1) + mode.
struct ElementLayout {
  int p = 1;
  int test_degree = 3;

  static constexpr int kTraceDofs = 2 * kNumComponents;

  int field_modes() const { return p + 1; }
  int test_modes() const { return test_degree + 1; }
  int num_field_dofs() const { return kNumComponents * field_modes(); }
  int num_trial_dofs() const { return num_field_dofs() + kTraceDofs; }
  int num_test_dofs() const { return kNumComponents * test_modes(); }
  int field_dof(Component c, int mode) const { return index(c) * field_modes() + mode; }
  int test_dof(Component c, int mode) const { return index(c) * test_modes() + mode; }
  int trace_dof(int side, Component c) const { return num_field_dofs() + side * kNumComponents + index(c); }
};

ElementLayout element_layout(const DiscretizationConfig& disc);

/// b(trial, test) on element (a, b): rows are test dofs, columns trial dofs.
Eigen::MatrixXd element_b_matrix(const ArchParameters& params, double a, double b,
                                 const DiscretizationConfig& disc);

/// Broken H1 inner product, block-diagonal over the six test components.
Eigen::MatrixXd gram_standard(const DiscretizationConfig& disc, double a, double b);

/// Scaled graph norm: six adjoint terms plus tau_num times the L2 terms.
Eigen::MatrixXd gram_graph(const ArchParameters& params, const DiscretizationConfig& disc, double a,
                           double b);

/// Gram matrix of the six adjoint operator terms alone (third term per
/// `disc.third_term`), without the tau_num L2 part.
Eigen::MatrixXd gram_graph_operator_terms(const ArchParameters& params, const DiscretizationConfig& disc,
                                          double a, double b);

/// Block L2 mass matrix of the test space.
Eigen::MatrixXd test_mass(const DiscretizationConfig& disc, double a, double b);

/// Gram matrix of the configured test norm.
Eigen::MatrixXd test_gram(const ArchParameters& params, const DiscretizationConfig& disc, double a,
                          double b);

/// (f_u, du) + (f_w, dw) on element (a, b); zero rows for the stress tests.
Eigen::VectorXd element_load(const LoadSpec& load, const DiscretizationConfig& disc, double a, double b);

struct ElementSystem {
  Eigen::MatrixXd B;
  Eigen::MatrixXd G;
  Eigen::VectorXd l;
  int num_field_dofs = 0;
};

ElementSystem element_system(const ArchParameters& params, const LoadSpec& load,
                             const DiscretizationConfig& disc, double a, double b);

/// B^T G^{-1} B over all trial dofs of the element.
Eigen::MatrixXd normal_matrix(const ElementSystem& es);

/// Optimal test function coefficients G^{-1} B u for a trial vector u.
Eigen::VectorXd optimal_test_function(const ElementSystem& es, const Eigen::VectorXd& trial);

class InsufficientEnrichment : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using TraceVector = Eigen::Matrix<double, ElementLayout::kTraceDofs, 1>;
using TraceMatrix = Eigen::Matrix<double, ElementLayout::kTraceDofs, ElementLayout::kTraceDofs>;

/// Element after elimination of its field dofs from the normal equations.
struct CondensedElement {
  TraceMatrix schur;
  TraceVector rhs;

  // Recovery data. With G = L L^T, W = L^{-1} [B_f B_t] = [Q R, W_t] and
  // P = I - Q Q^T: fields = R^{-1} (Q^T w - Q^T W_t t), residual = P w - P W_t t.
  Eigen::MatrixXd r_factor;
  Eigen::VectorXd qt_load;
  Eigen::MatrixXd qt_trace;
  Eigen::MatrixXd projected_trace;
  Eigen::VectorXd projected_load;

  Eigen::VectorXd recover_fields(const TraceVector& traces) const;
  /// sqrt(r^T G^{-1} r) with r = l - B u for the recovered element solution.
  double residual_norm(const TraceVector& traces) const;
};

/// Throws InsufficientEnrichment when the field block of the whitened
/// operator is rank deficient, std::runtime_error when G is not SPD.
CondensedElement condense(const ElementSystem& es);

/// Global trace dof of a component at a node.
constexpr int global_trace_dof(int node, Component c) { return kNumComponents * node + index(c); }

struct GlobalSystem {
  int num_nodes = 0;
  /// Condensed matrix over the free trace dofs, half-bandwidth <= 11.
  SymmetricBandMatrix matrix;
  Eigen::VectorXd rhs;
  /// Full trace index of each free dof, increasing.
  std::vector<int> free_dofs;
  std::vector<int> essential_dofs;
  std::vector<double> essential_values;
  std::vector<CondensedElement> elements;
  StabilityReport stability;
  std::vector<std::string> warnings;

  int num_trace_dofs() const { return kNumComponents * num_nodes; }
  int num_free() const { return static_cast<int>(free_dofs.size()); }
};

/// Condenses every element, sums the trace blocks in element order, applies
/// essential traces by elimination and endpoint point loads per
/// `config.point_load_mode`. Uncovered BC codes only add a warning.
GlobalSystem assemble_global(const ArchConfig& config, const Mesh& mesh, const DiscretizationConfig& disc,
                             int threads = 1);

}  // namespace archdpg
