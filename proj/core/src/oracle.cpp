#include "archdpg/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "archdpg/quadrature.hpp"
#include "archdpg/stability.hpp"

namespace archdpg {

namespace {

constexpr int kMaxStages = 32;
constexpr double kConditionWarning = 1e10;
constexpr double kRichardsonTolerance = 1e-9;
constexpr int kResidualSamples = 200;
// Fields below this fraction of the largest norm are compared against the floor.
constexpr double kNegligibleField = 1e-6;
constexpr char kCacheMagic[] = "# archdpg-oracle v1";

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Vector6 = Eigen::Matrix<double, 6, 1>;

Matrix6 system_matrix(const ArchParameters& p) {
  const double e2 = p.epsilon() * p.epsilon();
  const double lam = p.lambda();
  Matrix6 a = Matrix6::Zero();
  a(0, 3) = e2;
  a(0, 1) = -lam;
  a(1, 4) = p.mu() * e2;
  a(1, 0) = lam;
  a(1, 2) = 1.0;
  a(2, 5) = 1.0;
  a(3, 4) = -lam;
  a(4, 3) = lam;
  a(5, 4) = -1.0;
  return a;
}

Vector6 forcing(const LoadSpec& load, double x) {
  Vector6 f = Vector6::Zero();
  f(3) = -load.f_u(x);
  f(4) = -load.f_w(x);
  return f;
}

std::vector<double> lagrange_values(const std::vector<double>& c, double tau) {
  const int k = static_cast<int>(c.size());
  std::vector<double> l(k, 1.0);
  for (int i = 0; i < k; ++i)
    for (int m = 0; m < k; ++m)
      if (m != i) l[i] *= (tau - c[m]) / (c[i] - c[m]);
  return l;
}

// Integrals from 0 to tau of the Lagrange polynomials, exact by Gauss quadrature.
std::vector<double> lagrange_integrals(const std::vector<double>& c, const QuadratureRule& rule, double tau) {
  const int k = static_cast<int>(c.size());
  std::vector<double> beta(k, 0.0);
  for (int g = 0; g < rule.size(); ++g) {
    const double s = 0.5 * tau * (rule.points[g] + 1.0);
    const std::vector<double> l = lagrange_values(c, s);
    for (int i = 0; i < k; ++i) beta[i] += 0.5 * tau * rule.weights[g] * l[i];
  }
  return beta;
}

struct Collocation {
  std::vector<double> c;
  QuadratureRule rule;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
};

Collocation make_collocation(int stages) {
  Collocation col;
  col.rule = gauss_legendre(stages);
  for (double xi : col.rule.points) col.c.push_back(0.5 * (xi + 1.0));
  col.a.resize(stages, stages);
  for (int i = 0; i < stages; ++i) {
    const std::vector<double> beta = lagrange_integrals(col.c, col.rule, col.c[i]);
    for (int m = 0; m < stages; ++m) col.a(i, m) = beta[m];
  }
  const std::vector<double> beta1 = lagrange_integrals(col.c, col.rule, 1.0);
  col.b = Eigen::Map<const Eigen::VectorXd>(beta1.data(), stages);
  return col;
}

// Stage system (I - h a (x) A) K = (1 (x) A) y0 + F on one element of length h.
struct StageSolver {
  Collocation col;
  Matrix6 a_sys;
  double h;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;

  StageSolver(const ArchConfig& config, int elements, int stages)
      : col(make_collocation(stages)), a_sys(system_matrix(config.params)), h(1.0 / elements) {
    const int n = 6 * stages;
    Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < stages; ++i)
      for (int j = 0; j < stages; ++j) m.block<6, 6>(6 * i, 6 * j) -= h * col.a(i, j) * a_sys;
    lu.compute(m);
  }

  Eigen::VectorXd load_vector(const LoadSpec& load, int element) const {
    const int k = static_cast<int>(col.c.size());
    Eigen::VectorXd f(6 * k);
    for (int i = 0; i < k; ++i) f.segment<6>(6 * i) = forcing(load, (element + col.c[i]) * h);
    return f;
  }

  Eigen::VectorXd slopes(const Vector6& y0, const Eigen::VectorXd& load) const {
    const int k = static_cast<int>(col.c.size());
    Eigen::VectorXd rhs = load;
    const Vector6 ay = a_sys * y0;
    for (int i = 0; i < k; ++i) rhs.segment<6>(6 * i) += ay;
    return lu.solve(rhs);
  }

  // y1 = T y0 + c with T = I + h sum_i b_i P_i.
  Matrix6 transfer() const {
    const int k = static_cast<int>(col.c.size());
    Eigen::MatrixXd rhs(6 * k, 6);
    for (int i = 0; i < k; ++i) rhs.block<6, 6>(6 * i, 0) = a_sys;
    const Eigen::MatrixXd p = lu.solve(rhs);
    Matrix6 t = Matrix6::Identity();
    for (int i = 0; i < k; ++i) t += h * col.b(i) * p.block<6, 6>(6 * i, 0);
    return t;
  }

  Vector6 offset(const Eigen::VectorXd& load) const {
    const int k = static_cast<int>(col.c.size());
    const Eigen::VectorXd s = lu.solve(load);
    Vector6 c = Vector6::Zero();
    for (int i = 0; i < k; ++i) c += h * col.b(i) * s.segment<6>(6 * i);
    return c;
  }
};

std::vector<int> free_components(BoundaryKind kind) {
  std::vector<int> out;
  for (Component c : kAllComponents)
    if (!is_essential(kind, c)) out.push_back(index(c));
  return out;
}

double shooting_condition(const Matrix6& t, int elements, const BcPair& bc) {
  Matrix6 phi = Matrix6::Identity();
  for (int j = 0; j < elements; ++j) phi = t * phi;
  const std::vector<int> cols = free_components(bc.left);
  const auto rows = essential_components(bc.right);
  Eigen::Matrix3d s;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) s(r, c) = phi(index(rows[r]), cols[c]);
  const Eigen::Vector3d sv = Eigen::JacobiSVD<Eigen::Matrix3d>(s).singularValues();
  return sv(2) > 0.0 ? sv(0) / sv(2) : std::numeric_limits<double>::infinity();
}

Eigen::MatrixXd solve_nodal(const ArchConfig& config, int elements, int stages, double* condition) {
  const StageSolver stage(config, elements, stages);
  const Matrix6 t = stage.transfer();
  if (condition) *condition = shooting_condition(t, elements, config.bc);

  const int n = 6 * (elements + 1);
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(6 + 42 * elements);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  int row = 0;
  const auto add_bc_rows = [&](int endpoint) {
    const std::array<double, kNumComponents> values = essential_values(config, endpoint, true);
    const int node = endpoint == 0 ? 0 : elements;
    for (Component c : essential_components(config.bc.at(endpoint))) {
      trip.emplace_back(row, 6 * node + index(c), 1.0);
      rhs(row++) = values[index(c)];
    }
  };
  add_bc_rows(0);
  for (int j = 0; j < elements; ++j) {
    const Vector6 c = stage.offset(stage.load_vector(config.load, j));
    for (int r = 0; r < 6; ++r) {
      trip.emplace_back(row, 6 * (j + 1) + r, 1.0);
      for (int s = 0; s < 6; ++s)
        if (t(r, s) != 0.0) trip.emplace_back(row, 6 * j + s, -t(r, s));
      rhs(row++) = c(r);
    }
  }
  add_bc_rows(1);

  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(trip.begin(), trip.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success)
    throw SolverError("collocation system for boundary code '" + config.bc.code() + "' is singular");
  const Eigen::VectorXd y = lu.solve(rhs);
  if (!y.allFinite())
    throw SolverError("collocation system for boundary code '" + config.bc.code() + "' produced non-finite values");
  return Eigen::Map<const Eigen::MatrixXd>(y.data(), 6, elements + 1);
}

double max_relative_change(const std::array<double, kNumComponents>& a,
                           const std::array<double, kNumComponents>& b) {
  double scale = 0.0;
  for (double v : b) scale = std::max(scale, v);
  double change = 0.0;
  for (int c = 0; c < kNumComponents; ++c) {
    const double denom = std::max(b[c], kNegligibleField * scale);
    if (denom > 0.0) change = std::max(change, std::abs(a[c] - b[c]) / denom);
  }
  return change;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void append_expr(std::string& out, const Expr& e) {
  out += '[';
  for (const ExprTerm& t : e.terms()) {
    out += '(';
    switch (t.kind) {
      case ExprTerm::Kind::Polynomial:
        out += "poly";
        for (double c : t.coefficients) out += ' ' + format_double(c);
        break;
      case ExprTerm::Kind::Cos:
      case ExprTerm::Kind::Sin:
        out += t.kind == ExprTerm::Kind::Cos ? "cos " : "sin ";
        out += format_double(t.amplitude) + ' ' + format_double(t.frequency) + ' ' + format_double(t.phase);
        break;
    }
    if (t.reflected) out += " refl";
    out += ')';
  }
  out += ']';
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::optional<Eigen::MatrixXd> read_cache(const std::filesystem::path& file, const std::string& key,
                                          int elements, double& richardson, double& condition) {
  std::ifstream in(file);
  if (!in) return std::nullopt;
  std::string line;
  if (!std::getline(in, line) || line != kCacheMagic) return std::nullopt;
  if (!std::getline(in, line) || line != "# config " + key) return std::nullopt;
  if (!std::getline(in, line) || line.rfind("# richardson ", 0) != 0) return std::nullopt;
  {
    std::istringstream ss(line.substr(13));
    std::string r, c;
    ss >> r >> c;
    richardson = std::strtod(r.c_str(), nullptr);
    condition = std::strtod(c.c_str(), nullptr);
  }
  if (!std::getline(in, line) || line != "x,u,w,theta,n,q,m") return std::nullopt;
  Eigen::MatrixXd nodal(6, elements + 1);
  for (int j = 0; j <= elements; ++j) {
    if (!std::getline(in, line)) return std::nullopt;
    const char* p = line.c_str();
    char* end = nullptr;
    std::strtod(p, &end);
    for (int r = 0; r < 6; ++r) {
      if (*end != ',') return std::nullopt;
      p = end + 1;
      nodal(r, j) = std::strtod(p, &end);
      if (end == p) return std::nullopt;
    }
  }
  return nodal;
}

void write_cache(const std::filesystem::path& file, const std::string& key, const ReferenceSolution& sol) {
  std::error_code ec;
  std::filesystem::create_directories(file.parent_path(), ec);
  static std::atomic<unsigned> counter{0};
  std::ostringstream tid;
  tid << std::this_thread::get_id();
  const std::filesystem::path tmp = file.string() + ".tmp." + tid.str() + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << kCacheMagic << '\n' << "# config " << key << '\n';
    out << "# richardson " << format_double(sol.richardson_change) << ' ' << format_double(sol.condition_estimate)
        << '\n';
    out << "x,u,w,theta,n,q,m\n";
    char buf[40];
    for (int j = 0; j <= sol.elements(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17e", static_cast<double>(j) / sol.elements());
      out << buf;
      for (int r = 0; r < 6; ++r) {
        std::snprintf(buf, sizeof buf, ",%.17e", sol.nodal()(r, j));
        out << buf;
      }
      out << '\n';
    }
    if (!out) {
      std::filesystem::remove(tmp, ec);
      return;
    }
  }
  std::filesystem::rename(tmp, file, ec);
  if (ec) std::filesystem::remove(tmp, ec);
}

}  // namespace

ReferenceSolution::ReferenceSolution(const ArchConfig& config, int elements, int stages, Eigen::MatrixXd nodal)
    : config_(config), elements_(elements), stages_(stages), nodal_(std::move(nodal)) {
  const StageSolver stage(config_, elements_, stages_);
  c_ = stage.col.c;
  rule_ = stage.col.rule;
  slopes_.resize(6 * stages_, elements_);
  for (int j = 0; j < elements_; ++j)
    slopes_.col(j) = stage.slopes(nodal_.col(j), stage.load_vector(config_.load, j));
}

int ReferenceSolution::locate(double x, double& tau) const {
  const double s = std::clamp(x, 0.0, 1.0) * elements_;
  const int j = std::clamp(static_cast<int>(std::floor(s)), 0, elements_ - 1);
  tau = s - j;
  return j;
}

std::array<double, kNumComponents> ReferenceSolution::evaluate(double x) const {
  double tau;
  const int j = locate(x, tau);
  const std::vector<double> beta = lagrange_integrals(c_, rule_, tau);
  Vector6 y = nodal_.col(j);
  const double h = 1.0 / elements_;
  for (int i = 0; i < stages_; ++i) y += h * beta[i] * slopes_.block<6, 1>(6 * i, j);
  std::array<double, kNumComponents> out;
  for (int r = 0; r < 6; ++r) out[r] = y(r);
  return out;
}

std::array<double, kNumComponents> ReferenceSolution::evaluate_derivative(double x) const {
  double tau;
  const int j = locate(x, tau);
  const std::vector<double> l = lagrange_values(c_, tau);
  Vector6 d = Vector6::Zero();
  for (int i = 0; i < stages_; ++i) d += l[i] * slopes_.block<6, 1>(6 * i, j);
  std::array<double, kNumComponents> out;
  for (int r = 0; r < 6; ++r) out[r] = d(r);
  return out;
}

std::array<double, kNumComponents> ReferenceSolution::residual(double x) const {
  const auto y = evaluate(x);
  const auto d = evaluate_derivative(x);
  const ArchParameters& p = config_.params;
  const double e2 = p.epsilon() * p.epsilon();
  const double lam = p.lambda();
  const double u = y[0], w = y[1], th = y[2], n = y[3], q = y[4], m = y[5];
  return {e2 * n - d[0] - lam * w,
          p.mu() * e2 * q - d[1] + lam * u + th,
          m - d[2],
          -d[3] - lam * q - config_.load.f_u(x),
          -d[4] + lam * n - config_.load.f_w(x),
          -d[5] - q};
}

std::array<double, kNumComponents> ReferenceSolution::l2_norms() const {
  const QuadratureRule rule = gauss_legendre(stages_ + 2);
  const double h = 1.0 / elements_;
  std::array<double, kNumComponents> sq{};
  for (int j = 0; j < elements_; ++j) {
    for (int g = 0; g < rule.size(); ++g) {
      const auto y = evaluate((j + 0.5 * (rule.points[g] + 1.0)) * h);
      for (int r = 0; r < 6; ++r) sq[r] += 0.5 * h * rule.weights[g] * y[r] * y[r];
    }
  }
  for (double& v : sq) v = std::sqrt(v);
  return sq;
}

double ReferenceSolution::residual_bound() const {
  const auto norms = l2_norms();
  const double scale = std::max(1.0, *std::max_element(norms.begin(), norms.end()));
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  double worst = 0.0;
  for (int i = 0; i < kResidualSamples; ++i) {
    const double x = std::fmod(0.5 + golden * i, 1.0);
    for (double r : residual(x)) worst = std::max(worst, std::abs(r));
  }
  return worst / scale;
}

FieldEvaluator ReferenceSolution::evaluator() const {
  return [self = *this](double x) { return self.evaluate(x); };
}

std::string oracle_canonical_key(const ArchConfig& config, int elements, int stages) {
  std::string key = "eps=" + format_double(config.params.epsilon()) + ";mu=" + format_double(config.params.mu()) +
                    ";lambda=" + format_double(config.params.lambda()) + ";bc=" + config.bc.code() + ";f_u=";
  append_expr(key, config.load.f_u);
  key += ";f_w=";
  append_expr(key, config.load.f_w);
  // Only the traces the oracle actually imposes enter the key.
  for (int endpoint = 0; endpoint < 2; ++endpoint) {
    const auto values = essential_values(config, endpoint, true);
    key += ";bv" + std::to_string(endpoint) + "=";
    for (Component c : essential_components(config.bc.at(endpoint)))
      key += std::string(component_name(c)) + ":" + format_double(values[index(c)]) + ",";
  }
  key += ";elements=" + std::to_string(elements) + ";stages=" + std::to_string(stages);
  return key;
}

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::optional<std::filesystem::path> oracle_cache_dir_from_env() {
  const char* v = std::getenv("ARCHDPG_CACHE");
  if (v == nullptr || *v == '\0') return std::nullopt;
  return std::filesystem::path(v);
}

ReferenceSolution solve_reference(const ArchConfig& config, const OracleOptions& options) {
  if (options.elements < 1) throw std::invalid_argument("oracle elements must be >= 1");
  if (options.stages < 1 || options.stages > kMaxStages)
    throw std::invalid_argument("oracle stages must lie in [1, " + std::to_string(kMaxStages) + "]");

  const std::string key = oracle_canonical_key(config, options.elements, options.stages);
  std::optional<std::filesystem::path> file;
  if (options.cache_dir) file = *options.cache_dir / (hex64(fnv1a64(key)) + ".csv");

  double richardson = std::numeric_limits<double>::quiet_NaN();
  double condition = std::numeric_limits<double>::quiet_NaN();
  std::optional<Eigen::MatrixXd> nodal;
  if (file) nodal = read_cache(*file, key, options.elements, richardson, condition);
  const bool cached = nodal.has_value() && (!options.richardson_check || !std::isnan(richardson));
  if (!cached) nodal = solve_nodal(config, options.elements, options.stages, &condition);

  ReferenceSolution sol(config, options.elements, options.stages, std::move(*nodal));
  sol.condition_estimate = condition;
  sol.from_cache = cached;
  if (cached) {
    sol.richardson_change = richardson;
  } else if (options.richardson_check) {
    const ReferenceSolution fine(config, 2 * options.elements, options.stages,
                                 solve_nodal(config, 2 * options.elements, options.stages, nullptr));
    sol.richardson_change = max_relative_change(sol.l2_norms(), fine.l2_norms());
  }

  const StabilityReport report = stability_constants(config.params, config.bc);
  if (!(condition <= kConditionWarning) || report.flagged) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "boundary code '%s' at lambda = %.6g is near-singular: shooting condition estimate %.3e",
                  config.bc.code().c_str(), config.params.lambda(), condition);
    sol.warnings.emplace_back(buf);
  }
  if (sol.richardson_change > kRichardsonTolerance) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "oracle Richardson check: field norms change by %.3e on doubling the mesh",
                  sol.richardson_change);
    sol.warnings.emplace_back(buf);
  }
  if (file && !cached) write_cache(*file, key, sol);
  return sol;
}

}  // namespace archdpg
