#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "archdpg/expression.hpp"

namespace archdpg {

/// Dimensionless parameters of the scaled arch system.
class ArchParameters {
 public:
  /// Throws std::invalid_argument unless epsilon > 0, mu >= 0, 0 < lambda < 2*pi.
  ArchParameters(double epsilon, double mu, double lambda);

  double epsilon() const { return epsilon_; }
  double mu() const { return mu_; }
  double lambda() const { return lambda_; }

  bool operator==(const ArchParameters&) const = default;

 private:
  double epsilon_;
  double mu_;
  double lambda_;
};

/// Unknown ordering used throughout: displacements first, then stress resultants.
enum class Component : int { U = 0, W = 1, Theta = 2, N = 3, Q = 4, M = 5 };

inline constexpr int kNumComponents = 6;
inline constexpr std::array<Component, kNumComponents> kAllComponents = {
    Component::U, Component::W, Component::Theta, Component::N, Component::Q, Component::M};

constexpr int index(Component c) { return static_cast<int>(c); }
std::string_view component_name(Component c);

/// Test component paired with a trace component in the duality term:
/// u-n, w-q, theta-m (both ways).
constexpr Component dual_component(Component c) {
  return static_cast<Component>((index(c) + 3) % kNumComponents);
}

/// Sign picked up by each field under the reflection x -> 1 - x.
constexpr double mirror_sign(Component c) {
  return (c == Component::U || c == Component::Theta || c == Component::Q) ? -1.0 : 1.0;
}

enum class BoundaryKind { Clamped, Pinned, Sliding, AxiallyFixed, RotationalRestraint, Free };

/// The three trace components prescribed by a support type.
std::array<Component, 3> essential_components(BoundaryKind kind);
bool is_essential(BoundaryKind kind, Component c);
char boundary_letter(BoundaryKind kind);
BoundaryKind boundary_from_letter(char letter);

/// Support types at x = 0 (left) and x = 1 (right), e.g. "cf".
struct BcPair {
  BoundaryKind left = BoundaryKind::Clamped;
  BoundaryKind right = BoundaryKind::Clamped;

  /// Throws std::invalid_argument for anything but two letters from "cpsdrf".
  static BcPair parse(std::string_view code);
  std::string code() const;
  BoundaryKind at(int endpoint) const { return endpoint == 0 ? left : right; }

  bool operator==(const BcPair&) const = default;
};

/// Dirac load concentrated at an endpoint, acting on u, w or theta.
struct PointLoad {
  int endpoint = 0;
  Component component = Component::W;
  double magnitude = 0.0;

  bool operator==(const PointLoad&) const = default;
};

struct LoadSpec {
  Expr f_u;
  Expr f_w;
  std::vector<PointLoad> point_loads;

  /// Validates position (must be exactly 0 or 1) and component (u, w, theta).
  void add_point_load(double position, Component component, double magnitude);

  bool operator==(const LoadSpec&) const = default;
};

/// Prescribed value of an essential trace component at an endpoint.
struct TraceValue {
  int endpoint = 0;
  Component component = Component::U;
  double value = 0.0;

  bool operator==(const TraceValue&) const = default;
};

/// How endpoint point loads enter the DPG system.
enum class PointLoadMode {
  Functional,      // P * test value added to the load functional
  EssentialTrace,  // paired stress trace prescribed as -P (x=0) or +P (x=1)
};

struct ArchConfig {
  ArchParameters params{1.0, 1.0, 1.0};
  BcPair bc;
  LoadSpec load;
  std::vector<TraceValue> boundary_values;
  PointLoadMode point_load_mode = PointLoadMode::Functional;

  bool operator==(const ArchConfig&) const = default;
};

/// Stress trace paired with a point-load component (u -> n, w -> q, theta -> m).
constexpr Component point_load_trace(Component c) { return dual_component(c); }

/// Essential trace value implied by a point load under the virtual-work sign
/// convention: -P at x = 0, +P at x = 1.
constexpr double point_load_trace_value(const PointLoad& load) {
  return load.endpoint == 0 ? -load.magnitude : load.magnitude;
}

/// All essential trace values of a config at one endpoint, including the
/// contributions of point loads whose paired stress trace is essential there.
/// Point loads on a non-essential stress trace are not included.
std::array<double, kNumComponents> essential_values(const ArchConfig& config, int endpoint,
                                                    bool include_point_loads);

/// The problem reflected by x -> 1 - x. An exact involution.
ArchConfig mirror_problem(const ArchConfig& config);

}  // namespace archdpg
