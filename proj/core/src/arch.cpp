#include "archdpg/arch.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace archdpg {

ArchParameters::ArchParameters(double epsilon, double mu, double lambda)
    : epsilon_(epsilon), mu_(mu), lambda_(lambda) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("epsilon must be a positive finite number");
  if (!(mu >= 0.0) || !std::isfinite(mu))
    throw std::invalid_argument("mu must be a nonnegative finite number");
  if (!(lambda > 0.0 && lambda < 2.0 * std::numbers::pi))
    throw std::invalid_argument("lambda must lie in the open interval (0, 2*pi)");
}

std::string_view component_name(Component c) {
  switch (c) {
    case Component::U: return "u";
    case Component::W: return "w";
    case Component::Theta: return "theta";
    case Component::N: return "n";
    case Component::Q: return "q";
    case Component::M: return "m";
  }
  return "?";
}

std::array<Component, 3> essential_components(BoundaryKind kind) {
  using C = Component;
  switch (kind) {
    case BoundaryKind::Clamped: return {C::U, C::W, C::Theta};
    case BoundaryKind::Pinned: return {C::U, C::W, C::M};
    case BoundaryKind::Sliding: return {C::W, C::Theta, C::N};
    case BoundaryKind::AxiallyFixed: return {C::U, C::Q, C::M};
    case BoundaryKind::RotationalRestraint: return {C::Theta, C::N, C::Q};
    case BoundaryKind::Free: return {C::N, C::Q, C::M};
  }
  throw std::logic_error("unknown boundary kind");
}

bool is_essential(BoundaryKind kind, Component c) {
  for (Component e : essential_components(kind))
    if (e == c) return true;
  return false;
}

char boundary_letter(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::Clamped: return 'c';
    case BoundaryKind::Pinned: return 'p';
    case BoundaryKind::Sliding: return 's';
    case BoundaryKind::AxiallyFixed: return 'd';
    case BoundaryKind::RotationalRestraint: return 'r';
    case BoundaryKind::Free: return 'f';
  }
  return '?';
}

BoundaryKind boundary_from_letter(char letter) {
  switch (letter) {
    case 'c': return BoundaryKind::Clamped;
    case 'p': return BoundaryKind::Pinned;
    case 's': return BoundaryKind::Sliding;
    case 'd': return BoundaryKind::AxiallyFixed;
    case 'r': return BoundaryKind::RotationalRestraint;
    case 'f': return BoundaryKind::Free;
    default:
      throw std::invalid_argument(std::string("unknown boundary letter '") + letter +
                                  "' (expected one of c,p,s,d,r,f)");
  }
}

BcPair BcPair::parse(std::string_view code) {
  if (code.size() != 2)
    throw std::invalid_argument("boundary code must have exactly two letters, got '" +
                                std::string(code) + "'");
  return BcPair{boundary_from_letter(code[0]), boundary_from_letter(code[1])};
}

std::string BcPair::code() const {
  return std::string{boundary_letter(left), boundary_letter(right)};
}

void LoadSpec::add_point_load(double position, Component component, double magnitude) {
  if (position != 0.0 && position != 1.0)
    throw std::invalid_argument("point loads are only supported at the endpoints x=0 and x=1");
  if (component != Component::U && component != Component::W && component != Component::Theta)
    throw std::invalid_argument("point loads act on u, w or theta only");
  point_loads.push_back(PointLoad{position == 0.0 ? 0 : 1, component, magnitude});
}

std::array<double, kNumComponents> essential_values(const ArchConfig& config, int endpoint,
                                                    bool include_point_loads) {
  std::array<double, kNumComponents> values{};
  const BoundaryKind kind = config.bc.at(endpoint);
  for (const TraceValue& tv : config.boundary_values) {
    if (tv.endpoint != endpoint) continue;
    if (!is_essential(kind, tv.component))
      throw std::invalid_argument("boundary value for '" + std::string(component_name(tv.component)) +
                                  "' at x=" + std::to_string(endpoint) +
                                  " targets a non-essential trace of code '" + config.bc.code() + "'");
    values[index(tv.component)] += tv.value;
  }
  if (include_point_loads) {
    for (const PointLoad& pl : config.load.point_loads) {
      if (pl.endpoint != endpoint) continue;
      const Component trace = point_load_trace(pl.component);
      if (is_essential(kind, trace)) values[index(trace)] += point_load_trace_value(pl);
    }
  }
  return values;
}

ArchConfig mirror_problem(const ArchConfig& config) {
  ArchConfig m = config;
  m.bc = BcPair{config.bc.right, config.bc.left};
  m.load.f_u = -config.load.f_u.reflected();
  m.load.f_w = config.load.f_w.reflected();
  for (PointLoad& pl : m.load.point_loads) {
    pl.endpoint = 1 - pl.endpoint;
    pl.magnitude *= mirror_sign(pl.component);
  }
  for (TraceValue& tv : m.boundary_values) {
    tv.endpoint = 1 - tv.endpoint;
    tv.value *= mirror_sign(tv.component);
  }
  return m;
}

}  // namespace archdpg
