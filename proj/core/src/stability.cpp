#include "archdpg/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace archdpg {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool code_in(const std::string& code, std::initializer_list<const char*> set) {
  return std::any_of(set.begin(), set.end(), [&](const char* c) { return code == c; });
}
}  // namespace

double curvature_constant_n(double lambda) {
  const double t = 1.0 / lambda + lambda;
  return lambda * lambda + t * t;
}

double curvature_constant_q(double lambda) {
  const double s = std::abs(std::sin(lambda));
  const double den = lambda - s;
  if (!(den > 0.0)) return kInf;
  return (lambda + s) / den;
}

double curvature_constant_q0(double lambda) {
  const double s2 = std::sin(2.0 * lambda);
  return (2.0 * lambda - s2) / (2.0 * lambda + s2);
}

std::string_view regime_label(StabilityRegime regime) {
  switch (regime) {
    case StabilityRegime::CoveredCase1: return "covered-case-1";
    case StabilityRegime::CoveredSdDs: return "covered-sd-ds";
    case StabilityRegime::CoveredCdDc: return "covered-cd-dc";
    case StabilityRegime::CoveredUnit: return "covered-unit";
    case StabilityRegime::Uncovered: return "uncovered";
  }
  return "uncovered";
}

StabilityRegime regime_of(const BcPair& bc) {
  const std::string code = bc.code();
  if (code_in(code, {"cc", "cp", "pc", "cs", "sc", "ps", "sp"})) return StabilityRegime::CoveredCase1;
  if (code_in(code, {"sd", "ds"})) return StabilityRegime::CoveredSdDs;
  if (code_in(code, {"cd", "dc"})) return StabilityRegime::CoveredCdDc;
  if (code_in(code, {"cr", "rc", "cf", "fc", "pr", "rp"})) return StabilityRegime::CoveredUnit;
  return StabilityRegime::Uncovered;
}

CoercivityWeights coercivity_weights(const ArchParameters& params) {
  const double e2 = params.epsilon() * params.epsilon();
  const double cn = curvature_constant_n(params.lambda());
  const double cq = curvature_constant_q(params.lambda());
  return {std::max(e2, 1.0 / cn), std::max(params.mu() * e2, 1.0 / (cq * cn))};
}

StabilityReport stability_constants(const ArchParameters& params, const BcPair& bc) {
  const double lambda = params.lambda();
  StabilityReport r;
  r.c_n = curvature_constant_n(lambda);
  r.c_q = curvature_constant_q(lambda);
  r.c_q0 = curvature_constant_q0(lambda);
  r.regime = regime_of(bc);

  const double eps = params.epsilon();
  const double inv_e2 = 1.0 / (eps * eps);
  // mu = 0: mu^-1 eps^-2 is +inf and the min picks the curvature branch.
  const double inv_mu_e2 = params.mu() > 0.0 ? inv_e2 / params.mu() : kInf;

  switch (r.regime) {
    case StabilityRegime::CoveredCase1:
      r.c_stab = std::max({std::min(inv_e2, r.c_n), std::min(inv_mu_e2, r.c_q * r.c_n), 1.0});
      break;
    case StabilityRegime::CoveredSdDs: {
      const double c = std::cos(lambda);
      const double base = std::max(std::min(inv_e2, r.c_q0 * r.c_n), 1.0);
      r.c_stab = c == 0.0 ? kInf : base / (c * c);
      break;
    }
    case StabilityRegime::CoveredCdDc:
      r.c_stab = std::max(std::min(inv_e2, r.c_q0 * r.c_n), 1.0);
      break;
    case StabilityRegime::CoveredUnit:
      r.c_stab = 1.0;
      break;
    case StabilityRegime::Uncovered:
      break;
  }
  r.flagged = r.c_stab && !std::isfinite(*r.c_stab);
  return r;
}

}  // namespace archdpg
