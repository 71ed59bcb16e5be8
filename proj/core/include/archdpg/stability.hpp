#pragma once

#include <optional>
#include <string_view>

#include "archdpg/arch.hpp"

namespace archdpg {

// Curvature-dependent constants. Each is evaluated directly from lambda.
double curvature_constant_n(double lambda);   // lambda^2 + (1/lambda + lambda)^2
double curvature_constant_q(double lambda);   // (lambda+|sin|)/(lambda-|sin|), +inf when degenerate
double curvature_constant_q0(double lambda);  // (2 lambda - sin 2lambda)/(2 lambda + sin 2lambda)

enum class StabilityRegime { CoveredCase1, CoveredSdDs, CoveredCdDc, CoveredUnit, Uncovered };

std::string_view regime_label(StabilityRegime regime);
StabilityRegime regime_of(const BcPair& bc);

struct StabilityReport {
  double c_n = 0.0;
  double c_q = 0.0;
  double c_q0 = 0.0;
  /// Empty for uncovered boundary codes; may be +infinity (then `flagged`).
  std::optional<double> c_stab;
  StabilityRegime regime = StabilityRegime::Uncovered;
  bool flagged = false;
};

/// Coercivity weights on the kernel for the general case:
/// alpha_n = max(eps^2, 1/C_n), alpha_q = max(mu eps^2, 1/(C_q C_n)).
struct CoercivityWeights {
  double alpha_n = 0.0;
  double alpha_q = 0.0;
};
CoercivityWeights coercivity_weights(const ArchParameters& params);

StabilityReport stability_constants(const ArchParameters& params, const BcPair& bc);

}  // namespace archdpg
