#pragma once

#include <string>
#include <vector>

#include "hrlab/common.hpp"
#include "hrlab/frames.hpp"

// Closed-form sharp constants, extremal exponents, and admissibility
// predicates for the weighted Hardy / Rellich inequalities on the built-in
// frames.  Every constant is evaluated in two algebraically equivalent
// parameterizations -- the beta-form (beta determined by the gauge identity)
// and the Q-form -- and the two evaluations are cross-asserted at 1e-12.

namespace hrlab::constants {

struct InequalityParams {
  double p = 2.0;     // integrability exponent, >= 2
  double theta = 0.0; // weight exponent
  double Q = 0.0;     // homogeneous dimension of the frame

  // beta implied by the gauge identity L_p d = (1-beta)(p-1)|grad_L d|^p / d:
  // Hardy's hypothesis uses (1-beta)(p-1) = Q-1, Rellich's uses 1-beta = Q-1.
  double hardy_beta() const { return (p - Q) / (p - 1.0); }
  double rellich_beta() const { return 2.0 - Q; }

  static InequalityParams make(double p, double theta, double Q);
};

// |Q - p theta|^p / p^p, cross-checked against the beta-form
// |p(theta-1) + beta(p-1)|^p / p^p.  Returns 0 at the critical weight
// theta = Q/p.
double hardy_sharp_constant(const InequalityParams& params);

// ((Q - p(theta+2)) (p theta + Q(p-1)) / p^2)^p, cross-checked against the
// beta-form with beta = 2 - Q.  Requires the product to be nonnegative
// (ConfigError otherwise); returns 0 on the admissibility boundary.
double rellich_sharp_constant(const InequalityParams& params);

// The sign-free product (Q - p(theta+2))(p theta + Q(p-1)) / p^2 whose p-th
// power is the Rellich constant; negative exactly when the product condition
// fails.
double rellich_product_factor(const InequalityParams& params);

// (Q - p(theta+2))^2 / p^2, cross-checked against (p theta + 2p - 2 + beta)^2
// / p^2 with beta = 2 - Q.
double auxiliary_hardy_constant(const InequalityParams& params);

struct ExtremalExponents {
  double hardy;    // (p theta - Q) / p
  double rellich;  // (p(theta+2) - Q) / p
};
ExtremalExponents extremal_exponents(const InequalityParams& params);

// Human-readable flags for parameter choices where a constant degenerates
// to zero (the formulas stay evaluable; verdicts become vacuous).
std::vector<std::string> critical_notes(const InequalityParams& params);

struct AdmissibilityReport {
  bool admissible = false;
  std::vector<std::string> failed;  // violated clauses, by name
  std::vector<std::string> notes;   // advisories that do not affect the verdict
  std::string reason() const;       // failed clauses joined, or "admissible"
};

// Conjunction of the product condition and the frame-specific integrability
// condition for the dual weight |grad_L d|^{-2(p-1)} near the degenerate set:
//   euclidean            -- no extra condition
//   heisenberg           -- Q > 2p
//   heisenberg_greiner   -- Q > 2p(2 gamma - 1) + 4(1 - gamma)
//   baouendi_grushin     -- Q > 2 gamma (p-1) + (1+gamma) k   (k >= 1, gamma > 0)
// Each violated clause is reported by name.
AdmissibilityReport rellich_admissible(const InequalityParams& params,
                                       const frames::FrameSpec& frame);

}  // namespace hrlab::constants
