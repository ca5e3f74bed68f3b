#include "hrlab/constants.hpp"

#include <cmath>
#include <cstdio>

namespace hrlab::constants {

namespace {

// The two parameterizations are algebraically identical; a mismatch beyond
// rounding means an algebra slip in one of them, which we want loud.
void cross_assert(double beta_form, double q_form, const char* what) {
  const double scale = std::max({1.0, std::abs(beta_form), std::abs(q_form)});
  if (!(std::abs(beta_form - q_form) <= 1e-12 * scale))
    throw NumericalError(std::string(what) +
                         ": parameterization cross-check failed");
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

}  // namespace

InequalityParams InequalityParams::make(double p, double theta, double Q) {
  require(is_finite(p) && p >= 2.0, "params: p must be >= 2");
  require(is_finite(theta), "params: theta must be finite");
  require(is_finite(Q) && Q >= 1.0, "params: Q must be >= 1");
  return InequalityParams{p, theta, Q};
}

double hardy_sharp_constant(const InequalityParams& params) {
  const double p = params.p, theta = params.theta, Q = params.Q;
  const double beta = params.hardy_beta();
  const double beta_form =
      abs_pow(p * (theta - 1.0) + beta * (p - 1.0), p) / std::pow(p, p);
  const double q_form = abs_pow(Q - p * theta, p) / std::pow(p, p);
  cross_assert(beta_form, q_form, "hardy constant");
  return q_form;
}

double rellich_product_factor(const InequalityParams& params) {
  const double p = params.p, theta = params.theta, Q = params.Q;
  const double beta = params.rellich_beta();
  const double beta_form = (2.0 - beta - p * theta - 2.0 * p) *
                           (p * theta + 2.0 * p - 2.0 - beta * (p - 1.0)) /
                           (p * p);
  const double q_form =
      (Q - p * (theta + 2.0)) * (p * theta + Q * (p - 1.0)) / (p * p);
  cross_assert(beta_form, q_form, "rellich product factor");
  return q_form;
}

double rellich_sharp_constant(const InequalityParams& params) {
  const double factor = rellich_product_factor(params);
  require(factor >= 0.0,
          "rellich constant: product condition "
          "(Q - p(theta+2))(p theta + Q(p-1)) >= 0 is violated");
  return abs_pow(factor, params.p);
}

double auxiliary_hardy_constant(const InequalityParams& params) {
  const double p = params.p, theta = params.theta, Q = params.Q;
  const double beta = params.rellich_beta();
  const double b1 = (p * theta + 2.0 * p - 2.0 + beta) / p;
  const double q1 = (Q - p * (theta + 2.0)) / p;
  cross_assert(b1 * b1, q1 * q1, "auxiliary hardy constant");
  return q1 * q1;
}

ExtremalExponents extremal_exponents(const InequalityParams& params) {
  const double p = params.p, theta = params.theta, Q = params.Q;
  const double hardy_q = (p * theta - Q) / p;
  const double hardy_b =
      (p * (theta - 1.0) + params.hardy_beta() * (p - 1.0)) / p;
  cross_assert(hardy_b, hardy_q, "hardy extremal exponent");
  const double rellich_q = (p * (theta + 2.0) - Q) / p;
  const double rellich_b =
      (p * theta + 2.0 * p - 2.0 + params.rellich_beta()) / p;
  cross_assert(rellich_b, rellich_q, "rellich extremal exponent");
  return ExtremalExponents{hardy_q, rellich_q};
}

std::vector<std::string> critical_notes(const InequalityParams& params) {
  std::vector<std::string> notes;
  const double p = params.p, theta = params.theta, Q = params.Q;
  if (std::abs(Q - p * theta) < 1e-12)
    notes.push_back("hardy constant vanishes: theta = Q/p (critical weight)");
  if (std::abs(Q - p * (theta + 2.0)) < 1e-12)
    notes.push_back(
        "rellich and auxiliary constants vanish: theta = Q/p - 2");
  if (std::abs(p * theta + Q * (p - 1.0)) < 1e-12)
    notes.push_back("rellich constant vanishes: p theta + Q(p-1) = 0");
  if (std::abs(p - Q) < 1e-12)
    notes.push_back(
        "p = Q: the power-type fundamental solution degenerates to the "
        "logarithm");
  return notes;
}

std::string AdmissibilityReport::reason() const {
  if (failed.empty()) return "admissible";
  std::string out;
  for (size_t i = 0; i < failed.size(); ++i) {
    if (i) out += "; ";
    out += failed[i];
  }
  return out;
}

AdmissibilityReport rellich_admissible(const InequalityParams& params,
                                       const frames::FrameSpec& frame) {
  AdmissibilityReport rep;
  const double p = params.p, Q = params.Q;

  const double factor = rellich_product_factor(params);
  if (factor < 0.0)
    rep.failed.push_back(
        "product condition (Q - p(theta+2))(p theta + Q(p-1)) >= 0");
  else if (factor == 0.0)
    rep.notes.push_back(
        "product condition holds with equality: the constant vanishes");

  switch (frame.kind) {
    case frames::FrameKind::euclidean:
      break;  // |grad d| == 1: no degenerate set, no extra condition
    case frames::FrameKind::heisenberg:
      if (!(Q > 2.0 * p)) rep.failed.push_back(fmt("Q > 2p (Q = %g, 2p = %g)", Q, 2.0 * p));
      break;
    case frames::FrameKind::heisenberg_greiner: {
      const double g = frame.gamma;
      const double bound = 2.0 * p * (2.0 * g - 1.0) + 4.0 * (1.0 - g);
      if (!(Q > bound))
        rep.failed.push_back(
            fmt("Q > 2p(2 gamma - 1) + 4(1 - gamma) (Q = %g, bound = %g)", Q,
                bound));
      else if (g > 1.0) {
        // First-principles integrability of the dual weight near |z| = 0
        // needs the slightly stronger Q > 2p(2 gamma - 1) + 2(1 - gamma);
        // between the two bounds the verdict is kept but flagged.
        const double strict = 2.0 * p * (2.0 * g - 1.0) + 2.0 * (1.0 - g);
        if (!(Q > strict))
          rep.notes.push_back(
              "dual weight is only marginally integrable near the degenerate "
              "set for this gamma; numerical verdicts near this boundary may "
              "be unstable");
      }
      break;
    }
    case frames::FrameKind::baouendi_grushin: {
      const double g = frame.gamma;
      if (frame.k >= 1 && g > 0.0) {
        const double bound = 2.0 * g * (p - 1.0) + (1.0 + g) * frame.k;
        if (!(Q > bound))
          rep.failed.push_back(
              fmt("Q > 2 gamma (p-1) + (1+gamma) k (Q = %g, bound = %g)", Q,
                  bound));
      }
      break;
    }
  }

  rep.admissible = rep.failed.empty();
  return rep;
}

}  // namespace hrlab::constants
