#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hrlab/common.hpp"
#include "hrlab/constants.hpp"
#include "hrlab/frames.hpp"
#include "hrlab/montecarlo.hpp"

// Inequality verdicts: weighted Hardy chains, the auxiliary interpolation
// inequality, Rellich checks, sharpness sweeps along the extremal family
// with asymptotic extrapolation, Euler-Lagrange residuals for the
// maximizing profiles, and harmonicity audits of the fundamental profiles.

namespace hrlab::verify {

enum class Inequality { hardy, rellich };

struct McSettings {
  long n = 400000;
  std::uint64_t seed = 1;
};

// A two- or three-term integral inequality evaluated for one test function.
//
// Radial path (test functions carrying a radial profile): the integrals are
// reduced by the co-area formula to 1-D integrals and reported WITHOUT the
// common surface factor Q*lambda_p, which cancels from every comparison;
// standard errors are then quadrature error bounds, not statistical.
// MC path: the integrals are estimated from common sample points, so
// differences and quotients carry covariance-aware standard errors.
struct ChainReport {
  mc::Estimate lhs;                // sharp constant times the |u|^p-weight integral
  std::optional<mc::Estimate> mid; // directional middle term (Hardy chain only)
  mc::Estimate rhs;                // gradient-side (or operator-side) integral
  double sharp_constant = 0.0;
  double quotient = 0.0;           // rhs integral / |u|^p-weight integral
  double quotient_std_error = 0.0;
  bool radial_path = false;
  bool chain_ordered = false;      // lhs <= (mid <=) rhs within 3 combined sigma
  bool quotient_above = false;     // quotient >= sharp_constant - 3 sigma
  bool pass() const { return chain_ordered && quotient_above; }
};

// c_sharp * int |u|^p d^{-p theta} |grad_L d|^p
//   <= int |grad_L u . grad_L d|^p d^{-p(theta-1)} |grad_L d|^{-p}
//   <= int |grad_L u|^p d^{-p(theta-1)}.
// For gauge-radial u the two right-hand integrands coincide identically.
ChainReport hardy_chain(const frames::Geometry& geo,
                        const constants::InequalityParams& params,
                        const frames::TestFunction& u, const McSettings& mc);

// int |u|^{p-2} |grad_L u|^2 d^{-(p theta + 2p - 2)}
//   >= c_aux * int |u|^p d^{-p(theta+2)} |grad_L d|^2.
ChainReport auxiliary_hardy_check(const frames::Geometry& geo,
                                  const constants::InequalityParams& params,
                                  const frames::TestFunction& u,
                                  const McSettings& mc);

// int |L u|^p d^{-p theta} |grad_L d|^{-2(p-1)}
//   >= c_rellich * int |u|^p d^{-p(theta+2)} |grad_L d|^2.
// Throws ConfigError (with the named clauses) when the parameters are
// inadmissible for the frame -- before any quadrature.
ChainReport rellich_check(const frames::Geometry& geo,
                          const constants::InequalityParams& params,
                          const frames::TestFunction& u, const McSettings& mc);

struct SweepPoint {
  double eps = 0.0;
  double L = 0.0;         // -ln(4 eps^2)
  double quotient = 0.0;  // Rayleigh quotient of u_eps
  double std_error = 0.0; // quadrature error bound on the quotient
};

struct FitModel {
  double c = 0.0;  // the limit constant
  double a = 0.0;
  double b = 0.0;  // R(L) = (c L + a) / (L + b)
};

struct SweepReport {
  Inequality which = Inequality::hardy;
  std::vector<SweepPoint> points;
  FitModel fit;
  double fitted_constant = 0.0;  // = fit.c
  double sharp_constant = 0.0;
  bool monotone_decreasing = false;
  bool bounded_below = false;  // every quotient >= sharp constant (tiny slack)
};

// Rayleigh quotients of the extremal family u_eps = d^a g_eps(d) over a
// decreasing eps grid (>= 4 points), evaluated on the radial path with the
// plateau in closed form, then fitted to R = (cL + a)/(L + b), L = -ln(4
// eps^2).  For these profiles the model is exact up to quadrature error, so
// the fitted c reproduces the sharp constant.
SweepReport sharpness_sweep(const frames::Geometry& geo,
                            const constants::InequalityParams& params,
                            Inequality which,
                            const std::vector<double>& eps_grid);

// Pointwise first-order (Hardy) or second-order (Rellich) optimality
// residual of u = d^a at x, with a the theorem's extremal exponent unless
// overridden.  Zero (to rounding) exactly for the extremal exponent.
// Throws NumericalError at degenerate points.
double euler_lagrange_residual(const frames::Geometry& geo,
                               const constants::InequalityParams& params,
                               Inequality which, const Vec& x,
                               std::optional<double> exponent_override =
                                   std::nullopt);

struct HarmonicityReport {
  struct Row {
    double p = 0.0;
    double max_fundamental_residual = 0.0;  // max |L_p Gamma_p|
    double max_gauge_identity_rel = 0.0;    // max rel. |L_p d - (Q-1)|grad_L d|^p/d|
    long n_points = 0;
  };
  std::vector<Row> rows;
  bool pass(double tol_fundamental = 1e-5, double tol_gauge = 1e-6) const;
};

// Evaluates, at random non-degenerate points, the p-operator residual of
// the fundamental profile (d^{(p-Q)/(p-1)}, or -ln d when p = Q) and the
// relative defect of the gauge identity L_p d = (Q-1)|grad_L d|^p / d,
// always through the generic divergence-form assembly.
HarmonicityReport harmonicity_audit(const frames::Geometry& geo,
                                    const std::vector<double>& p_list,
                                    int n_points, std::uint64_t seed);

}  // namespace hrlab::verify
