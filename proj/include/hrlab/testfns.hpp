#pragma once

#include <cstdint>

#include "hrlab/common.hpp"
#include "hrlab/frames.hpp"

// Smooth compactly-supported test functions: the exp-based smooth step, the
// two-sided plateau cut-off g_eps living on [eps, 1/eps], its six moment
// integrals, gauge-radial extremal profiles r^a * g_eps(r), and seeded random
// bump functions with analytic derivatives.

namespace hrlab::testfns {

// The standard C-infinity step s(t) = e(t) / (e(t) + e(1-t)) with
// e(t) = exp(-1/t) for t > 0.  s == 0 for t <= 0, s == 1 for t >= 1,
// s(1/2) = 1/2, s(1-t) = 1 - s(t).
//
// value/d1/d2 clamp to the constant branches for t < 0.01 and t > 0.99,
// where s differs from the constant by less than 1e-40: this avoids the
// 0/0 forms of the quotient rule at the endpoints at no numerical cost.
namespace smoothstep {
double value(double t);
double d1(double t);
double d2(double t);
// Suprema of |s'| and |s''| over (0,1), computed once on a dense grid.
double sup_d1();
double sup_d2();
}  // namespace smoothstep

// Plateau cut-off:
//   g(r) = 0               r <= eps        or r >= 1/eps
//        = s(r/eps - 1)    eps <= r <= 2 eps
//        = 1               2 eps <= r <= 1/(2 eps)
//        = s(2 - 2 eps r)  1/(2 eps) <= r <= 1/eps
// with 0 <= g <= 1 and the scaled derivative bounds
//   |g'| <= c/eps,  |g''| <= c/eps^2    on the rising band,
//   |g'| <= c*eps,  |g''| <= c*eps^2    on the falling band,
// where c = derivative_bound_constant() is a single eps-independent constant.
class Cutoff {
 public:
  explicit Cutoff(double eps);  // requires 0 < eps < 1/2

  double eps() const { return eps_; }
  double derivative_bound_constant() const { return c_; }

  double value(double r) const;
  double d1(double r) const;
  double d2(double r) const;

  // The same three maps packaged as a radial profile.
  frames::RadialProfile profile() const;

 private:
  double eps_;
  double c_;
};

// The six moment integrals of the cut-off family over (0, infinity):
//   log_moment          int r^{-1} g^p dr        (plateau part -ln(4 eps^2))
//   flux_moment         int g^{p-1} |g'| dr      (= 2/p exactly)
//   gradient_moment     int r^{p-1} |g'|^p dr
//   curvature_moment    int r g^{p-1} |g''| dr
//   mixed_moment        int r^p |g'|^{p-1} |g''| dr
//   curvature_p_moment  int r^{2p-1} |g''|^p dr
// The substitutions r = eps(1+u) and r = (2-u)/(2 eps) make every entry
// except the plateau term of log_moment independent of eps; the five
// non-log moments are therefore bounded uniformly in eps.
struct CutoffMoments {
  double log_moment;
  double flux_moment;
  double gradient_moment;
  double curvature_moment;
  double mixed_moment;
  double curvature_p_moment;
};

// Evaluates the six integrals: the plateau contributes only to log_moment
// (in closed form); the two transition bands are integrated adaptively.
CutoffMoments cutoff_moments(double eps, double p);

// Gauge-radial profile phi(r) = r^a * g_eps(r) as a full test function:
// analytic gradient and Hessian via the gauge chain rule, radial profile
// attached, support annulus (eps, 1/eps).
frames::TestFunction make_extremal(const frames::Geometry& geo, double a,
                                   double eps);

// Seed-deterministic smooth bump supported in the gauge annulus
// (r_in, r_out): a smooth radial window times (a0 + amp * exp(-kappa
// |x - mu|^2)) * (1 + linear tilt), with the Gaussian centre mu drawn away
// from the degenerate set.  All derivatives analytic.
frames::TestFunction make_random_bump(const frames::Geometry& geo,
                                      std::uint64_t seed, double r_in,
                                      double r_out);

}  // namespace hrlab::testfns
