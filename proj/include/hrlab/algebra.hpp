#pragma once

#include "hrlab/common.hpp"

namespace hrlab::algebra {

// Pointwise weight w(p,f,g) >= 0 defined by
//   w^2 = p(p-1) * Integral_0^1 s |s g + (1-s) f|^(p-2) ds,   p >= 2.
//
// The weight turns the scalar power identity
//   w(p,f,g)^2 (f-g)^2 = |f|^p + (p-1)|g|^p - p |g|^(p-2) g f
// into an exact statement; w == 1 when p = 2, and w = 0 iff f = g = 0.
//
// Closed forms are used when p = 2 (w = 1) and when f = 0 or g = 0
// (w = (p-1)^(1/2) |g|^((p-2)/2) resp. |f|^((p-2)/2)); otherwise the integral
// is evaluated by adaptive quadrature, split at the interior zero
// s* = f/(f-g) of the linear argument so each half has a one-sided
// |s - s*|^(p-2) endpoint factor (a kink for p < 4).
//
// Throws ConfigError for p < 2 or non-finite inputs.
double pointwise_weight_w(double p, double f, double g);

// Right-hand side of the power identity:
//   |f|^p + (p-1)|g|^p - p |g|^(p-2) g f.
// Nonnegative for all (f, g) with p >= 2.
double identity_rhs(double p, double f, double g);

// | w(p,f,g)^2 (f-g)^2 - identity_rhs(p,f,g) |, the pointwise defect of the
// identity as evaluated through the quadrature of pointwise_weight_w.
double identity_residual(double p, double f, double g);

// Numerical estimate of
//   c_p = sup_x (|x+1|^p - |x|^p) / (|x|^(p-1) + 1),
// the sharp constant of the two-term bound
//   |a+b|^p <= |a|^p + c_p (|a|^(p-1) |b| + |b|^p).
//
// Grid search over x = tan(pi t / 2), t in (-1, 1), refined by golden-section
// around the best cell, combined with the analytic limits f(x) -> +-p as
// x -> +-inf (for p = 2 the supremum equals the limit 2 and is not attained;
// for p > 2 it is attained at finite x and exceeds p).
double cp_estimate(double p, int grid_points = 4001);

// Whether the three-term bound
//   |a+b+c|^p <= |a|^p + cp |a|^(p-1)|b| + cp |a|^(p-1)|c|
//              + cp |b|^p + cp^2 |b|^(p-1)|c| + cp^2 |c|^p
// holds at (a, b, c) with the given cp (allowing a relative rounding slack).
// With c = 0 this reduces to the two-term bound.
bool triple_power_bound_check(double p, double cp, double a, double b, double c);

}  // namespace hrlab::algebra
