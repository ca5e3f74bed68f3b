#include "hrlab/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "hrlab/quad1d.hpp"

namespace hrlab::algebra {

namespace {

void check_weight_inputs(double p, double f, double g) {
  require(is_finite(p) && is_finite(f) && is_finite(g),
          "pointwise_weight_w: non-finite input");
  require(p >= 2.0, "pointwise_weight_w: p must be >= 2");
}

// Integral_0^1 s |s g + (1-s) f|^(p-2) ds by adaptive quadrature, split at the
// zero of the linear argument when it falls inside (0, 1).
double weight_integral(double p, double f, double g) {
  const auto integrand = [=](double s) {
    return s * abs_pow(s * g + (1.0 - s) * f, p - 2.0);
  };
  // Generous absolute floor scaled to the integrand size so that the residual
  // of the identity stays small even for |f|, |g| of a few units.
  const double scale = std::max(abs_pow(f, p - 2.0), abs_pow(g, p - 2.0));
  const double abs_tol = 1e-13 * std::max(1.0, scale);
  const double rel_tol = 1e-12;

  if (f != g) {
    const double s_star = f / (f - g);  // zero of s g + (1-s) f
    if (s_star > 0.0 && s_star < 1.0) {
      return quad::integrate_or_throw(integrand, 0.0, s_star, abs_tol, rel_tol) +
             quad::integrate_or_throw(integrand, s_star, 1.0, abs_tol, rel_tol);
    }
  }
  return quad::integrate_or_throw(integrand, 0.0, 1.0, abs_tol, rel_tol);
}

}  // namespace

double pointwise_weight_w(double p, double f, double g) {
  check_weight_inputs(p, f, g);
  if (p == 2.0) return 1.0;  // w == 1 identically at p = 2
  if (f == 0.0 && g == 0.0) return 0.0;
  if (g == 0.0) {
    // p(p-1) Int s(1-s)^(p-2) |f|^(p-2) ds = |f|^(p-2)  (Beta(2, p-1) = 1/(p(p-1)))
    return abs_pow(f, 0.5 * (p - 2.0));
  }
  if (f == 0.0) {
    // p(p-1) Int s^(p-1) |g|^(p-2) ds = (p-1) |g|^(p-2)
    return std::sqrt(p - 1.0) * abs_pow(g, 0.5 * (p - 2.0));
  }
  const double w2 = p * (p - 1.0) * weight_integral(p, f, g);
  return std::sqrt(std::max(w2, 0.0));
}

double identity_rhs(double p, double f, double g) {
  require(is_finite(p) && is_finite(f) && is_finite(g),
          "identity_rhs: non-finite input");
  require(p >= 2.0, "identity_rhs: p must be >= 2");
  return abs_pow(f, p) + (p - 1.0) * abs_pow(g, p) -
         p * signed_pow(g, p - 1.0) * f;
}

double identity_residual(double p, double f, double g) {
  const double w = pointwise_weight_w(p, f, g);
  const double lhs = w * w * (f - g) * (f - g);
  return std::abs(lhs - identity_rhs(p, f, g));
}

namespace {

// f(x) = (|x+1|^p - |x|^p) / (|x|^(p-1) + 1); sup over x is c_p.
double cp_objective(double p, double x) {
  return (abs_pow(x + 1.0, p) - abs_pow(x, p)) / (abs_pow(x, p - 1.0) + 1.0);
}

}  // namespace

double cp_estimate(double p, int grid_points) {
  require(is_finite(p) && p >= 2.0, "cp_estimate: p must be >= 2 and finite");
  require(grid_points >= 16, "cp_estimate: grid too coarse");

  constexpr double kPi = 3.14159265358979323846;
  // Compactified axis: x = tan(pi t / 2).  Stay away from t = +-1 so the
  // powers |x|^(p-1) remain representable; the tails are covered by the
  // analytic limits +-p anyway.
  const double t_max = 1.0 - 1e-6;
  double best_t = 0.0, best_val = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_points; ++i) {
    const double t = -t_max + 2.0 * t_max * i / (grid_points - 1);
    const double val = cp_objective(p, std::tan(0.5 * kPi * t));
    if (val > best_val) {
      best_val = val;
      best_t = t;
    }
  }

  // Golden-section refinement in t around the best grid cell.
  const double dt = 2.0 * t_max / (grid_points - 1);
  double lo = std::max(-t_max, best_t - dt), hi = std::min(t_max, best_t + dt);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - gr * (hi - lo), d = lo + gr * (hi - lo);
  double fc = cp_objective(p, std::tan(0.5 * kPi * c));
  double fd = cp_objective(p, std::tan(0.5 * kPi * d));
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - gr * (hi - lo);
      fc = cp_objective(p, std::tan(0.5 * kPi * c));
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + gr * (hi - lo);
      fd = cp_objective(p, std::tan(0.5 * kPi * d));
    }
  }
  best_val = std::max(best_val, std::max(fc, fd));

  // The limits at x -> +-inf are +p and -p; the supremum can sit in the limit
  // (exactly so for p = 2).
  return std::max(best_val, p);
}

bool triple_power_bound_check(double p, double cp, double a, double b,
                              double c) {
  require(is_finite(a) && is_finite(b) && is_finite(c) && is_finite(cp),
          "triple_power_bound_check: non-finite input");
  require(p >= 2.0, "triple_power_bound_check: p must be >= 2");
  const double lhs = abs_pow(a + b + c, p);
  const double rhs = abs_pow(a, p) + cp * abs_pow(a, p - 1.0) * std::abs(b) +
                     cp * abs_pow(a, p - 1.0) * std::abs(c) + cp * abs_pow(b, p) +
                     cp * cp * abs_pow(b, p - 1.0) * std::abs(c) +
                     cp * cp * abs_pow(c, p);
  // Relative slack for floating-point rounding only; equality cases (b = c = 0)
  // must still pass.
  const double slack = 32.0 * std::numeric_limits<double>::epsilon() *
                       std::max(lhs, rhs);
  return lhs <= rhs + slack;
}

}  // namespace hrlab::algebra
