#pragma once

#include <functional>

#include "hrlab/common.hpp"

namespace hrlab::quad {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  long n_evals = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod 15(7) integration of f over the finite
// interval [a, b].  The worst interval (largest error estimate) is bisected
// until  sum(err) <= max(abs_tol, rel_tol * |integral|)  or the interval
// budget runs out.  Integrable endpoint singularities (|x-c|^s, s > -1) are
// handled by the geometric refinement toward the endpoint.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-12, double rel_tol = 1e-10,
                     int max_intervals = 4000);

// Same, but throws NumericalError when the tolerance was not reached.
double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, double abs_tol = 1e-12,
                          double rel_tol = 1e-10, int max_intervals = 4000);

// Exact integral of r^(s-1) over [a, b], 0 < a <= b: the power-law/logarithm
// primitive used for plateau contributions, (b^s - a^s)/s, or log(b/a) at s = 0.
double power_integral(double s, double a, double b);

}  // namespace hrlab::quad
