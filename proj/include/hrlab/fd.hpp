#pragma once

#include <functional>

#include "hrlab/common.hpp"

namespace hrlab::fd {

// Central-difference gradient with one Richardson extrapolation level,
// step h_i = cbrt(eps_machine) * (1 + |x_i|).
Vec gradient(const std::function<double(const Vec&)>& u, const Vec& x);

// Hessian from second differences of values with one Richardson level,
// step h_i = eps_machine^(1/4) * (1 + |x_i|).  Symmetric by construction.
Mat hessian_from_values(const std::function<double(const Vec&)>& u,
                        const Vec& x);

// Hessian as the symmetrized Jacobian of an (analytic) gradient map; central
// differences with one Richardson level at gradient-step accuracy.  Preferred
// over hessian_from_values whenever a closed-form gradient exists.
Mat hessian_from_gradient(const std::function<Vec(const Vec&)>& grad,
                          const Vec& x);

// Directional derivative (central + Richardson) of a scalar field; used to
// differentiate quantities like |grad_L u|^2 that are cheap to evaluate but
// tedious to differentiate in closed form.
double directional_derivative(const std::function<double(const Vec&)>& u,
                              const Vec& x, const Vec& dir);

}  // namespace hrlab::fd
