#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hrlab/common.hpp"
#include "hrlab/frames.hpp"

// Monte-Carlo integration over gauge annuli (rejection sampling from the
// dilation bounding box, deterministic counter-keyed batches) and the
// co-area machinery: the gauge-ball constant lambda_p and 1-D radial
// integrals against the surface law Q lambda_p r^{Q-1}.

namespace hrlab::mc {

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  long n = 0;
};

// Joint estimate of several annulus integrals from common sample points,
// with the full covariance of the estimators: linear combinations and
// ratios of the integrals then carry honest standard errors.
struct MultiEstimate {
  Vec values;      // one entry per integrand
  Mat covariance;  // covariance matrix of the estimators (already / n)
  long n = 0;

  Estimate component(int i) const;
  // Estimate of coeffs . values.
  Estimate linear(const Vec& coeffs) const;
  // Estimate of values[i] / values[j] with the delta-method standard error.
  Estimate ratio(int i, int j) const;
};

// Uniform rejection sampling from the bounding box of {d <= r_out}; points
// outside the annulus count as zero of the integrand so the box volume is
// the common normalizer.  Deterministic in (seed, n): samples are generated
// in fixed-size batches keyed by (seed, batch index).  When r_out/r_in > 100
// the annulus is split into geometric shells, each with its own box and its
// own sample share (independent streams; variances add).
// Throws NumericalError if the overall acceptance rate drops below 1e-4.
MultiEstimate mc_gauge_annulus_multi(
    const frames::Geometry& geo,
    const std::vector<std::function<double(const Vec&)>>& integrands,
    double r_in, double r_out, long n, std::uint64_t seed);

Estimate mc_gauge_annulus(const frames::Geometry& geo,
                          const std::function<double(const Vec&)>& integrand,
                          double r_in, double r_out, long n,
                          std::uint64_t seed);

// lambda_p = integral of |grad_L d|^p over the unit gauge ball, together
// with the differentiated surface law r -> Q lambda_p r^{Q-1}.
struct SurfaceLaw {
  double p = 2.0;
  Estimate lambda_p;
  double Q = 0.0;
  double surface(double r) const { return Q * lambda_p.value * std::pow(r, Q - 1.0); }
};

SurfaceLaw sphere_constant(const frames::Geometry& geo, double p, long n,
                           std::uint64_t seed);

// Q * lambda_p * int_{r_in}^{r_out} f(r) r^{Q-1} dr by adaptive 1-D
// quadrature; the standard error is lambda_p's, scaled by the integral.
// Throws NumericalError when the 1-D rule fails to converge (divergence).
Estimate radial_integral(const SurfaceLaw& law,
                         const std::function<double(double)>& f, double r_in,
                         double r_out);

}  // namespace hrlab::mc
