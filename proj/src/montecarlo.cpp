#include "hrlab/montecarlo.hpp"

#include <cmath>

#include "hrlab/quad1d.hpp"

namespace hrlab::mc {

namespace {

constexpr long kBatch = 65536;

struct ShellAccum {
  Vec sum;       // per-integrand sums over all points (rejected = 0)
  Mat cross;     // sums of products y_i y_j
  long n = 0;
  long accepted = 0;
};

// One geometric shell [r_lo, r_hi], sampled from the box of r_hi.  The
// stream key separates shells and batches so the point set is a pure
// function of (seed, shell, batch).
ShellAccum run_shell(const frames::Geometry& geo,
                     const std::vector<std::function<double(const Vec&)>>& fs,
                     double r_lo, double r_hi, bool hi_inclusive, long n,
                     std::uint64_t seed, std::uint64_t shell_index) {
  const int m = static_cast<int>(fs.size());
  const int N = geo.frame.ambient_dim;
  const Vec hw = frames::bounding_box(geo, r_hi);

  ShellAccum acc;
  acc.sum = Vec::Zero(m);
  acc.cross = Mat::Zero(m, m);
  acc.n = n;

  Vec x(N), y(m);
  const long n_batches = (n + kBatch - 1) / kBatch;
  for (long b = 0; b < n_batches; ++b) {
    CounterRng rng(seed, (shell_index << 40) + static_cast<std::uint64_t>(b));
    const long lo = b * kBatch;
    const long hi = std::min(n, lo + kBatch);
    Vec bsum = Vec::Zero(m);
    Mat bcross = Mat::Zero(m, m);
    for (long i = lo; i < hi; ++i) {
      for (int j = 0; j < N; ++j) x[j] = rng.uniform(-hw[j], hw[j]);
      const double d = geo.gauge.value(x);
      const bool in = d >= r_lo && (hi_inclusive ? d <= r_hi : d < r_hi);
      if (!in) continue;
      ++acc.accepted;
      for (int k = 0; k < m; ++k) y[k] = fs[k](x);
      bsum += y;
      bcross += y * y.transpose();
    }
    acc.sum += bsum;
    acc.cross += bcross;
  }
  return acc;
}

}  // namespace

Estimate MultiEstimate::component(int i) const {
  return Estimate{values[i], std::sqrt(std::max(0.0, covariance(i, i))), n};
}

Estimate MultiEstimate::linear(const Vec& coeffs) const {
  const double v = coeffs.dot(values);
  const double var = coeffs.dot(covariance * coeffs);
  return Estimate{v, std::sqrt(std::max(0.0, var)), n};
}

Estimate MultiEstimate::ratio(int i, int j) const {
  const double a = values[i], b = values[j];
  require(b != 0.0, "MultiEstimate::ratio: zero denominator estimate");
  const double q = a / b;
  // Delta method: var(a/b) ~ (1/b)^2 var(a) + (a/b^2)^2 var(b)
  //                         - 2 (a/b^3) cov(a,b).
  const double var = covariance(i, i) / (b * b) +
                     q * q * covariance(j, j) / (b * b) -
                     2.0 * q * covariance(i, j) / (b * b);
  return Estimate{q, std::sqrt(std::max(0.0, var)), n};
}

MultiEstimate mc_gauge_annulus_multi(
    const frames::Geometry& geo,
    const std::vector<std::function<double(const Vec&)>>& integrands,
    double r_in, double r_out, long n, std::uint64_t seed) {
  require(!integrands.empty(), "mc_gauge_annulus: no integrands");
  require(0.0 <= r_in && r_in < r_out && is_finite(r_out),
          "mc_gauge_annulus: need 0 <= r_in < r_out");
  require(n >= 2, "mc_gauge_annulus: need at least 2 samples");
  const int m = static_cast<int>(integrands.size());

  // Geometric shells when the annulus spans more than two decades.
  std::vector<double> edges;
  if (r_in > 0.0 && r_out / r_in > 100.0) {
    const int K =
        static_cast<int>(std::ceil(std::log10(r_out / r_in)));
    edges.reserve(K + 1);
    for (int j = 0; j <= K; ++j)
      edges.push_back(r_in * std::pow(r_out / r_in,
                                      static_cast<double>(j) / K));
    edges.back() = r_out;
  } else {
    edges = {r_in, r_out};
  }
  const int K = static_cast<int>(edges.size()) - 1;

  MultiEstimate out;
  out.values = Vec::Zero(m);
  out.covariance = Mat::Zero(m, m);

  long total_n = 0, total_accepted = 0;
  for (int j = 0; j < K; ++j) {
    const long n_j = (j == K - 1) ? n - (K - 1) * (n / K) : n / K;
    const double r_lo = edges[j], r_hi = edges[j + 1];
    const ShellAccum acc = run_shell(geo, integrands, r_lo, r_hi,
                                     /*hi_inclusive=*/j == K - 1, n_j, seed,
                                     static_cast<std::uint64_t>(j));
    const Vec hw = frames::bounding_box(geo, r_hi);
    double volume = 1.0;
    for (int i = 0; i < hw.size(); ++i) volume *= 2.0 * hw[i];

    const Vec mean = acc.sum / static_cast<double>(acc.n);
    // Sample covariance of the per-point values, then of the mean.
    Mat cov_pt = acc.cross / static_cast<double>(acc.n) -
                 mean * mean.transpose();
    cov_pt /= static_cast<double>(acc.n - 1);
    out.values += volume * mean;
    out.covariance += (volume * volume) * cov_pt;
    total_n += acc.n;
    total_accepted += acc.accepted;
  }
  out.n = total_n;

  if (static_cast<double>(total_accepted) <
      1e-4 * static_cast<double>(total_n))
    throw NumericalError(
        "mc_gauge_annulus: acceptance rate below 1e-4; the bounding box is "
        "unusable for this annulus");
  return out;
}

Estimate mc_gauge_annulus(const frames::Geometry& geo,
                          const std::function<double(const Vec&)>& integrand,
                          double r_in, double r_out, long n,
                          std::uint64_t seed) {
  return mc_gauge_annulus_multi(geo, {integrand}, r_in, r_out, n, seed)
      .component(0);
}

SurfaceLaw sphere_constant(const frames::Geometry& geo, double p, long n,
                           std::uint64_t seed) {
  require(p >= 2.0 && is_finite(p), "sphere_constant: p must be >= 2");
  auto integrand = [&geo, p](const Vec& x) {
    const double d = geo.gauge.value(x);
    if (d <= 0.0) return 0.0;  // measure-zero origin guard
    const Vec gd = geo.frame.sigma(x) * geo.gauge.euclid_gradient(x);
    return std::pow(gd.squaredNorm(), 0.5 * p);
  };
  SurfaceLaw law;
  law.p = p;
  law.Q = geo.frame.Q;
  law.lambda_p = mc_gauge_annulus(geo, integrand, 0.0, 1.0, n, seed);
  return law;
}

Estimate radial_integral(const SurfaceLaw& law,
                         const std::function<double(double)>& f, double r_in,
                         double r_out) {
  require(0.0 <= r_in && r_in < r_out, "radial_integral: bad bounds");
  const double Q = law.Q;
  const auto res = quad::integrate(
      [&f, Q](double r) { return f(r) * std::pow(r, Q - 1.0); }, r_in, r_out,
      1e-13, 1e-9, 20000);
  if (!res.converged)
    throw NumericalError(
        "radial_integral: adaptive quadrature did not converge (divergent or "
        "too singular profile)");
  Estimate e;
  e.value = Q * law.lambda_p.value * res.value;
  e.std_error = Q * std::abs(res.value) * law.lambda_p.std_error;
  e.n = law.lambda_p.n;
  return e;
}

}  // namespace hrlab::mc
