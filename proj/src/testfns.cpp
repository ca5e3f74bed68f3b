#include "hrlab/testfns.hpp"

#include <algorithm>
#include <cmath>

#include "hrlab/quad1d.hpp"

namespace hrlab::testfns {

// ---------------------------------------------------------------------------
// Smooth step
// ---------------------------------------------------------------------------

namespace smoothstep {

namespace {
constexpr double kLo = 0.01;
constexpr double kHi = 0.99;
}  // namespace

double value(double t) {
  if (t <= kLo) return 0.0;
  if (t >= kHi) return 1.0;
  const double u = std::exp(-1.0 / t);
  const double v = std::exp(-1.0 / (1.0 - t));
  return u / (u + v);
}

double d1(double t) {
  if (t <= kLo || t >= kHi) return 0.0;
  const double u = std::exp(-1.0 / t);
  const double v = std::exp(-1.0 / (1.0 - t));
  const double up = u / (t * t);
  const double vp = -v / ((1.0 - t) * (1.0 - t));
  const double sum = u + v;
  return (up * v - u * vp) / (sum * sum);
}

double d2(double t) {
  if (t <= kLo || t >= kHi) return 0.0;
  const double w = 1.0 - t;
  const double u = std::exp(-1.0 / t);
  const double v = std::exp(-1.0 / w);
  const double up = u / (t * t);
  const double vp = -v / (w * w);
  const double upp = u * (1.0 / (t * t * t * t) - 2.0 / (t * t * t));
  const double vpp = v * (1.0 / (w * w * w * w) - 2.0 / (w * w * w));
  const double sum = u + v;
  const double num1 = upp * v - u * vpp;
  const double num2 = up * v - u * vp;
  return num1 / (sum * sum) - 2.0 * num2 * (up + vp) / (sum * sum * sum);
}

namespace {
struct Sup {
  double s1;
  double s2;
};
const Sup& grid_sup() {
  static const Sup sup = [] {
    Sup s{0.0, 0.0};
    const int n = 40000;
    for (int i = 1; i < n; ++i) {
      const double t = static_cast<double>(i) / n;
      s.s1 = std::max(s.s1, std::abs(d1(t)));
      s.s2 = std::max(s.s2, std::abs(d2(t)));
    }
    return s;
  }();
  return sup;
}
}  // namespace

double sup_d1() { return grid_sup().s1; }
double sup_d2() { return grid_sup().s2; }

}  // namespace smoothstep

// ---------------------------------------------------------------------------
// Cutoff
// ---------------------------------------------------------------------------

Cutoff::Cutoff(double eps) : eps_(eps) {
  require(eps > 0.0 && eps < 0.5 && is_finite(eps),
          "Cutoff: eps must lie in (0, 1/2)");
  // Rising band: g = s(r/eps - 1), so |g'| = |s'|/eps, |g''| = |s''|/eps^2.
  // Falling band: g = s(2 - 2 eps r), so |g'| = 2 eps |s'|, |g''| = 4 eps^2 |s''|.
  // A single constant covering all four bounds, with 1% grid headroom:
  c_ = 1.01 * std::max(2.0 * smoothstep::sup_d1(), 4.0 * smoothstep::sup_d2());
}

double Cutoff::value(double r) const {
  if (r <= eps_ || r >= 1.0 / eps_) return 0.0;
  if (r < 2.0 * eps_) return smoothstep::value(r / eps_ - 1.0);
  if (r <= 1.0 / (2.0 * eps_)) return 1.0;
  return smoothstep::value(2.0 - 2.0 * eps_ * r);
}

double Cutoff::d1(double r) const {
  if (r <= eps_ || r >= 1.0 / eps_) return 0.0;
  if (r < 2.0 * eps_) return smoothstep::d1(r / eps_ - 1.0) / eps_;
  if (r <= 1.0 / (2.0 * eps_)) return 0.0;
  return -2.0 * eps_ * smoothstep::d1(2.0 - 2.0 * eps_ * r);
}

double Cutoff::d2(double r) const {
  if (r <= eps_ || r >= 1.0 / eps_) return 0.0;
  if (r < 2.0 * eps_) return smoothstep::d2(r / eps_ - 1.0) / (eps_ * eps_);
  if (r <= 1.0 / (2.0 * eps_)) return 0.0;
  return 4.0 * eps_ * eps_ * smoothstep::d2(2.0 - 2.0 * eps_ * r);
}

frames::RadialProfile Cutoff::profile() const {
  const Cutoff g = *this;
  return frames::RadialProfile{[g](double r) { return g.value(r); },
                               [g](double r) { return g.d1(r); },
                               [g](double r) { return g.d2(r); }};
}

// ---------------------------------------------------------------------------
// Moments
// ---------------------------------------------------------------------------

namespace {

// Adaptive integral of f over the two transition bands of the cut-off.
double transitions(const Cutoff& g, const std::function<double(double)>& f) {
  const double e = g.eps();
  const double lo = quad::integrate_or_throw(f, e, 2.0 * e, 1e-14, 1e-10);
  const double hi =
      quad::integrate_or_throw(f, 1.0 / (2.0 * e), 1.0 / e, 1e-14, 1e-10);
  return lo + hi;
}

}  // namespace

CutoffMoments cutoff_moments(double eps, double p) {
  require(p >= 2.0 && is_finite(p), "cutoff_moments: p must be >= 2");
  const Cutoff g(eps);

  CutoffMoments m;
  // Plateau of int r^{-1} g^p: g == 1 on [2 eps, 1/(2 eps)], giving
  // ln(1/(2 eps)) - ln(2 eps) = -ln(4 eps^2).
  m.log_moment = -std::log(4.0 * eps * eps) +
                 transitions(g, [&](double r) {
                   return abs_pow(g.value(r), p) / r;
                 });
  m.flux_moment = transitions(g, [&](double r) {
    return abs_pow(g.value(r), p - 1.0) * std::abs(g.d1(r));
  });
  m.gradient_moment = transitions(g, [&](double r) {
    return abs_pow(r, p - 1.0) * abs_pow(g.d1(r), p);
  });
  m.curvature_moment = transitions(g, [&](double r) {
    return r * abs_pow(g.value(r), p - 1.0) * std::abs(g.d2(r));
  });
  m.mixed_moment = transitions(g, [&](double r) {
    return abs_pow(r, p) * abs_pow(g.d1(r), p - 1.0) * std::abs(g.d2(r));
  });
  m.curvature_p_moment = transitions(g, [&](double r) {
    return abs_pow(r, 2.0 * p - 1.0) * abs_pow(g.d2(r), p);
  });
  return m;
}

// ---------------------------------------------------------------------------
// Extremal profiles
// ---------------------------------------------------------------------------

frames::TestFunction make_extremal(const frames::Geometry& geo, double a,
                                   double eps) {
  require(is_finite(a), "make_extremal: exponent must be finite");
  const Cutoff g(eps);
  const frames::Gauge gauge = geo.gauge;

  // phi(r) = r^a g(r); product rule for phi', phi''.
  auto phi0 = [g, a](double r) { return std::pow(r, a) * g.value(r); };
  auto phi1 = [g, a](double r) {
    return a * std::pow(r, a - 1.0) * g.value(r) + std::pow(r, a) * g.d1(r);
  };
  auto phi2 = [g, a](double r) {
    return a * (a - 1.0) * std::pow(r, a - 2.0) * g.value(r) +
           2.0 * a * std::pow(r, a - 1.0) * g.d1(r) +
           std::pow(r, a) * g.d2(r);
  };

  frames::TestFunction u;
  u.value = [gauge, phi0](const Vec& x) { return phi0(gauge.value(x)); };
  u.gradient = [gauge, phi1](const Vec& x) -> Vec {
    return phi1(gauge.value(x)) * gauge.euclid_gradient(x);
  };
  u.hessian = [gauge, phi1, phi2](const Vec& x) -> Mat {
    const double d = gauge.value(x);
    const Vec gd = gauge.euclid_gradient(x);
    return phi2(d) * (gd * gd.transpose()) + phi1(d) * gauge.euclid_hessian(x);
  };
  u.radial = frames::RadialProfile{phi0, phi1, phi2};
  u.support_r_in = eps;
  u.support_r_out = 1.0 / eps;
  return u;
}

// ---------------------------------------------------------------------------
// Random bumps
// ---------------------------------------------------------------------------

namespace {

// Smooth window in the gauge radius: 0 below r1 and above r4, 1 on [r2, r3].
struct Window {
  double r1, r2, r3, r4;
  double value(double r) const {
    if (r <= r1 || r >= r4) return 0.0;
    if (r < r2) return smoothstep::value((r - r1) / (r2 - r1));
    if (r <= r3) return 1.0;
    return smoothstep::value((r4 - r) / (r4 - r3));
  }
  double d1(double r) const {
    if (r <= r1 || r >= r4) return 0.0;
    if (r < r2) return smoothstep::d1((r - r1) / (r2 - r1)) / (r2 - r1);
    if (r <= r3) return 0.0;
    return -smoothstep::d1((r4 - r) / (r4 - r3)) / (r4 - r3);
  }
  double d2(double r) const {
    if (r <= r1 || r >= r4) return 0.0;
    if (r < r2)
      return smoothstep::d2((r - r1) / (r2 - r1)) / ((r2 - r1) * (r2 - r1));
    if (r <= r3) return 0.0;
    return smoothstep::d2((r4 - r) / (r4 - r3)) / ((r4 - r3) * (r4 - r3));
  }
};

}  // namespace

frames::TestFunction make_random_bump(const frames::Geometry& geo,
                                      std::uint64_t seed, double r_in,
                                      double r_out) {
  require(0.0 < r_in && r_in < r_out && is_finite(r_out),
          "make_random_bump: need 0 < r_in < r_out");

  CounterRng rng(seed, /*stream=*/0x00b0b0);

  Window w;
  w.r1 = r_in;
  w.r4 = r_out;
  w.r2 = r_in + 0.25 * (r_out - r_in);
  w.r3 = r_in + 0.75 * (r_out - r_in);

  // Gaussian centre, kept away from the degenerate set so the bump mass
  // lives where the frame is nondegenerate.
  const double rc = std::sqrt(r_in * r_out);
  const Vec mu = frames::sample_annulus_point(geo, rng, 0.8 * rc, 1.2 * rc,
                                              /*min_ratio=*/0.5);

  const double span = r_out - r_in;
  const double kappa = rng.uniform(1.0, 4.0) / (span * span);
  const double amp = rng.uniform(0.5, 1.5);
  const double a0 = rng.uniform(0.3, 1.0);

  // Mild linear tilt, scaled by the largest box coordinate so the factor
  // stays order one over the support.
  const Vec hw = frames::bounding_box(geo, r_out);
  Vec tilt(hw.size());
  for (int i = 0; i < tilt.size(); ++i)
    tilt[i] = rng.uniform(-0.3, 0.3) / hw[i];

  const frames::Gauge gauge = geo.gauge;

  auto amplitude = [mu, kappa, amp, a0, tilt](const Vec& x) {
    const double q = (x - mu).squaredNorm();
    return (a0 + amp * std::exp(-kappa * q)) * (1.0 + tilt.dot(x));
  };
  auto amplitude_grad = [mu, kappa, amp, a0, tilt](const Vec& x) -> Vec {
    const Vec dx = x - mu;
    const double e = amp * std::exp(-kappa * dx.squaredNorm());
    const double lin = 1.0 + tilt.dot(x);
    return (-2.0 * kappa * lin * e) * dx + (a0 + e) * tilt;
  };
  auto amplitude_hess = [mu, kappa, amp, a0, tilt](const Vec& x) -> Mat {
    const Vec dx = x - mu;
    const double e = amp * std::exp(-kappa * dx.squaredNorm());
    const double lin = 1.0 + tilt.dot(x);
    const int N = static_cast<int>(x.size());
    Mat h = (4.0 * kappa * kappa * lin * e) * (dx * dx.transpose()) -
            (2.0 * kappa * lin * e) * Mat::Identity(N, N);
    const Vec ge = (-2.0 * kappa * e) * dx;
    h += ge * tilt.transpose() + tilt * ge.transpose();
    return h;
  };

  frames::TestFunction u;
  u.value = [gauge, w, amplitude](const Vec& x) {
    const double W = w.value(gauge.value(x));
    return W == 0.0 ? 0.0 : W * amplitude(x);
  };
  u.gradient = [gauge, w, amplitude, amplitude_grad](const Vec& x) -> Vec {
    const double d = gauge.value(x);
    const double W = w.value(d);
    if (W == 0.0) return Vec::Zero(x.size());
    const Vec gd = gauge.euclid_gradient(x);
    return w.d1(d) * amplitude(x) * gd + W * amplitude_grad(x);
  };
  u.hessian = [gauge, w, amplitude, amplitude_grad,
               amplitude_hess](const Vec& x) -> Mat {
    const double d = gauge.value(x);
    const double W = w.value(d);
    if (W == 0.0) return Mat::Zero(x.size(), x.size());
    const Vec gd = gauge.euclid_gradient(x);
    const double A = amplitude(x);
    const Vec gA = amplitude_grad(x);
    Mat h = (w.d2(d) * A) * (gd * gd.transpose()) +
            (w.d1(d) * A) * gauge.euclid_hessian(x) + W * amplitude_hess(x);
    const Vec wgd = w.d1(d) * gd;
    h += wgd * gA.transpose() + gA * wgd.transpose();
    return h;
  };
  u.support_r_in = r_in;
  u.support_r_out = r_out;
  return u;
}

}  // namespace hrlab::testfns
