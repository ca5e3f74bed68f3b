#include "hrlab/frames.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hrlab/fd.hpp"

namespace hrlab::frames {

// ---------------------------------------------------------------------------
// FrameSpec
// ---------------------------------------------------------------------------

namespace {

std::vector<double> split_args(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t pos = 0;
      double v = std::stod(item, &pos);
      if (pos != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("frame spec: cannot parse argument '" + item + "'");
    }
  }
  return out;
}

int as_positive_int(double v, const char* name) {
  int i = static_cast<int>(v);
  require(v == static_cast<double>(i) && i >= 1,
          std::string("frame spec: ") + name + " must be a positive integer");
  return i;
}

}  // namespace

FrameSpec FrameSpec::parse(const std::string& text) {
  const auto colon = text.find(':');
  require(colon != std::string::npos,
          "frame spec must look like kind:args, e.g. heisenberg:1");
  const std::string kind_s = text.substr(0, colon);
  const auto args = split_args(text.substr(colon + 1));

  FrameSpec spec;
  if (kind_s == "euclidean") {
    require(args.size() == 1, "euclidean takes one argument: the dimension");
    spec.kind = FrameKind::euclidean;
    spec.n = as_positive_int(args[0], "dimension");
  } else if (kind_s == "heisenberg") {
    require(args.size() == 1, "heisenberg takes one argument: n");
    spec.kind = FrameKind::heisenberg;
    spec.n = as_positive_int(args[0], "n");
  } else if (kind_s == "heisenberg_greiner") {
    require(args.size() == 2, "heisenberg_greiner takes two arguments: n,gamma");
    spec.kind = FrameKind::heisenberg_greiner;
    spec.n = as_positive_int(args[0], "n");
    spec.gamma = args[1];
  } else if (kind_s == "baouendi_grushin") {
    require(args.size() == 3, "baouendi_grushin takes three arguments: n,k,gamma");
    spec.kind = FrameKind::baouendi_grushin;
    spec.n = as_positive_int(args[0], "n");
    int k = static_cast<int>(args[1]);
    require(args[1] == static_cast<double>(k) && k >= 0,
            "frame spec: k must be a nonnegative integer");
    spec.k = k;
    spec.gamma = args[2];
  } else {
    throw ConfigError("unknown frame kind '" + kind_s + "'");
  }
  return spec;
}

std::string FrameSpec::to_string() const {
  char buf[96];
  switch (kind) {
    case FrameKind::euclidean:
      std::snprintf(buf, sizeof buf, "euclidean:%d", n);
      break;
    case FrameKind::heisenberg:
      std::snprintf(buf, sizeof buf, "heisenberg:%d", n);
      break;
    case FrameKind::heisenberg_greiner:
      std::snprintf(buf, sizeof buf, "heisenberg_greiner:%d,%g", n, gamma);
      break;
    case FrameKind::baouendi_grushin:
      std::snprintf(buf, sizeof buf, "baouendi_grushin:%d,%d,%g", n, k, gamma);
      break;
  }
  return buf;
}

// ---------------------------------------------------------------------------
// Gauge
// ---------------------------------------------------------------------------

Gauge::Gauge(int dim_a, int dim_b, double m, double Q)
    : dim_a_(dim_a), dim_b_(dim_b), m_(m), Q_(Q) {
  require(dim_a >= 1 && dim_b >= 0 && m >= 2.0, "Gauge: invalid parameters");
}

double Gauge::value(const Vec& x) const {
  const double ra = x.head(dim_a_).norm();
  if (dim_b_ == 0) return ra;
  const double F = std::pow(ra, m_) + x.tail(dim_b_).squaredNorm();
  return std::pow(F, 1.0 / m_);
}

Vec Gauge::euclid_gradient(const Vec& x) const {
  const double ra = x.head(dim_a_).norm();
  const double F = std::pow(ra, m_) +
                   (dim_b_ > 0 ? x.tail(dim_b_).squaredNorm() : 0.0);
  // d = F^(1/m):  dd/da = F^(1/m-1) |a|^(m-2) a,  dd/db = (2/m) F^(1/m-1) b.
  const double c = std::pow(F, 1.0 / m_ - 1.0);
  Vec g(dim());
  g.head(dim_a_) = (c * std::pow(ra, m_ - 2.0)) * x.head(dim_a_);
  if (dim_b_ > 0) g.tail(dim_b_) = (2.0 / m_ * c) * x.tail(dim_b_);
  return g;
}

Mat Gauge::euclid_hessian(const Vec& x) const {
  const int da = dim_a_, db = dim_b_, N = dim();
  const double ra = x.head(da).norm();
  const double F =
      std::pow(ra, m_) + (db > 0 ? x.tail(db).squaredNorm() : 0.0);

  // F-gradient and F-Hessian.
  Vec dF = Vec::Zero(N);
  dF.head(da) = (m_ * std::pow(ra, m_ - 2.0)) * x.head(da);
  if (db > 0) dF.tail(db) = 2.0 * x.tail(db);

  Mat HF = Mat::Zero(N, N);
  HF.topLeftCorner(da, da) =
      (m_ * std::pow(ra, m_ - 2.0)) * Mat::Identity(da, da);
  if (m_ != 2.0 && ra > 0.0) {
    HF.topLeftCorner(da, da) += (m_ * (m_ - 2.0) * std::pow(ra, m_ - 4.0)) *
                                (x.head(da) * x.head(da).transpose());
  }
  if (db > 0)
    HF.bottomRightCorner(db, db) = 2.0 * Mat::Identity(db, db);

  // d = F^(1/m) chain rule.
  const double inv_m = 1.0 / m_;
  const double c1 = inv_m * std::pow(F, inv_m - 1.0);
  const double c2 = inv_m * (inv_m - 1.0) * std::pow(F, inv_m - 2.0);
  return c2 * (dF * dF.transpose()) + c1 * HF;
}

// ---------------------------------------------------------------------------
// Frame
// ---------------------------------------------------------------------------

Mat Frame::sigma(const Vec& x) const {
  require(static_cast<int>(x.size()) == ambient_dim,
          "sigma: point dimension mismatch");
  Mat S = Mat::Zero(horizontal_dim, ambient_dim);
  const int n = spec.n;
  switch (spec.kind) {
    case FrameKind::euclidean:
      S.setIdentity();
      break;
    case FrameKind::heisenberg: {
      const int t = 2 * n;
      for (int i = 0; i < n; ++i) {
        S(i, i) = 1.0;
        S(i, t) = 2.0 * x[n + i];
        S(n + i, n + i) = 1.0;
        S(n + i, t) = -2.0 * x[i];
      }
      break;
    }
    case FrameKind::heisenberg_greiner: {
      const int t = 2 * n;
      const double g = spec.gamma;
      const double zp = std::pow(x.head(2 * n).squaredNorm(), g - 1.0);
      for (int i = 0; i < n; ++i) {
        S(i, i) = 1.0;
        S(i, t) = 2.0 * g * x[n + i] * zp;
        S(n + i, n + i) = 1.0;
        S(n + i, t) = -2.0 * g * x[i] * zp;
      }
      break;
    }
    case FrameKind::baouendi_grushin: {
      const double g = spec.gamma;
      const double c = (1.0 + g) * std::pow(x.head(n).norm(), g);
      for (int i = 0; i < n; ++i) S(i, i) = 1.0;
      for (int j = 0; j < spec.k; ++j) S(n + j, n + j) = c;
      break;
    }
  }
  return S;
}

Mat Frame::metric(const Vec& x) const {
  const Mat S = sigma(x);
  return S.transpose() * S;
}

Vec Frame::sigma_divergence(const Vec& x) const {
  // For each of the four families the column divergences of A = sigma^T sigma
  // cancel identically: the t-column entries 2y_i, -2x_i (Heisenberg and
  // Greiner, with the |z|-factor symmetric in (x_i, y_i)) are differentiated
  // in directions they do not depend on, and A_tt resp. the Grushin block
  // depend only on coordinates absent from their divergence direction.
  // The FD cross-check lives in the frame test suite.
  require(static_cast<int>(x.size()) == ambient_dim,
          "sigma_divergence: point dimension mismatch");
  return Vec::Zero(ambient_dim);
}

std::vector<Mat> Frame::sigma_jacobian(const Vec& x) const {
  std::vector<Mat> J(horizontal_dim, Mat::Zero(ambient_dim, ambient_dim));
  const int n = spec.n;
  switch (spec.kind) {
    case FrameKind::euclidean:
      break;
    case FrameKind::heisenberg: {
      const int t = 2 * n;
      for (int i = 0; i < n; ++i) {
        J[i](n + i, t) = 2.0;   // d(2 y_i)/d y_i
        J[n + i](i, t) = -2.0;  // d(-2 x_i)/d x_i
      }
      break;
    }
    case FrameKind::heisenberg_greiner: {
      const int t = 2 * n;
      const double g = spec.gamma;
      const double z2 = x.head(2 * n).squaredNorm();
      const double zp1 = std::pow(z2, g - 1.0);  // |z|^(2g-2)
      const double zp2 = (g == 1.0 || z2 == 0.0) ? 0.0 : std::pow(z2, g - 2.0);
      for (int i = 0; i < n; ++i) {
        for (int kk = 0; kk < 2 * n; ++kk) {
          J[i](kk, t) = 4.0 * g * (g - 1.0) * x[n + i] * x[kk] * zp2;
          J[n + i](kk, t) = -4.0 * g * (g - 1.0) * x[i] * x[kk] * zp2;
        }
        J[i](n + i, t) += 2.0 * g * zp1;
        J[n + i](i, t) += -2.0 * g * zp1;
      }
      break;
    }
    case FrameKind::baouendi_grushin: {
      const double g = spec.gamma;
      const double rx2 = x.head(n).squaredNorm();
      const double c =
          (g == 0.0 || rx2 == 0.0) ? 0.0
                                   : (1.0 + g) * g * std::pow(rx2, 0.5 * g - 1.0);
      for (int j = 0; j < spec.k; ++j)
        for (int i = 0; i < n; ++i) J[n + j](i, n + j) = c * x[i];
      break;
    }
  }
  return J;
}

Vec Frame::dilate(const Vec& x, double lambda) const {
  Vec y(x.size());
  for (int i = 0; i < x.size(); ++i)
    y[i] = x[i] * std::pow(lambda, dilation_exponents[i]);
  return y;
}

// ---------------------------------------------------------------------------
// make_frame
// ---------------------------------------------------------------------------

Geometry make_frame(const FrameSpec& spec) {
  Frame f;
  f.spec = spec;
  switch (spec.kind) {
    case FrameKind::euclidean: {
      require(spec.n >= 1, "euclidean: dimension must be >= 1");
      f.ambient_dim = spec.n;
      f.horizontal_dim = spec.n;
      f.Q = spec.n;
      f.dilation_exponents = Eigen::ArrayXd::Ones(spec.n);
      return Geometry{f, Gauge(spec.n, 0, 2.0, f.Q)};
    }
    case FrameKind::heisenberg: {
      require(spec.n >= 1, "heisenberg: n must be >= 1");
      const int N = 2 * spec.n + 1;
      f.ambient_dim = N;
      f.horizontal_dim = 2 * spec.n;
      f.Q = 2 * spec.n + 2;
      f.dilation_exponents = Eigen::ArrayXd::Ones(N);
      f.dilation_exponents[N - 1] = 2.0;
      return Geometry{f, Gauge(2 * spec.n, 1, 4.0, f.Q)};
    }
    case FrameKind::heisenberg_greiner: {
      require(spec.n >= 1, "heisenberg_greiner: n must be >= 1");
      require(is_finite(spec.gamma) && spec.gamma >= 1.0,
              "heisenberg_greiner: gamma must be >= 1");
      const int N = 2 * spec.n + 1;
      f.ambient_dim = N;
      f.horizontal_dim = 2 * spec.n;
      f.Q = 2 * spec.n + 2 * spec.gamma;
      f.dilation_exponents = Eigen::ArrayXd::Ones(N);
      f.dilation_exponents[N - 1] = 2.0 * spec.gamma;
      return Geometry{f, Gauge(2 * spec.n, 1, 4.0 * spec.gamma, f.Q)};
    }
    case FrameKind::baouendi_grushin: {
      require(spec.n >= 1, "baouendi_grushin: n must be >= 1");
      require(spec.k >= 0, "baouendi_grushin: k must be >= 0");
      require(is_finite(spec.gamma) && spec.gamma >= 0.0,
              "baouendi_grushin: gamma must be >= 0");
      const int N = spec.n + spec.k;
      f.ambient_dim = N;
      f.horizontal_dim = N;
      f.Q = spec.n + (1.0 + spec.gamma) * spec.k;
      f.dilation_exponents = Eigen::ArrayXd::Ones(N);
      for (int j = 0; j < spec.k; ++j)
        f.dilation_exponents[spec.n + j] = 1.0 + spec.gamma;
      return Geometry{f, Gauge(spec.n, spec.k, 2.0 + 2.0 * spec.gamma, f.Q)};
    }
  }
  throw ConfigError("make_frame: unreachable frame kind");
}

bool is_degenerate(const Geometry& geo, const Vec& x, double rel_tol) {
  const double d = geo.gauge.value(x);
  if (d < rel_tol) return true;  // origin neighbourhood (callers work at O(1) radii)
  switch (geo.frame.spec.kind) {
    case FrameKind::euclidean:
      return false;
    case FrameKind::heisenberg:
    case FrameKind::heisenberg_greiner:
      return x.head(2 * geo.frame.spec.n).norm() < rel_tol * d;
    case FrameKind::baouendi_grushin:
      if (geo.frame.spec.k == 0 || geo.frame.spec.gamma == 0.0) return false;
      return x.head(geo.frame.spec.n).norm() < rel_tol * d;
  }
  return false;
}

Vec bounding_box(const Geometry& geo, double r) {
  require(r > 0.0 && is_finite(r), "bounding_box: r must be positive");
  Vec hw(geo.frame.ambient_dim);
  for (int i = 0; i < hw.size(); ++i)
    hw[i] = std::pow(r, geo.frame.dilation_exponents[i]);
  return hw;
}

Vec sample_annulus_point(const Geometry& geo, CounterRng& rng, double r_in,
                         double r_out, double min_ratio) {
  require(0.0 <= r_in && r_in < r_out, "sample_annulus_point: bad annulus");
  const Vec hw = bounding_box(geo, r_out);
  Vec x(hw.size());
  for (long attempt = 0; attempt < 200000; ++attempt) {
    for (int i = 0; i < x.size(); ++i) x[i] = rng.uniform(-hw[i], hw[i]);
    const double d = geo.gauge.value(x);
    if (d < r_in || d > r_out) continue;
    if (min_ratio > 0.0 && is_degenerate(geo, x, min_ratio)) continue;
    return x;
  }
  throw NumericalError("sample_annulus_point: rejection sampling stalled");
}

// ---------------------------------------------------------------------------
// Derivatives of test functions
// ---------------------------------------------------------------------------

Vec euclid_gradient_of(const TestFunction& u, const Vec& x) {
  if (u.has_gradient()) return u.gradient(x);
  return fd::gradient(u.value, x);
}

Mat euclid_hessian_of(const TestFunction& u, const Vec& x) {
  if (u.has_hessian()) return u.hessian(x);
  if (u.has_gradient()) return fd::hessian_from_gradient(u.gradient, x);
  return fd::hessian_from_values(u.value, x);
}

Vec horizontal_gradient(const Geometry& geo, const TestFunction& u,
                        const Vec& x) {
  return geo.frame.sigma(x) * euclid_gradient_of(u, x);
}

double apply_L(const Geometry& geo, const TestFunction& u, const Vec& x,
               LPath path) {
  const Vec grad = euclid_gradient_of(u, x);
  const Mat H = euclid_hessian_of(u, x);

  if (path == LPath::heisenberg_decomposition) {
    require(geo.frame.spec.kind == FrameKind::heisenberg,
            "heisenberg_decomposition path requires a heisenberg frame");
    const int n = geo.frame.spec.n;
    const int t = 2 * n;
    double lap_z = 0.0;
    for (int i = 0; i < 2 * n; ++i) lap_z += H(i, i);
    const double z2 = x.head(2 * n).squaredNorm();
    double twist = 0.0;  // d_t(T u), T = sum y_j d/dx_j - x_j d/dy_j
    for (int j = 0; j < n; ++j)
      twist += x[n + j] * H(j, t) - x[j] * H(n + j, t);
    return lap_z + 4.0 * z2 * H(t, t) + 4.0 * twist;
  }

  const Mat A = geo.frame.metric(x);
  return geo.frame.sigma_divergence(x).dot(grad) + A.cwiseProduct(H).sum();
}

double apply_Lp(const Geometry& geo, const TestFunction& u, double p,
                const Vec& x) {
  require(p >= 2.0 && is_finite(p), "apply_Lp: p must be >= 2");
  const Vec grad = euclid_gradient_of(u, x);
  const Mat H = euclid_hessian_of(u, x);
  const Mat S = geo.frame.sigma(x);
  const Mat A = S.transpose() * S;

  const double Lu = geo.frame.sigma_divergence(x).dot(grad) +
                    A.cwiseProduct(H).sum();
  if (p == 2.0) return Lu;

  const Vec v = S * grad;        // grad_L u
  const double g2 = v.squaredNorm();
  if (p < 4.0 && g2 <= 1e-300)
    throw NumericalError(
        "apply_Lp: horizontal gradient vanishes and 2 < p < 4; the "
        "second-derivative form is undefined here");

  // sum_{a,b} v_a v_b X_a X_b u = w^T Hess(u) w + sum_b v_b (w^T Dsigma_b grad),
  // w = sigma^T v.
  const Vec w = S.transpose() * v;
  double form = w.dot(H * w);
  const auto J = geo.frame.sigma_jacobian(x);
  for (int b = 0; b < geo.frame.horizontal_dim; ++b)
    form += v[b] * w.dot(J[b] * grad);

  return std::pow(g2, 0.5 * (p - 2.0)) * Lu +
         (p - 2.0) * std::pow(g2, 0.5 * (p - 4.0)) * form;
}

double radial_operator_apply(const Geometry& geo, const RadialProfile& phi,
                             const Vec& x) {
  const double d = geo.gauge.value(x);
  require(d > 0.0, "radial_operator_apply: x must not be the origin");
  const Vec gd = geo.frame.sigma(x) * geo.gauge.euclid_gradient(x);
  const double Q = geo.frame.Q;
  return gd.squaredNorm() * (phi.d2(d) + (Q - 1.0) * phi.d1(d) / d);
}

double radial_p_operator_apply(const Geometry& geo, const RadialProfile& phi,
                               double p, const Vec& x) {
  require(p >= 2.0, "radial_p_operator_apply: p must be >= 2");
  const double d = geo.gauge.value(x);
  require(d > 0.0, "radial_p_operator_apply: x must not be the origin");
  const Vec gd = geo.frame.sigma(x) * geo.gauge.euclid_gradient(x);
  const double Q = geo.frame.Q;
  const double dp = phi.d1(d);
  return std::pow(gd.squaredNorm(), 0.5 * p) * abs_pow(dp, p - 2.0) *
         ((p - 1.0) * phi.d2(d) + (Q - 1.0) * dp / d);
}

// ---------------------------------------------------------------------------
// Gauge-radial building blocks
// ---------------------------------------------------------------------------

TestFunction make_gauge_power(const Geometry& geo, double a) {
  require(is_finite(a), "make_gauge_power: exponent must be finite");
  const Gauge g = geo.gauge;
  TestFunction u;
  u.value = [g, a](const Vec& x) { return std::pow(g.value(x), a); };
  u.gradient = [g, a](const Vec& x) -> Vec {
    const double d = g.value(x);
    return (a * std::pow(d, a - 1.0)) * g.euclid_gradient(x);
  };
  u.hessian = [g, a](const Vec& x) -> Mat {
    const double d = g.value(x);
    const Vec gd = g.euclid_gradient(x);
    return (a * (a - 1.0) * std::pow(d, a - 2.0)) * (gd * gd.transpose()) +
           (a * std::pow(d, a - 1.0)) * g.euclid_hessian(x);
  };
  u.radial = RadialProfile{
      [a](double r) { return std::pow(r, a); },
      [a](double r) { return a * std::pow(r, a - 1.0); },
      [a](double r) { return a * (a - 1.0) * std::pow(r, a - 2.0); }};
  return u;
}

TestFunction make_gauge_log(const Geometry& geo) {
  const Gauge g = geo.gauge;
  TestFunction u;
  u.value = [g](const Vec& x) { return -std::log(g.value(x)); };
  u.gradient = [g](const Vec& x) -> Vec {
    return (-1.0 / g.value(x)) * g.euclid_gradient(x);
  };
  u.hessian = [g](const Vec& x) -> Mat {
    const double d = g.value(x);
    const Vec gd = g.euclid_gradient(x);
    return (gd * gd.transpose()) / (d * d) - g.euclid_hessian(x) / d;
  };
  u.radial = RadialProfile{[](double r) { return -std::log(r); },
                           [](double r) { return -1.0 / r; },
                           [](double r) { return 1.0 / (r * r); }};
  return u;
}

TestFunction make_fundamental(const Geometry& geo, double p) {
  require(p >= 2.0 && is_finite(p), "make_fundamental: p must be >= 2");
  const double Q = geo.frame.Q;
  if (std::abs(p - Q) < 1e-12) return make_gauge_log(geo);
  return make_gauge_power(geo, (p - Q) / (p - 1.0));
}

}  // namespace hrlab::frames
