#include "hrlab/fd.hpp"

#include <cmath>

namespace hrlab::fd {

namespace {

const double kEps = std::numeric_limits<double>::epsilon();
const double kGradStep = std::cbrt(kEps);        // ~6.1e-6
const double kHessStep = std::pow(kEps, 0.25);   // ~1.2e-4

// Richardson: D(h), D(h/2) central differences of order h^2 combine to
// (4 D(h/2) - D(h)) / 3 with error O(h^4).
template <typename F>
double richardson(F&& diff, double h) {
  const double d1 = diff(h);
  const double d2 = diff(0.5 * h);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

Vec gradient(const std::function<double(const Vec&)>& u, const Vec& x) {
  const int n = static_cast<int>(x.size());
  Vec g(n);
  Vec xp = x;
  for (int i = 0; i < n; ++i) {
    const double h = kGradStep * (1.0 + std::abs(x[i]));
    auto diff = [&](double hh) {
      xp[i] = x[i] + hh;
      const double up = u(xp);
      xp[i] = x[i] - hh;
      const double um = u(xp);
      xp[i] = x[i];
      return (up - um) / (2.0 * hh);
    };
    g[i] = richardson(diff, h);
  }
  return g;
}

Mat hessian_from_values(const std::function<double(const Vec&)>& u,
                        const Vec& x) {
  const int n = static_cast<int>(x.size());
  Mat H(n, n);
  Vec xp = x;
  const double u0 = u(x);

  for (int i = 0; i < n; ++i) {
    const double hi = kHessStep * (1.0 + std::abs(x[i]));
    auto diag = [&](double hh) {
      xp[i] = x[i] + hh;
      const double up = u(xp);
      xp[i] = x[i] - hh;
      const double um = u(xp);
      xp[i] = x[i];
      return (up - 2.0 * u0 + um) / (hh * hh);
    };
    H(i, i) = richardson(diag, hi);

    for (int j = i + 1; j < n; ++j) {
      const double hj = kHessStep * (1.0 + std::abs(x[j]));
      auto cross = [&](double s) {
        // s scales both steps; the 4-point stencil is O(h^2) accurate.
        const double ai = hi * s, aj = hj * s;
        xp[i] = x[i] + ai;
        xp[j] = x[j] + aj;
        const double upp = u(xp);
        xp[j] = x[j] - aj;
        const double upm = u(xp);
        xp[i] = x[i] - ai;
        const double umm = u(xp);
        xp[j] = x[j] + aj;
        const double ump = u(xp);
        xp[i] = x[i];
        xp[j] = x[j];
        return (upp - upm - ump + umm) / (4.0 * ai * aj);
      };
      const double v = richardson(cross, 1.0);
      H(i, j) = v;
      H(j, i) = v;
    }
  }
  return H;
}

Mat hessian_from_gradient(const std::function<Vec(const Vec&)>& grad,
                          const Vec& x) {
  const int n = static_cast<int>(x.size());
  Mat J(n, n);
  Vec xp = x;
  for (int i = 0; i < n; ++i) {
    const double h = kGradStep * (1.0 + std::abs(x[i]));
    auto diff = [&](double hh) -> Vec {
      xp[i] = x[i] + hh;
      Vec gp = grad(xp);
      xp[i] = x[i] - hh;
      Vec gm = grad(xp);
      xp[i] = x[i];
      return ((gp - gm) / (2.0 * hh)).eval();
    };
    const Vec d1 = diff(h);
    const Vec d2 = diff(0.5 * h);
    J.row(i) = ((4.0 * d2 - d1) / 3.0).transpose();
  }
  return 0.5 * (J + J.transpose());
}

double directional_derivative(const std::function<double(const Vec&)>& u,
                              const Vec& x, const Vec& dir) {
  const double nrm = dir.norm();
  if (nrm == 0.0) return 0.0;
  const Vec e = dir / nrm;
  const double h = kGradStep * (1.0 + x.norm());
  auto diff = [&](double hh) {
    return (u(x + hh * e) - u(x - hh * e)) / (2.0 * hh);
  };
  return nrm * richardson(diff, h);
}

}  // namespace hrlab::fd
