#include "hrlab/quad1d.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace hrlab::quad {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss rule on [-1, 1]
// (classic QUADPACK qk15 abscissae/weights).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

// One GK15 application on [a, b]; returns (value, error-estimate, had-nan).
bool gk15(const std::function<double(double)>& f, double a, double b,
          double& value, double& error, long& n_evals) {
  const double center = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);

  double fv[15];
  bool ok = true;
  for (int j = 0; j < 7; ++j) {
    double x = hlgth * kXgk[j];
    fv[j] = f(center - x);
    fv[14 - j] = f(center + x);
  }
  fv[7] = f(center);
  n_evals += 15;
  for (double v : fv)
    if (!std::isfinite(v)) ok = false;
  if (!ok) {
    value = std::numeric_limits<double>::quiet_NaN();
    error = std::numeric_limits<double>::infinity();
    return false;
  }

  double resk = 0.0, resabs = 0.0;
  for (int j = 0; j < 7; ++j) {
    resk += kWgk[j] * (fv[j] + fv[14 - j]);
    resabs += kWgk[j] * (std::abs(fv[j]) + std::abs(fv[14 - j]));
  }
  resk += kWgk[7] * fv[7];
  resabs += kWgk[7] * std::abs(fv[7]);

  // Embedded Gauss rule uses the odd Kronrod abscissae (indices 1,3,5) + center.
  double resg = kWg[3] * fv[7];
  for (int j = 0; j < 3; ++j)
    resg += kWg[j] * (fv[2 * j + 1] + fv[13 - 2 * j]);

  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fv[7] - reskh);
  for (int j = 0; j < 7; ++j)
    resasc += kWgk[j] * (std::abs(fv[j] - reskh) + std::abs(fv[14 - j] - reskh));

  value = resk * hlgth;
  resabs *= std::abs(hlgth);
  resasc *= std::abs(hlgth);
  error = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && error != 0.0)
    error = resasc * std::min(1.0, std::pow(200.0 * error / resasc, 1.5));
  const double eps50 = 50.0 * std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / eps50)
    error = std::max(eps50 * resabs, error);
  return true;
}

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int max_intervals) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }

  std::priority_queue<Panel> heap;
  Panel p0{a, b, 0.0, 0.0};
  if (!gk15(f, a, b, p0.value, p0.error, out.n_evals)) {
    out.value = p0.value;
    out.error = p0.error;
    return out;  // NaN encountered; not converged
  }
  double total = p0.value, total_err = p0.error;
  heap.push(p0);

  int n_panels = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         n_panels < max_intervals) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // Interval at machine resolution; cannot split further.
      heap.push(Panel{worst.a, worst.b, worst.value, 0.0});
      total_err -= worst.error;
      continue;
    }
    Panel left{worst.a, mid, 0.0, 0.0}, right{mid, worst.b, 0.0, 0.0};
    bool okl = gk15(f, left.a, left.b, left.value, left.error, out.n_evals);
    bool okr = gk15(f, right.a, right.b, right.value, right.error, out.n_evals);
    if (!okl || !okr) {
      out.value = std::numeric_limits<double>::quiet_NaN();
      out.error = std::numeric_limits<double>::infinity();
      return out;
    }
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++n_panels;
  }

  out.value = sign * total;
  out.error = total_err;
  out.converged = total_err <= std::max(abs_tol, rel_tol * std::abs(total));
  return out;
}

double integrate_or_throw(const std::function<double(double)>& f, double a,
                          double b, double abs_tol, double rel_tol,
                          int max_intervals) {
  QuadResult r = integrate(f, a, b, abs_tol, rel_tol, max_intervals);
  if (!r.converged)
    throw NumericalError("1-D adaptive quadrature failed to converge (err=" +
                         std::to_string(r.error) + ")");
  return r.value;
}

double power_integral(double s, double a, double b) {
  require(a > 0.0 && b >= a, "power_integral needs 0 < a <= b");
  if (s == 0.0) return std::log(b / a);
  return (std::pow(b, s) - std::pow(a, s)) / s;
}

}  // namespace hrlab::quad
