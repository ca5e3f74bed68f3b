#include "hrlab/verify.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hrlab/quad1d.hpp"
#include "hrlab/testfns.hpp"

namespace hrlab::verify {

namespace {

// ---------------------------------------------------------------------------
// Radial path: ratios of 1-D integrals (the surface factor cancels)
// ---------------------------------------------------------------------------

struct RadialIntegral {
  double value = 0.0;
  double error = 0.0;  // quadrature error bound
};

RadialIntegral integrate_profile(const std::function<double(double)>& f,
                                 double r_in, double r_out) {
  const auto res = quad::integrate(f, r_in, r_out, 1e-13, 1e-10, 20000);
  if (!res.converged)
    throw NumericalError("radial reduction: 1-D quadrature did not converge");
  return RadialIntegral{res.value, res.error};
}

bool radial_usable(const frames::TestFunction& u) {
  return u.radial.has_value() && u.support_r_in > 0.0 &&
         is_finite(u.support_r_out);
}

void require_mc_support(const frames::TestFunction& u) {
  require(u.support_r_in > 0.0 && is_finite(u.support_r_out),
          "verify: the test function must be compactly supported in a gauge "
          "annulus away from the origin");
}

// Ratio a/b with first-order error propagation from quadrature bounds.
void set_quotient(ChainReport& rep, const RadialIntegral& num,
                  const RadialIntegral& den) {
  rep.quotient = num.value / den.value;
  rep.quotient_std_error =
      std::abs(num.error / den.value) +
      std::abs(rep.quotient * den.error / den.value);
}

// Verdicts for the radial path, where errors are quadrature bounds.
void radial_verdicts(ChainReport& rep) {
  const double slack =
      3.0 * rep.quotient_std_error + 1e-9 * std::max(1.0, rep.sharp_constant);
  rep.quotient_above = rep.quotient >= rep.sharp_constant - slack;
  double lhs_gap = rep.rhs.value - rep.lhs.value;
  if (rep.mid) lhs_gap = std::min(lhs_gap, rep.mid->value - rep.lhs.value);
  const double order_slack =
      rep.lhs.std_error + rep.rhs.std_error +
      1e-9 * std::max({1.0, std::abs(rep.lhs.value), std::abs(rep.rhs.value)});
  rep.chain_ordered = lhs_gap >= -order_slack;
}

// Verdicts for the MC path from the joint estimate: `small` and `big` are
// indices into the MultiEstimate, `scale` multiplies the small side.
void mc_verdicts(ChainReport& rep, const mc::MultiEstimate& est, int den_idx,
                 int rhs_idx, const std::vector<std::pair<int, int>>& order,
                 double constant) {
  // order: list of (small_index, big_index) difference checks, with the
  // den side scaled by the constant when small_index == den_idx.
  rep.chain_ordered = true;
  for (const auto& [si, bi] : order) {
    Vec c = Vec::Zero(est.values.size());
    c[bi] += 1.0;
    c[si] -= (si == den_idx) ? constant : 1.0;
    const mc::Estimate diff = est.linear(c);
    if (!(diff.value >= -3.0 * diff.std_error)) rep.chain_ordered = false;
  }
  const mc::Estimate q = est.ratio(rhs_idx, den_idx);
  rep.quotient = q.value;
  rep.quotient_std_error = q.std_error;
  rep.quotient_above =
      q.value >= constant - 3.0 * q.std_error - 1e-12 * std::max(1.0, constant);
}

mc::Estimate scaled(const mc::Estimate& e, double c) {
  return mc::Estimate{c * e.value, std::abs(c) * e.std_error, e.n};
}

}  // namespace

// ---------------------------------------------------------------------------
// Hardy chain
// ---------------------------------------------------------------------------

ChainReport hardy_chain(const frames::Geometry& geo,
                        const constants::InequalityParams& params,
                        const frames::TestFunction& u, const McSettings& mc) {
  const double p = params.p, theta = params.theta, Q = params.Q;
  require(std::abs(Q - geo.frame.Q) < 1e-12,
          "hardy_chain: params.Q must match the frame");
  ChainReport rep;
  rep.sharp_constant = constants::hardy_sharp_constant(params);

  if (radial_usable(u)) {
    rep.radial_path = true;
    const auto& phi = *u.radial;
    const double r1 = u.support_r_in, r2 = u.support_r_out;
    const auto den = integrate_profile(
        [&](double r) {
          return abs_pow(phi.value(r), p) * std::pow(r, -p * theta + Q - 1.0);
        },
        r1, r2);
    const auto rhs = integrate_profile(
        [&](double r) {
          return abs_pow(phi.d1(r), p) *
                 std::pow(r, -p * (theta - 1.0) + Q - 1.0);
        },
        r1, r2);
    rep.lhs = mc::Estimate{rep.sharp_constant * den.value,
                           rep.sharp_constant * den.error, 0};
    // Radial Cauchy-Schwarz equality: middle integrand == right integrand.
    rep.mid = mc::Estimate{rhs.value, rhs.error, 0};
    rep.rhs = mc::Estimate{rhs.value, rhs.error, 0};
    set_quotient(rep, rhs, den);
    radial_verdicts(rep);
    return rep;
  }

  require_mc_support(u);
  auto f_den = [&](const Vec& x) {
    const double d = geo.gauge.value(x);
    const Vec gd = geo.frame.sigma(x) * geo.gauge.euclid_gradient(x);
    return abs_pow(u.value(x), p) * std::pow(d, -p * theta) *
           std::pow(gd.squaredNorm(), 0.5 * p);
  };
  auto f_mid = [&](const Vec& x) {
    const double d = geo.gauge.value(x);
    const Vec gd = geo.frame.sigma(x) * geo.gauge.euclid_gradient(x);
    const double ng = gd.norm();
    if (ng == 0.0) return 0.0;  // measure-zero degenerate set
    const Vec gu = frames::horizontal_gradient(geo, u, x);
    return abs_pow(gu.dot(gd) / ng, p) * std::pow(d, -p * (theta - 1.0));
  };
  auto f_rhs = [&](const Vec& x) {
    const double d = geo.gauge.value(x);
    const Vec gu = frames::horizontal_gradient(geo, u, x);
    return std::pow(gu.squaredNorm(), 0.5 * p) *
           std::pow(d, -p * (theta - 1.0));
  };
  const auto est = mc::mc_gauge_annulus_multi(
      geo, {f_den, f_mid, f_rhs}, u.support_r_in, u.support_r_out, mc.n,
      mc.seed);
  rep.lhs = scaled(est.component(0), rep.sharp_constant);
  rep.mid = est.component(1);
  rep.rhs = est.component(2);
  mc_verdicts(rep, est, 0, 2, {{0, 1}, {1, 2}}, rep.sharp_constant);
  return rep;
}

// ---------------------------------------------------------------------------
// Auxiliary Hardy (interpolation) inequality
// ---------------------------------------------------------------------------

ChainReport auxiliary_hardy_check(const frames::Geometry& geo,
                                  const constants::InequalityParams& params,
                                  const frames::TestFunction& u,
                                  const McSettings& mc) {
  const double p = params.p, theta = params.theta, Q = params.Q;
  require(std::abs(Q - geo.frame.Q) < 1e-12,
          "auxiliary_hardy_check: params.Q must match the frame");
  ChainReport rep;
  rep.sharp_constant = constants::auxiliary_hardy_constant(params);

  if (radial_usable(u)) {
    rep.radial_path = true;
    const auto& phi = *u.radial;
    const double r1 = u.support_r_in, r2 = u.support_r_out;
    const auto den = integrate_profile(
        [&](double r) {
          return abs_pow(phi.value(r), p) *
                 std::pow(r, -p * (theta + 2.0) + Q - 1.0);
        },
        r1, r2);
    const auto big = integrate_profile(
        [&](double r) {
          const double d1 = phi.d1(r);
          return abs_pow(phi.value(r), p - 2.0) * d1 * d1 *
                 std::pow(r, -(p * theta + 2.0 * p - 2.0) + Q - 1.0);
        },
        r1, r2);
    rep.lhs = mc::Estimate{rep.sharp_constant * den.value,
                           rep.sharp_constant * den.error, 0};
    rep.rhs = mc::Estimate{big.value, big.error, 0};
    set_quotient(rep, big, den);
    radial_verdicts(rep);
    return rep;
  }

  require_mc_support(u);
  auto f_den = [&](const Vec& x) {
    const double d = geo.gauge.value(x);
    const Vec gd = geo.frame.sigma(x) * geo.gauge.euclid_gradient(x);
    return abs_pow(u.value(x), p) * std::pow(d, -p * (theta + 2.0)) *
           gd.squaredNorm();
  };
  auto f_big = [&](const Vec& x) {
    const double d = geo.gauge.value(x);
    const Vec gu = frames::horizontal_gradient(geo, u, x);
    return abs_pow(u.value(x), p - 2.0) * gu.squaredNorm() *
           std::pow(d, -(p * theta + 2.0 * p - 2.0));
  };
  const auto est = mc::mc_gauge_annulus_multi(
      geo, {f_den, f_big}, u.support_r_in, u.support_r_out, mc.n, mc.seed);
  rep.lhs = scaled(est.component(0), rep.sharp_constant);
  rep.rhs = est.component(1);
  mc_verdicts(rep, est, 0, 1, {{0, 1}}, rep.sharp_constant);
  return rep;
}

// ---------------------------------------------------------------------------
// Rellich
// ---------------------------------------------------------------------------

ChainReport rellich_check(const frames::Geometry& geo,
                          const constants::InequalityParams& params,
                          const frames::TestFunction& u, const McSettings& mc) {
  const double p = params.p, theta = params.theta, Q = params.Q;
  require(std::abs(Q - geo.frame.Q) < 1e-12,
          "rellich_check: params.Q must match the frame");
  const auto adm = constants::rellich_admissible(params, geo.frame.spec);
  if (!adm.admissible)
    throw ConfigError("rellich_check: inadmissible parameters: " +
                      adm.reason());
  ChainReport rep;
  rep.sharp_constant = constants::rellich_sharp_constant(params);

  if (radial_usable(u)) {
    rep.radial_path = true;
    const auto& phi = *u.radial;
    const double r1 = u.support_r_in, r2 = u.support_r_out;
    const auto den = integrate_profile(
        [&](double r) {
          return abs_pow(phi.value(r), p) *
                 std::pow(r, -p * (theta + 2.0) + Q - 1.0);
        },
        r1, r2);
    const auto num = integrate_profile(
        [&](double r) {
          const double rad = phi.d2(r) + (Q - 1.0) * phi.d1(r) / r;
          return abs_pow(rad, p) * std::pow(r, -p * theta + Q - 1.0);
        },
        r1, r2);
    rep.lhs = mc::Estimate{rep.sharp_constant * den.value,
                           rep.sharp_constant * den.error, 0};
    rep.rhs = mc::Estimate{num.value, num.error, 0};
    set_quotient(rep, num, den);
    radial_verdicts(rep);
    return rep;
  }

  require_mc_support(u);
  auto f_den = [&](const Vec& x) {
    const double d = geo.gauge.value(x);
    const Vec gd = geo.frame.sigma(x) * geo.gauge.euclid_gradient(x);
    return abs_pow(u.value(x), p) * std::pow(d, -p * (theta + 2.0)) *
           gd.squaredNorm();
  };
  auto f_num = [&](const Vec& x) {
    const double d = geo.gauge.value(x);
    const Vec gd = geo.frame.sigma(x) * geo.gauge.euclid_gradient(x);
    const double ng2 = gd.squaredNorm();
    if (ng2 == 0.0) return 0.0;  // measure-zero degenerate set
    const double Lu = frames::apply_L(geo, u, x);
    return abs_pow(Lu, p) * std::pow(d, -p * theta) *
           std::pow(ng2, -(p - 1.0));
  };
  const auto est = mc::mc_gauge_annulus_multi(
      geo, {f_den, f_num}, u.support_r_in, u.support_r_out, mc.n, mc.seed);
  rep.lhs = scaled(est.component(0), rep.sharp_constant);
  rep.rhs = est.component(1);
  mc_verdicts(rep, est, 0, 1, {{0, 1}}, rep.sharp_constant);
  return rep;
}

// ---------------------------------------------------------------------------
// Sharpness sweep
// ---------------------------------------------------------------------------

namespace {

struct QuotientParts {
  double num = 0.0, num_err = 0.0;
  double den = 0.0, den_err = 0.0;
};

// Rayleigh quotient of u_eps = d^a g_eps(d): plateau contributions in closed
// form (the profiles are exact powers there), transition bands by adaptive
// quadrature.  For the extremal exponent every integrand is exactly
// r^{-1}-homogeneous, which is what makes R(L) = (cL + a)/(L + b) exact.
QuotientParts sweep_quotient(const constants::InequalityParams& params,
                             Inequality which, double a, double eps) {
  const double p = params.p, theta = params.theta, Q = params.Q;
  const testfns::Cutoff g(eps);

  auto phi0 = [&](double r) { return std::pow(r, a) * g.value(r); };
  auto phi1 = [&](double r) {
    return a * std::pow(r, a - 1.0) * g.value(r) + std::pow(r, a) * g.d1(r);
  };
  auto phi2 = [&](double r) {
    return a * (a - 1.0) * std::pow(r, a - 2.0) * g.value(r) +
           2.0 * a * std::pow(r, a - 1.0) * g.d1(r) + std::pow(r, a) * g.d2(r);
  };

  std::function<double(double)> f_num, f_den;
  double s_num, s_den;  // plateau integrals int r^{s-1}
  double c_num;         // plateau coefficient of the numerator
  if (which == Inequality::hardy) {
    f_den = [&, p, theta, Q](double r) {
      return abs_pow(phi0(r), p) * std::pow(r, -p * theta + Q - 1.0);
    };
    f_num = [&, p, theta, Q](double r) {
      return abs_pow(phi1(r), p) * std::pow(r, -p * (theta - 1.0) + Q - 1.0);
    };
    s_den = p * a - p * theta + Q;
    s_num = p * (a - 1.0) - p * (theta - 1.0) + Q;  // == s_den
    c_num = abs_pow(a, p);
  } else {
    f_den = [&, p, theta, Q](double r) {
      return abs_pow(phi0(r), p) * std::pow(r, -p * (theta + 2.0) + Q - 1.0);
    };
    f_num = [&, p, theta, Q](double r) {
      const double rad = phi2(r) + (Q - 1.0) * phi1(r) / r;
      return abs_pow(rad, p) * std::pow(r, -p * theta + Q - 1.0);
    };
    s_den = p * a - p * (theta + 2.0) + Q;
    s_num = p * (a - 2.0) - p * theta + Q;  // == s_den
    c_num = abs_pow(a * (a + Q - 2.0), p);
  }

  QuotientParts parts;
  const double lo = 2.0 * eps, hi = 1.0 / (2.0 * eps);
  parts.den = quad::power_integral(s_den, lo, hi);
  parts.num = c_num * quad::power_integral(s_num, lo, hi);
  for (const auto& band :
       {std::pair<double, double>{eps, lo}, {hi, 1.0 / eps}}) {
    const auto dres =
        quad::integrate(f_den, band.first, band.second, 1e-13, 1e-10, 20000);
    const auto nres =
        quad::integrate(f_num, band.first, band.second, 1e-13, 1e-10, 20000);
    if (!dres.converged || !nres.converged)
      throw NumericalError("sharpness_sweep: transition quadrature failed");
    parts.den += dres.value;
    parts.den_err += dres.error;
    parts.num += nres.value;
    parts.num_err += nres.error;
  }
  return parts;
}

}  // namespace

SweepReport sharpness_sweep(const frames::Geometry& geo,
                            const constants::InequalityParams& params,
                            Inequality which,
                            const std::vector<double>& eps_grid) {
  require(std::abs(params.Q - geo.frame.Q) < 1e-12,
          "sharpness_sweep: params.Q must match the frame");
  require(eps_grid.size() >= 4,
          "sharpness_sweep: the eps grid needs at least 4 points for the "
          "3-parameter fit");
  for (size_t i = 0; i < eps_grid.size(); ++i) {
    require(eps_grid[i] > 0.0 && eps_grid[i] < 0.5,
            "sharpness_sweep: eps values must lie in (0, 1/2)");
    if (i) require(eps_grid[i] < eps_grid[i - 1],
                   "sharpness_sweep: eps grid must be strictly decreasing");
  }

  SweepReport rep;
  rep.which = which;
  const auto exps = constants::extremal_exponents(params);
  const double a =
      which == Inequality::hardy ? exps.hardy : exps.rellich;
  rep.sharp_constant = which == Inequality::hardy
                           ? constants::hardy_sharp_constant(params)
                           : constants::rellich_sharp_constant(params);

  for (const double eps : eps_grid) {
    const auto parts = sweep_quotient(params, which, a, eps);
    SweepPoint pt;
    pt.eps = eps;
    pt.L = -std::log(4.0 * eps * eps);
    pt.quotient = parts.num / parts.den;
    pt.std_error = std::abs(parts.num_err / parts.den) +
                   std::abs(pt.quotient * parts.den_err / parts.den);
    rep.points.push_back(pt);
  }

  // Linearized least squares: R(L+b) = cL + a  =>  [L, 1, -R] . [c,a,b]^T = R L.
  const int n = static_cast<int>(rep.points.size());
  Mat M(n, 3);
  Vec y(n);
  for (int i = 0; i < n; ++i) {
    M(i, 0) = rep.points[i].L;
    M(i, 1) = 1.0;
    M(i, 2) = -rep.points[i].quotient;
    y[i] = rep.points[i].quotient * rep.points[i].L;
  }
  const Vec sol = M.colPivHouseholderQr().solve(y);
  rep.fit = FitModel{sol[0], sol[1], sol[2]};
  rep.fitted_constant = sol[0];

  rep.monotone_decreasing = true;
  for (int i = 1; i < n; ++i) {
    const double slack = 1e-8 * std::max(1.0, std::abs(rep.points[i - 1].quotient));
    if (rep.points[i].quotient > rep.points[i - 1].quotient + slack)
      rep.monotone_decreasing = false;
  }
  rep.bounded_below = true;
  for (const auto& pt : rep.points) {
    const double slack =
        3.0 * pt.std_error + 1e-9 * std::max(1.0, rep.sharp_constant);
    if (pt.quotient < rep.sharp_constant - slack) rep.bounded_below = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Euler-Lagrange residuals
// ---------------------------------------------------------------------------

double euler_lagrange_residual(const frames::Geometry& geo,
                               const constants::InequalityParams& params,
                               Inequality which, const Vec& x,
                               std::optional<double> exponent_override) {
  const double p = params.p, theta = params.theta;
  require(std::abs(params.Q - geo.frame.Q) < 1e-12,
          "euler_lagrange_residual: params.Q must match the frame");
  const auto exps = constants::extremal_exponents(params);
  const double a = exponent_override.value_or(
      which == Inequality::hardy ? exps.hardy : exps.rellich);

  const double d = geo.gauge.value(x);
  const Vec gd = geo.frame.sigma(x) * geo.gauge.euclid_gradient(x);
  const double ng = gd.norm();
  if (!(d > 0.0) || ng < 1e-14)
    throw NumericalError(
        "euler_lagrange_residual: degenerate point (gauge or horizontal "
        "gradient vanishes)");

  const frames::TestFunction u = frames::make_gauge_power(geo, a);

  if (which == Inequality::hardy) {
    // alpha is the stationarity exponent of the theorem, independent of the
    // override, so perturbed exponents give a nonzero residual.
    const double alpha = exps.hardy;
    const Vec gu = frames::horizontal_gradient(geo, u, x);
    const double lhs = gu.dot(gd) / (ng * std::pow(d, theta - 1.0));
    const double rhs = alpha * u.value(x) * ng / std::pow(d, theta);
    return std::abs(lhs - rhs);
  }

  const double factor = constants::rellich_product_factor(params);
  const double Lu = frames::apply_L(geo, u, x);
  const double lhs =
      Lu * std::pow(d, -theta) * std::pow(ng, -2.0 * (p - 1.0) / p);
  const double rhs = factor * u.value(x) * std::pow(d, -(theta + 2.0)) *
                     std::pow(ng, 2.0 / p);
  return std::abs(lhs + rhs);
}

// ---------------------------------------------------------------------------
// Harmonicity audit
// ---------------------------------------------------------------------------

bool HarmonicityReport::pass(double tol_fundamental, double tol_gauge) const {
  for (const auto& row : rows)
    if (row.max_fundamental_residual > tol_fundamental ||
        row.max_gauge_identity_rel > tol_gauge)
      return false;
  return !rows.empty();
}

HarmonicityReport harmonicity_audit(const frames::Geometry& geo,
                                    const std::vector<double>& p_list,
                                    int n_points, std::uint64_t seed) {
  require(n_points >= 1, "harmonicity_audit: need at least one point");
  HarmonicityReport rep;
  const double Q = geo.frame.Q;
  const frames::TestFunction gauge_fn = frames::make_gauge_power(geo, 1.0);

  for (const double p : p_list) {
    require(p >= 2.0, "harmonicity_audit: p must be >= 2");
    const frames::TestFunction gamma = frames::make_fundamental(geo, p);
    CounterRng rng(seed, 0xa0d17 + static_cast<std::uint64_t>(p * 64.0));
    HarmonicityReport::Row row;
    row.p = p;
    row.n_points = n_points;
    for (int i = 0; i < n_points; ++i) {
      const Vec x = frames::sample_annulus_point(geo, rng, 0.5, 2.0, 1e-3);
      row.max_fundamental_residual =
          std::max(row.max_fundamental_residual,
                   std::abs(frames::apply_Lp(geo, gamma, p, x)));
      const double d = geo.gauge.value(x);
      const Vec gd = geo.frame.sigma(x) * geo.gauge.euclid_gradient(x);
      const double expected =
          (Q - 1.0) * std::pow(gd.squaredNorm(), 0.5 * p) / d;
      const double got = frames::apply_Lp(geo, gauge_fn, p, x);
      const double rel =
          std::abs(got - expected) / std::max(std::abs(expected), 1e-300);
      row.max_gauge_identity_rel = std::max(row.max_gauge_identity_rel, rel);
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace hrlab::verify
