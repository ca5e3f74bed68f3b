#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hrlab/common.hpp"

namespace hrlab::frames {

// ---------------------------------------------------------------------------
// Frame families.
//
//   euclidean(N)                X_i = d/dx_i, gauge |x|, Q = N
//   heisenberg(n)               X_j = d/dx_j + 2 y_j d/dt,
//                               Y_j = d/dy_j - 2 x_j d/dt on R^(2n+1),
//                               Koranyi gauge (|z|^4 + t^2)^(1/4), Q = 2n+2
//   heisenberg_greiner(n,g)     X_j = d/dx_j + 2g y_j |z|^(2g-2) d/dt, ... ,
//                               gauge (|z|^(4g) + t^2)^(1/(4g)), Q = 2n+2g,
//                               g >= 1
//   baouendi_grushin(n,k,g)     grad_L = (grad_x, (1+g)|x|^g grad_y) on
//                               R^(n+k), gauge (|x|^(2+2g) + |y|^2)^(1/(2+2g)),
//                               Q = n + (1+g)k, g >= 0
//
// Coordinates are ordered (x_1..x_n, y_1..y_n, t) for the Heisenberg families
// and (x_1..x_n, y_1..y_k) for Baouendi-Grushin.
// ---------------------------------------------------------------------------

enum class FrameKind { euclidean, heisenberg, heisenberg_greiner, baouendi_grushin };

struct FrameSpec {
  FrameKind kind = FrameKind::euclidean;
  int n = 1;
  int k = 0;
  double gamma = 0.0;

  // Parses "euclidean:5", "heisenberg:2", "heisenberg_greiner:1,2",
  // "baouendi_grushin:2,1,1".  Throws ConfigError on malformed input.
  static FrameSpec parse(const std::string& text);
  std::string to_string() const;
};

// Homogeneous gauge of the parametric form
//   d(x) = (|x_A|^m + |x_B|^2)^(1/m),
// which covers all four families (Euclidean: m = 2, B empty; Koranyi: m = 4;
// Greiner: m = 4g; Grushin: m = 2 + 2g).  Gradient and Hessian are closed
// forms; both are validated against finite differences in the test suite.
class Gauge {
 public:
  Gauge(int dim_a, int dim_b, double m, double Q);

  double value(const Vec& x) const;
  Vec euclid_gradient(const Vec& x) const;
  Mat euclid_hessian(const Vec& x) const;

  // Homogeneous dimension Q: d(delta_lambda x) = lambda d(x) and the volume of
  // {d <= r} scales like r^Q.
  double gauge_exponent() const { return Q_; }

  int dim() const { return dim_a_ + dim_b_; }
  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  double m() const { return m_; }

 private:
  int dim_a_, dim_b_;
  double m_, Q_;
};

struct Frame {
  FrameSpec spec;
  int ambient_dim = 0;    // N
  int horizontal_dim = 0; // number of vector fields
  double Q = 0.0;         // homogeneous dimension
  Eigen::ArrayXd dilation_exponents;  // delta_lambda x_i = lambda^(w_i) x_i

  // Coefficient matrix: row b holds the coefficients of X_b in d/dx_j.
  Mat sigma(const Vec& x) const;

  // A = sigma^T sigma.
  Mat metric(const Vec& x) const;

  // j-th entry: sum_i d_i A_{ij}, the column divergences of A.  Identically
  // zero for all four built-in families (verified against FD in tests); kept
  // as a map so the divergence-form assembly reads off the general formula.
  Vec sigma_divergence(const Vec& x) const;

  // Entry [b](i,j) = d sigma_{bj} / d x_i; used to assemble second-order
  // horizontal derivatives X_a X_b u from Euclidean derivatives of u.
  std::vector<Mat> sigma_jacobian(const Vec& x) const;

  Vec dilate(const Vec& x, double lambda) const;
};

struct Geometry {
  Frame frame;
  Gauge gauge;
};

// Builds the frame + gauge pair; throws ConfigError for invalid parameters
// (n < 1, Greiner gamma < 1, Grushin gamma < 0 or k < 0).
Geometry make_frame(const FrameSpec& spec);

// True near the set where the horizontal gradient of the gauge degenerates:
// within rel_tol of the origin in gauge distance, or (Heisenberg/Greiner)
// |z| < rel_tol * d, or (Grushin) |x| < rel_tol * d.
bool is_degenerate(const Geometry& geo, const Vec& x, double rel_tol = 1e-3);

// Half-widths of the tight coordinate box containing {d <= r}:
// box_i = r^(w_i) with w the dilation exponents.  Exactly dilation-covariant,
// so box volumes scale as r^Q.
Vec bounding_box(const Geometry& geo, double r);

// Uniform random point of {r_in <= d <= r_out} conditioned away from the
// degenerate set (rejection from the bounding box).  Used by tests and audits.
Vec sample_annulus_point(const Geometry& geo, CounterRng& rng, double r_in,
                         double r_out, double min_ratio = 1e-3);

// ---------------------------------------------------------------------------
// Test functions and differential operators.
// ---------------------------------------------------------------------------

struct RadialProfile {
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

struct TestFunction {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;  // optional; FD fallback when empty
  std::function<Mat(const Vec&)> hessian;   // optional; FD fallback when empty

  // Set when u = phi(d(.)) for the gauge of the geometry the function was
  // built for; enables the 1-D radial reductions.
  std::optional<RadialProfile> radial;

  // Support annulus in gauge distance; value must vanish outside.
  double support_r_in = 0.0;
  double support_r_out = std::numeric_limits<double>::infinity();

  bool has_gradient() const { return static_cast<bool>(gradient); }
  bool has_hessian() const { return static_cast<bool>(hessian); }
};

// Euclidean derivatives with FD fallback (analytic closures win when present).
Vec euclid_gradient_of(const TestFunction& u, const Vec& x);
Mat euclid_hessian_of(const TestFunction& u, const Vec& x);

// grad_L u (x) = sigma(x) * grad u(x).
Vec horizontal_gradient(const Geometry& geo, const TestFunction& u, const Vec& x);

enum class LPath {
  divergence_form,            // sigma_divergence . grad u + A : Hess u
  heisenberg_decomposition,   // Delta_z u + 4|z|^2 u_tt + 4 d_t(T u); Heisenberg only
};

// L u = Div(A grad u), assembled per the selected path.
double apply_L(const Geometry& geo, const TestFunction& u, const Vec& x,
               LPath path = LPath::divergence_form);

// L_p u = |grad_L u|^(p-2) L u
//        + (p-2) |grad_L u|^(p-4) sum_{a,b} (X_a u)(X_b u) X_a X_b u.
// Throws NumericalError when 2 < p < 4 and |grad_L u| vanishes at x (the
// quadratic-form factor is then not defined); p = 2 reduces to apply_L.
double apply_Lp(const Geometry& geo, const TestFunction& u, double p,
                const Vec& x);

// Closed radial forms for u = phi(d):
//   L  (phi o d) = |grad_L d|^2 ( phi'' + (Q-1) phi'/d )
//   L_p(phi o d) = |grad_L d|^p |phi'|^(p-2) ( (p-1) phi'' + (Q-1) phi'/d )
// Tests assert these agree with the generic assemblies above.
double radial_operator_apply(const Geometry& geo, const RadialProfile& phi,
                             const Vec& x);
double radial_p_operator_apply(const Geometry& geo, const RadialProfile& phi,
                               double p, const Vec& x);

// u = d^a with fully analytic Euclidean derivatives (chain rule through the
// gauge gradient/Hessian).
TestFunction make_gauge_power(const Geometry& geo, double a);

// u = -ln d, the logarithmic profile for the conformal case p = Q.
TestFunction make_gauge_log(const Geometry& geo);

// The L_p-harmonic profile: d^((p-Q)/(p-1)) for p != Q, -ln d for p == Q.
TestFunction make_fundamental(const Geometry& geo, double p);

}  // namespace hrlab::frames
