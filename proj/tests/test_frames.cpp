#include <cmath>

#include "doctest.h"
#include "hrlab/common.hpp"
#include "hrlab/fd.hpp"
#include "hrlab/frames.hpp"

using namespace hrlab;
using frames::FrameKind;
using frames::FrameSpec;
using frames::Geometry;

namespace {

Geometry geo_of(const char* spec) {
  return frames::make_frame(FrameSpec::parse(spec));
}

const char* kAllFrames[] = {"euclidean:3", "heisenberg:1",
                            "heisenberg_greiner:1,2", "baouendi_grushin:2,1,1"};

}  // namespace

TEST_SUITE("frames") {

TEST_CASE("frame spec parsing round-trips and rejects malformed input") {
  auto s = FrameSpec::parse("euclidean:5");
  CHECK(s.kind == FrameKind::euclidean);
  CHECK(s.n == 5);
  CHECK(s.to_string() == "euclidean:5");

  s = FrameSpec::parse("heisenberg_greiner:2,1.5");
  CHECK(s.kind == FrameKind::heisenberg_greiner);
  CHECK(s.n == 2);
  CHECK(s.gamma == 1.5);

  s = FrameSpec::parse("baouendi_grushin:2,1,1");
  CHECK(s.n == 2);
  CHECK(s.k == 1);
  CHECK(s.gamma == 1.0);

  for (const char* bad :
       {"euclidean", "euclidean:", "euclidean:0", "euclidean:-2",
        "euclidean:2.5", "bogus:1", "heisenberg:1,2", "heisenberg_greiner:1",
        "heisenberg_greiner:1,0.5", "baouendi_grushin:1,1",
        "baouendi_grushin:1,1,-0.5", "euclidean:1x"})
    CHECK_THROWS_AS(frames::make_frame(FrameSpec::parse(bad)), ConfigError);
}

TEST_CASE("dimensions and homogeneous dimension per family") {
  auto g = geo_of("euclidean:5");
  CHECK(g.frame.ambient_dim == 5);
  CHECK(g.frame.horizontal_dim == 5);
  CHECK(g.frame.Q == 5.0);

  g = geo_of("heisenberg:1");
  CHECK(g.frame.ambient_dim == 3);
  CHECK(g.frame.horizontal_dim == 2);
  CHECK(g.frame.Q == 4.0);

  g = geo_of("heisenberg:2");
  CHECK(g.frame.Q == 6.0);

  g = geo_of("heisenberg_greiner:1,2");
  CHECK(g.frame.ambient_dim == 3);
  CHECK(g.frame.Q == 6.0);  // 2n + 2 gamma

  g = geo_of("baouendi_grushin:2,1,1");
  CHECK(g.frame.ambient_dim == 3);
  CHECK(g.frame.horizontal_dim == 3);
  CHECK(g.frame.Q == 4.0);  // n + (1+gamma) k

  g = geo_of("baouendi_grushin:1,1,1");
  CHECK(g.frame.Q == 3.0);
}

TEST_CASE("heisenberg coefficient matrix spot value") {
  auto g = geo_of("heisenberg:1");
  Vec x(3);
  x << 1.0, 2.0, 5.0;
  const Mat s = g.frame.sigma(x);
  REQUIRE(s.rows() == 2);
  REQUIRE(s.cols() == 3);
  CHECK(s(0, 0) == 1.0);
  CHECK(s(0, 1) == 0.0);
  CHECK(s(0, 2) == 4.0);   // +2 y
  CHECK(s(1, 0) == 0.0);
  CHECK(s(1, 1) == 1.0);
  CHECK(s(1, 2) == -2.0);  // -2 x
}

TEST_CASE("greiner frame with gamma = 1 is the heisenberg frame") {
  auto gh = geo_of("heisenberg:2");
  auto gg = geo_of("heisenberg_greiner:2,1");
  CHECK(gh.frame.Q == gg.frame.Q);
  CounterRng rng(7, 1);
  for (int i = 0; i < 25; ++i) {
    const Vec x = frames::sample_annulus_point(gh, rng, 0.2, 2.0, 0.0);
    CHECK((gh.frame.sigma(x) - gg.frame.sigma(x)).norm() <= 1e-14);
    CHECK(std::abs(gh.gauge.value(x) - gg.gauge.value(x)) <=
          1e-14 * gh.gauge.value(x));
  }
}

TEST_CASE("gauge is dilation homogeneous of degree one") {
  for (const char* spec : kAllFrames) {
    auto g = geo_of(spec);
    CounterRng rng(11, 2);
    for (int i = 0; i < 50; ++i) {
      const Vec x = frames::sample_annulus_point(g, rng, 0.2, 3.0, 0.0);
      const double lam = rng.uniform(0.25, 4.0);
      const double lhs = g.gauge.value(g.frame.dilate(x, lam));
      const double rhs = lam * g.gauge.value(x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
    }
  }
}

TEST_CASE("gauge gradient and hessian match finite differences") {
  for (const char* spec : kAllFrames) {
    auto g = geo_of(spec);
    CounterRng rng(13, 3);
    auto val = [&](const Vec& y) { return g.gauge.value(y); };
    for (int i = 0; i < 20; ++i) {
      // Stay away from the degenerate set, where the gauge is not smooth.
      const Vec x = frames::sample_annulus_point(g, rng, 0.5, 2.0, 0.3);
      const Vec grad = g.gauge.euclid_gradient(x);
      const Mat hess = g.gauge.euclid_hessian(x);
      const Vec grad_fd = fd::gradient(val, x);
      const Mat hess_fd = fd::hessian_from_gradient(
          [&](const Vec& y) { return g.gauge.euclid_gradient(y); }, x);
      CHECK((grad - grad_fd).norm() <= 1e-7 * std::max(1.0, grad.norm()));
      CHECK((hess - hess_fd).norm() <= 1e-6 * std::max(1.0, hess.norm()));
    }
  }
}

TEST_CASE("coefficient divergence vanishes (checked against FD)") {
  for (const char* spec : kAllFrames) {
    auto g = geo_of(spec);
    CounterRng rng(17, 4);
    const int N = g.frame.ambient_dim;
    for (int i = 0; i < 10; ++i) {
      const Vec x = frames::sample_annulus_point(g, rng, 0.5, 2.0, 0.3);
      CHECK(g.frame.sigma_divergence(x).norm() == 0.0);
      // FD divergence of the metric columns: sum_i d_i A_{ij}.
      for (int j = 0; j < N; ++j) {
        double div = 0.0;
        for (int i2 = 0; i2 < N; ++i2) {
          Vec dir = Vec::Zero(N);
          dir[i2] = 1.0;
          div += fd::directional_derivative(
              [&](const Vec& y) { return g.frame.metric(y)(i2, j); }, x, dir);
        }
        CHECK(std::abs(div) <= 1e-6);
      }
    }
  }
}

TEST_CASE("coefficient jacobian matches finite differences") {
  for (const char* spec : kAllFrames) {
    auto g = geo_of(spec);
    CounterRng rng(19, 5);
    const int N = g.frame.ambient_dim;
    const int h = g.frame.horizontal_dim;
    for (int t = 0; t < 6; ++t) {
      const Vec x = frames::sample_annulus_point(g, rng, 0.5, 2.0, 0.3);
      const auto J = g.frame.sigma_jacobian(x);
      REQUIRE(static_cast<int>(J.size()) == h);
      for (int b = 0; b < h; ++b)
        for (int i = 0; i < N; ++i)
          for (int j = 0; j < N; ++j) {
            Vec dir = Vec::Zero(N);
            dir[i] = 1.0;
            const double fdv = fd::directional_derivative(
                [&](const Vec& y) { return g.frame.sigma(y)(b, j); }, x, dir);
            CHECK(std::abs(J[b](i, j) - fdv) <= 1e-6);
          }
    }
  }
}

TEST_CASE("euclidean operator sanity: L |x|^2 = 2N") {
  auto g = geo_of("euclidean:3");
  auto u = frames::make_gauge_power(g, 2.0);
  CounterRng rng(23, 6);
  for (int i = 0; i < 10; ++i) {
    const Vec x = frames::sample_annulus_point(g, rng, 0.2, 2.0, 0.0);
    CHECK(std::abs(frames::apply_L(g, u, x) - 6.0) <= 1e-9);
  }
}

TEST_CASE("euclidean p-operator sanity: L_p |x| = (N-1)/|x| for p = 3") {
  // |grad u| = 1, so L_p u = (p-1) u'' + (N-1)/|x| with u'' = 0 radially:
  // the closed radial form gives (N-1)/|x| * |u'|^{p-2}.
  auto g = geo_of("euclidean:5");
  auto u = frames::make_gauge_power(g, 1.0);
  CounterRng rng(29, 7);
  for (int i = 0; i < 10; ++i) {
    const Vec x = frames::sample_annulus_point(g, rng, 0.3, 2.0, 0.0);
    const double r = x.norm();
    CHECK(std::abs(frames::apply_Lp(g, u, 3.0, x) - 4.0 / r) <= 1e-8 / r);
  }
}

TEST_CASE("heisenberg sub-laplacian of the gauge at a z-axis point") {
  // At (1,0,0): psi = 1, rho = 1, L rho = (Q-1) psi / rho = 3.
  auto g = geo_of("heisenberg:1");
  auto u = frames::make_gauge_power(g, 1.0);
  Vec x(3);
  x << 1.0, 0.0, 0.0;
  CHECK(std::abs(frames::apply_L(g, u, x) - 3.0) <= 1e-10);
}

TEST_CASE("horizontal gradient of the gauge has the closed-form length") {
  // heisenberg: |grad_L rho| = |z|/rho; greiner: (|z|/rho)^{2 gamma - 1};
  // grushin: (|x|/rho)^gamma.
  CounterRng rng(31, 8);
  auto g = geo_of("heisenberg:1");
  for (int i = 0; i < 30; ++i) {
    const Vec x = frames::sample_annulus_point(g, rng, 0.3, 2.0, 1e-3);
    const double rho = g.gauge.value(x);
    const double z = std::hypot(x[0], x[1]);
    const double ng = (g.frame.sigma(x) * g.gauge.euclid_gradient(x)).norm();
    CHECK(std::abs(ng - z / rho) <= 1e-11);
  }
  g = geo_of("heisenberg_greiner:1,2");
  for (int i = 0; i < 30; ++i) {
    const Vec x = frames::sample_annulus_point(g, rng, 0.3, 2.0, 1e-2);
    const double rho = g.gauge.value(x);
    const double z = std::hypot(x[0], x[1]);
    const double ng = (g.frame.sigma(x) * g.gauge.euclid_gradient(x)).norm();
    CHECK(std::abs(ng - std::pow(z / rho, 3.0)) <= 1e-10);
  }
  g = geo_of("baouendi_grushin:2,1,1");
  for (int i = 0; i < 30; ++i) {
    const Vec x = frames::sample_annulus_point(g, rng, 0.3, 2.0, 1e-2);
    const double rho = g.gauge.value(x);
    const double xa = std::hypot(x[0], x[1]);
    const double ng = (g.frame.sigma(x) * g.gauge.euclid_gradient(x)).norm();
    CHECK(std::abs(ng - xa / rho) <= 1e-10);
  }
}

TEST_CASE("psi lies in [0,1] on the heisenberg group") {
  auto g = geo_of("heisenberg:2");
  CounterRng rng(37, 9);
  for (int i = 0; i < 2000; ++i) {
    const Vec x = frames::sample_annulus_point(g, rng, 0.05, 3.0, 0.0);
    const double psi =
        (g.frame.sigma(x) * g.gauge.euclid_gradient(x)).squaredNorm();
    CHECK(psi >= 0.0);
    CHECK(psi <= 1.0 + 1e-12);
  }
}

TEST_CASE("divergence form agrees with the heisenberg decomposition") {
  auto g = geo_of("heisenberg:2");
  CounterRng rng(41, 10);
  auto u = frames::make_gauge_power(g, 1.3);
  for (int i = 0; i < 20; ++i) {
    const Vec x = frames::sample_annulus_point(g, rng, 0.3, 2.0, 1e-2);
    const double a = frames::apply_L(g, u, x, frames::LPath::divergence_form);
    const double b =
        frames::apply_L(g, u, x, frames::LPath::heisenberg_decomposition);
    CHECK(std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)));
  }
  // The decomposition path is specific to the heisenberg frame.
  auto ge = geo_of("euclidean:3");
  auto ue = frames::make_gauge_power(ge, 1.0);
  Vec xe(3);
  xe << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(
      frames::apply_L(ge, ue, xe, frames::LPath::heisenberg_decomposition),
      ConfigError);
}

TEST_CASE("generic operator assemblies match the closed radial forms") {
  for (const char* spec : kAllFrames) {
    auto g = geo_of(spec);
    CounterRng rng(43, 11);
    for (const double a : {1.7, -0.8}) {
      auto u = frames::make_gauge_power(g, a);
      REQUIRE(u.radial.has_value());
      for (int i = 0; i < 10; ++i) {
        const Vec x = frames::sample_annulus_point(g, rng, 0.4, 2.0, 0.3);
        const double lhs = frames::apply_L(g, u, x);
        const double rhs = frames::radial_operator_apply(g, *u.radial, x);
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
        for (const double p : {2.0, 3.0, 4.0}) {
          const double lp = frames::apply_Lp(g, u, p, x);
          const double rp = frames::radial_p_operator_apply(g, *u.radial, p, x);
          CHECK(std::abs(lp - rp) <= 1e-7 * std::max(1.0, std::abs(rp)));
        }
      }
    }
  }
}

TEST_CASE("finite-difference fallbacks agree with analytic derivatives") {
  auto g = geo_of("heisenberg:1");
  auto u = frames::make_gauge_power(g, 1.5);
  frames::TestFunction value_only;
  value_only.value = u.value;
  CounterRng rng(47, 12);
  for (int i = 0; i < 10; ++i) {
    const Vec x = frames::sample_annulus_point(g, rng, 0.5, 2.0, 0.3);
    const Vec ga = frames::euclid_gradient_of(u, x);
    const Vec gf = frames::euclid_gradient_of(value_only, x);
    CHECK((ga - gf).norm() <= 1e-7 * std::max(1.0, ga.norm()));
    const Mat ha = frames::euclid_hessian_of(u, x);
    const Mat hf = frames::euclid_hessian_of(value_only, x);
    CHECK((ha - hf).norm() <= 1e-5 * std::max(1.0, ha.norm()));
    const double la = frames::apply_L(g, u, x);
    const double lf = frames::apply_L(g, value_only, x);
    CHECK(std::abs(la - lf) <= 1e-5 * std::max(1.0, std::abs(la)));
  }
}

TEST_CASE("gauge identity L_p d = (Q-1) |grad_L d|^p / d") {
  for (const char* spec : kAllFrames) {
    auto g = geo_of(spec);
    auto d = frames::make_gauge_power(g, 1.0);
    CounterRng rng(53, 13);
    for (const double p : {2.0, 3.0, 4.0}) {
      for (int i = 0; i < 20; ++i) {
        const Vec x = frames::sample_annulus_point(g, rng, 0.4, 2.0, 0.3);
        const double lhs = frames::apply_Lp(g, d, p, x);
        const double ng =
            (g.frame.sigma(x) * g.gauge.euclid_gradient(x)).norm();
        const double rhs =
            (g.frame.Q - 1.0) * std::pow(ng, p) / g.gauge.value(x);
        CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("fundamental profile selection switches to the log at p = Q") {
  auto g = geo_of("heisenberg:1");  // Q = 4
  auto f4 = frames::make_fundamental(g, 4.0);
  auto flog = frames::make_gauge_log(g);
  auto f2 = frames::make_fundamental(g, 2.0);
  auto fpow = frames::make_gauge_power(g, (2.0 - 4.0) / (2.0 - 1.0));
  CounterRng rng(59, 14);
  for (int i = 0; i < 10; ++i) {
    const Vec x = frames::sample_annulus_point(g, rng, 0.4, 2.0, 0.1);
    CHECK(std::abs(f4.value(x) - flog.value(x)) <= 1e-12);
    CHECK(std::abs(f2.value(x) - fpow.value(x)) <=
          1e-12 * std::max(1.0, std::abs(fpow.value(x))));
  }
}

TEST_CASE("p-operator guards the degenerate gradient case") {
  // 2 < p < 4 at a critical point of u: |grad u|^{p-4} is not defined.
  auto g = geo_of("euclidean:3");
  frames::TestFunction u;
  u.value = [](const Vec& y) { return y.squaredNorm(); };
  u.gradient = [](const Vec& y) { return Vec(2.0 * y); };
  u.hessian = [](const Vec& y) {
    return Mat(2.0 * Mat::Identity(y.size(), y.size()));
  };
  const Vec origin = Vec::Zero(3);
  CHECK_THROWS_AS(frames::apply_Lp(g, u, 3.0, origin), NumericalError);
  // p = 2 reduces to L and stays defined.
  CHECK(std::abs(frames::apply_Lp(g, u, 2.0, origin) - 6.0) <= 1e-12);
}

TEST_CASE("bounding box is dilation covariant and sampling lands inside") {
  for (const char* spec : kAllFrames) {
    auto g = geo_of(spec);
    const Vec b1 = frames::bounding_box(g, 1.0);
    const Vec b2 = frames::bounding_box(g, 2.0);
    for (int i = 0; i < b1.size(); ++i) {
      const double w = g.frame.dilation_exponents[i];
      CHECK(std::abs(b2[i] - std::pow(2.0, w) * b1[i]) <= 1e-12 * b2[i]);
    }
    CounterRng rng(61, 15);
    for (int i = 0; i < 50; ++i) {
      const Vec x = frames::sample_annulus_point(g, rng, 0.5, 1.5, 0.0);
      const double d = g.gauge.value(x);
      CHECK(d >= 0.5);
      CHECK(d <= 1.5);
    }
  }
}

TEST_CASE("degeneracy predicate flags the characteristic sets") {
  auto g = geo_of("heisenberg:1");
  Vec t_axis(3);
  t_axis << 0.0, 0.0, 1.0;
  CHECK(frames::is_degenerate(g, t_axis, 1e-3));
  Vec generic(3);
  generic << 1.0, 0.5, 0.3;
  CHECK_FALSE(frames::is_degenerate(g, generic, 1e-3));
  CHECK(frames::is_degenerate(g, Vec::Zero(3), 1e-3));

  auto gg = geo_of("baouendi_grushin:2,1,1");
  Vec y_axis(3);
  y_axis << 0.0, 0.0, 1.0;
  CHECK(frames::is_degenerate(gg, y_axis, 1e-3));
}

}  // TEST_SUITE
