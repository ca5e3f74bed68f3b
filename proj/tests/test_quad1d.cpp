#include <cmath>

#include "doctest.h"
#include "hrlab/common.hpp"
#include "hrlab/quad1d.hpp"

using namespace hrlab;

TEST_SUITE("quad1d") {

TEST_CASE("polynomials and elementary integrals are exact") {
  auto r = quad::integrate([](double x) { return x * x; }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 1.0 / 3.0) <= 1e-14);

  r = quad::integrate([](double x) { return std::sin(x); }, 0.0, M_PI);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0) <= 1e-12);

  // Oscillatory with cancellation.
  r = quad::integrate([](double x) { return std::sin(x); }, 0.0, 10.0 * M_PI);
  CHECK(r.converged);
  CHECK(std::abs(r.value) <= 1e-10);
}

TEST_CASE("integrable endpoint singularities converge") {
  // x^{-1/2}: integral 2.
  auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0,
                           1.0, 1e-12, 1e-10);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0) <= 1e-8);

  // ln x: integral -1.
  r = quad::integrate([](double x) { return std::log(x); }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value + 1.0) <= 1e-8);

  // Interior kink |x - 1/3|^{1/2} handled by adaptivity:
  // primitive (2/3)|x-c|^{3/2} on both sides.
  const double c = 1.0 / 3.0;
  r = quad::integrate(
      [&](double x) { return std::sqrt(std::abs(x - c)); }, 0.0, 1.0, 1e-12,
      1e-10, 20000);
  const double truth =
      (std::pow(c, 1.5) + std::pow(1.0 - c, 1.5)) * 2.0 / 3.0;
  CHECK(r.converged);
  CHECK(std::abs(r.value - truth) <= 1e-9 * truth);
}

TEST_CASE("error estimate is honest when converged") {
  auto r = quad::integrate([](double x) { return std::exp(-x * x); }, -3.0, 3.0);
  const double truth = std::sqrt(M_PI) * std::erf(3.0);
  CHECK(r.converged);
  CHECK(std::abs(r.value - truth) <= std::max(r.error, 1e-13));
}

TEST_CASE("divergent integrands are reported, not silently summed") {
  // 1/x on (0,1) diverges: must not claim convergence.
  auto r = quad::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, 1e-12,
                           1e-10, 2000);
  CHECK_FALSE(r.converged);
  CHECK_THROWS_AS(quad::integrate_or_throw([](double x) { return 1.0 / x; },
                                           0.0, 1.0, 1e-12, 1e-10, 2000),
                  NumericalError);
}

TEST_CASE("power_integral matches the primitive and the adaptive rule") {
  // s = 0 is the logarithmic case.
  CHECK(std::abs(quad::power_integral(0.0, 0.5, 2.0) - std::log(4.0)) <= 1e-14);
  // s = 2: (b^2 - a^2)/2.
  CHECK(std::abs(quad::power_integral(2.0, 1.0, 3.0) - 4.0) <= 1e-14);
  // Fractional, negative exponent vs adaptive quadrature.
  for (const double s : {-1.5, -0.5, 0.25, 1.0, 3.7}) {
    const double direct = quad::integrate_or_throw(
        [&](double r) { return std::pow(r, s - 1.0); }, 0.25, 4.0);
    CHECK(std::abs(quad::power_integral(s, 0.25, 4.0) - direct) <=
          1e-10 * std::abs(direct));
  }
}

}  // TEST_SUITE
