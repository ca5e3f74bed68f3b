#include <cmath>

#include "doctest.h"
#include "hrlab/common.hpp"
#include "hrlab/constants.hpp"
#include "hrlab/frames.hpp"

using namespace hrlab;
using constants::InequalityParams;

TEST_SUITE("constants") {

TEST_CASE("spot values from the closed forms are exact") {
  // |Q - p theta|^p / p^p.
  CHECK(constants::hardy_sharp_constant(InequalityParams::make(2, 1, 5)) ==
        2.25);
  CHECK(constants::hardy_sharp_constant(InequalityParams::make(2, 0, 5)) ==
        6.25);
  CHECK(constants::hardy_sharp_constant(InequalityParams::make(2, 1, 4)) ==
        1.0);
  CHECK(constants::hardy_sharp_constant(InequalityParams::make(3, 1, 4)) ==
        1.0 / 27.0);
  // ((Q - p(theta+2)) (p theta + Q(p-1)) / p^2)^p.
  CHECK(constants::rellich_sharp_constant(InequalityParams::make(2, 0, 5)) ==
        1.5625);
  CHECK(constants::rellich_sharp_constant(InequalityParams::make(2, 0, 6)) ==
        9.0);
  CHECK(constants::rellich_sharp_constant(InequalityParams::make(2, 0, 7)) ==
        27.5625);
  CHECK(constants::rellich_sharp_constant(InequalityParams::make(2, 0, 10)) ==
        225.0);
  // (Q - p(theta+2))^2 / p^2.
  CHECK(constants::auxiliary_hardy_constant(InequalityParams::make(2, 0, 5)) ==
        0.25);
  // Boundary of the product condition: the constant degenerates to zero.
  CHECK(constants::rellich_sharp_constant(InequalityParams::make(2, 0, 4)) ==
        0.0);
}

TEST_CASE("extremal exponents") {
  const auto e = constants::extremal_exponents(InequalityParams::make(2, 1, 5));
  CHECK(e.hardy == -1.5);    // (p theta - Q)/p
  CHECK(e.rellich == 0.5);   // (p(theta+2) - Q)/p
  const auto e2 =
      constants::extremal_exponents(InequalityParams::make(2, 0, 5));
  CHECK(e2.rellich == -0.5);
}

TEST_CASE("the two parameterizations agree over random tuples") {
  CounterRng rng(71, 1);
  for (int i = 0; i < 1000; ++i) {
    const double p = rng.uniform(2.0, 6.0);
    const double theta = rng.uniform(-3.0, 3.0);
    const double Q = 3.0 + std::floor(rng.uniform(0.0, 10.0));
    const auto params = InequalityParams::make(p, theta, Q);
    // Each call cross-asserts beta-form vs Q-form at 1e-12 internally and
    // throws NumericalError on mismatch.
    CHECK_NOTHROW(constants::hardy_sharp_constant(params));
    CHECK_NOTHROW(constants::auxiliary_hardy_constant(params));
    CHECK_NOTHROW(constants::extremal_exponents(params));
    if (constants::rellich_product_factor(params) >= 0.0)
      CHECK_NOTHROW(constants::rellich_sharp_constant(params));
    CHECK(constants::hardy_sharp_constant(params) >= 0.0);
    CHECK(constants::auxiliary_hardy_constant(params) >= 0.0);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(InequalityParams::make(1.5, 0, 5), ConfigError);
  CHECK_THROWS_AS(InequalityParams::make(2, 0, 0.5), ConfigError);
  CHECK_THROWS_AS(
      InequalityParams::make(2, std::numeric_limits<double>::infinity(), 5),
      ConfigError);
  // Violated product condition refuses to produce a constant.
  CHECK(constants::rellich_product_factor(InequalityParams::make(2, 1, 5)) <
        0.0);
  CHECK_THROWS_AS(
      constants::rellich_sharp_constant(InequalityParams::make(2, 1, 5)),
      ConfigError);
}

TEST_CASE("critical parameter notes") {
  // theta = Q/p: the hardy constant vanishes.
  auto notes = constants::critical_notes(InequalityParams::make(2, 2.5, 5));
  REQUIRE(!notes.empty());
  CHECK(notes[0].find("hardy constant vanishes") != std::string::npos);
  // theta = Q/p - 2: rellich/auxiliary vanish.
  notes = constants::critical_notes(InequalityParams::make(2, 0.5, 5));
  REQUIRE(!notes.empty());
  CHECK(notes[0].find("rellich and auxiliary") != std::string::npos);
  // p = Q: logarithmic fundamental profile.
  notes = constants::critical_notes(InequalityParams::make(4, 1, 4));
  bool found = false;
  for (const auto& n : notes) found = found || n.find("logarithm") != std::string::npos;
  CHECK(found);
  // Generic parameters: no notes.
  CHECK(constants::critical_notes(InequalityParams::make(2, 1, 5)).empty());
}

TEST_CASE("rellich admissibility clauses are named") {
  auto spec_of = [](const char* s) { return frames::FrameSpec::parse(s); };

  // Euclidean: only the product condition can fail.
  auto rep = constants::rellich_admissible(InequalityParams::make(2, 0, 5),
                                           spec_of("euclidean:5"));
  CHECK(rep.admissible);
  CHECK(rep.reason() == "admissible");

  rep = constants::rellich_admissible(InequalityParams::make(2, 1, 5),
                                      spec_of("euclidean:5"));
  CHECK_FALSE(rep.admissible);
  CHECK(rep.reason().find("product condition") != std::string::npos);

  // Heisenberg integrability clause, by name: Q > 2p.
  rep = constants::rellich_admissible(InequalityParams::make(2, 0, 4),
                                      spec_of("heisenberg:1"));
  CHECK_FALSE(rep.admissible);
  CHECK(rep.reason().find("Q > 2p") != std::string::npos);

  rep = constants::rellich_admissible(InequalityParams::make(2, 0, 6),
                                      spec_of("heisenberg:2"));
  CHECK(rep.admissible);

  // Greiner bound Q > 2p(2 gamma - 1) + 4(1 - gamma).
  rep = constants::rellich_admissible(InequalityParams::make(2, 0, 6),
                                      spec_of("heisenberg_greiner:1,2"));
  CHECK_FALSE(rep.admissible);
  CHECK(rep.reason().find("2p(2 gamma - 1)") != std::string::npos);

  rep = constants::rellich_admissible(InequalityParams::make(2, 0, 10),
                                      spec_of("heisenberg_greiner:3,2"));
  CHECK(rep.admissible);

  // Grushin bound Q > 2 gamma (p-1) + (1+gamma) k, active when k >= 1
  // and gamma > 0; the bound is an equality for (2,1,1), p = 2, so the
  // strict inequality fails.
  rep = constants::rellich_admissible(InequalityParams::make(2, 0, 4),
                                      spec_of("baouendi_grushin:2,1,1"));
  CHECK_FALSE(rep.admissible);
  CHECK(rep.reason().find("2 gamma (p-1)") != std::string::npos);

  rep = constants::rellich_admissible(InequalityParams::make(2, 0, 6),
                                      spec_of("baouendi_grushin:4,1,1"));
  CHECK(rep.admissible);

  // gamma = 0 degenerates to a euclidean frame: no integrability clause.
  rep = constants::rellich_admissible(InequalityParams::make(2, 0, 3),
                                      spec_of("baouendi_grushin:2,1,0"));
  CHECK_FALSE(rep.admissible);  // product fails (Q - p(theta+2)) = -1 < 0
  CHECK(rep.reason().find("gamma") == std::string::npos);
}

TEST_CASE("product boundary is admissible with a note") {
  // (Q - p(theta+2)) = 0: constant 0, boundary case, not a refusal.
  const auto rep = constants::rellich_admissible(
      InequalityParams::make(2, 0, 4), frames::FrameSpec::parse("euclidean:4"));
  CHECK(rep.admissible);
  CHECK(!rep.notes.empty());
}

}  // TEST_SUITE
