// SPDX-License-Identifier: Apache-2.0
// High-precision reference values were frozen from an independent
// arbitrary-precision evaluation of the same closed forms.
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fpcode/rates.hpp"

using namespace fpcode;
using doctest::Approx;

TEST_SUITE("rates") {

TEST_CASE("entropy_q matches frozen high-precision references") {
  CHECK(entropy_q(0.10, 2) == Approx(0.46899559358928122125).epsilon(1e-14));
  CHECK(entropy_q(0.25, 2) == Approx(0.81127812445913286391).epsilon(1e-14));
  CHECK(entropy_q(0.35, 2) == Approx(0.93406805537549100601).epsilon(1e-14));
  CHECK(entropy_q(0.30, 3) == Approx(0.74531157594782625338).epsilon(1e-14));
  CHECK(entropy_q(0.50, 4) == Approx(0.89624062518028904536).epsilon(1e-14));
  CHECK(entropy_q(1.0 / 3.0, 8) ==
        Approx(0.61802693602456362798).epsilon(1e-14));
  CHECK(entropy_q(0.725, 4) == Approx(0.99882299565872702322).epsilon(1e-14));
  CHECK(entropy_q(0.625, 4) == Approx(0.97251778293784378897).epsilon(1e-14));
}

TEST_CASE("entropy_q anchors and domain") {
  for (std::uint32_t q : {2u, 3u, 4u, 8u, 16u}) {
    CHECK(entropy_q(0.0, q) == 0.0);
    CHECK(entropy_q((q - 1.0) / q, q) == Approx(1.0).epsilon(1e-12));
    // h(1) = log_q(q-1).
    CHECK(entropy_q(1.0, q) ==
          Approx(std::log(q - 1.0) / std::log(double(q))).epsilon(1e-12));
  }
  CHECK(entropy_q(1.0, 2) == Approx(0.0));
  CHECK_THROWS_AS(entropy_q(-0.01, 2), std::invalid_argument);
  CHECK_THROWS_AS(entropy_q(1.01, 2), std::invalid_argument);
  CHECK_THROWS_AS(entropy_q(0.5, 1), std::invalid_argument);
}

TEST_CASE("distance caps follow their closed forms") {
  CHECK(delta1(0.3, 3) == Approx(0.2325).epsilon(1e-14));
  CHECK(delta1(0.5, 4) ==
        Approx(0.5 * (1.0 - 0.25 - 0.25 / 3.0)).epsilon(1e-14));
  CHECK(delta1(0.0, 3) == 0.0);
  CHECK(delta2(0.1, 4) == Approx(0.375).epsilon(1e-14));
  CHECK(delta2(0.9, 3) == Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK_THROWS_AS(delta1(0.3, 2), std::invalid_argument);
  CHECK_THROWS_AS(delta2(1.2, 3), std::invalid_argument);
}

TEST_CASE("phi matches frozen references and validates its domain") {
  CHECK(phi({0.3, 0.4, 0.15, 0.1, 3}) ==
        Approx(0.72953451607058892909).epsilon(1e-14));
  // Interior ratio hits 1 here, exercising the h(1) branch.
  CHECK(phi({0.5, 0.3, 0.2, 0.05, 4}) ==
        Approx(0.68309181231768960252).epsilon(1e-14));
  // Degenerate spans collapse their entropy terms to zero.
  CHECK(phi({0.0, 0.0, 0.0, 0.0, 3}) == Approx(0.0));

  CHECK_THROWS_AS(phi({0.3, 0.4, 0.7, 0.1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(phi({0.3, 0.1, 0.0, 0.2, 3}), std::invalid_argument);
  CHECK_THROWS_AS(phi({0.2, 0.4, 0.15, 0.1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(phi({0.3, 0.1, 0.1, 0.05, 3}), std::invalid_argument);
  CHECK_THROWS_AS(phi({0.3, 0.4, 0.15, 0.1, 2}), std::invalid_argument);
}

TEST_CASE("bound_D matches frozen references and is positive") {
  CHECK(bound_D(0.3, 3) == Approx(0.017035103346429350802).epsilon(1e-13));
  CHECK(bound_D(0.2, 4) == Approx(0.0036731833362179580591).epsilon(1e-13));
  CHECK(bound_D(0.0, 5) == 0.0);
  for (std::uint32_t q : {3u, 4u, 8u})
    for (double omega : {0.1, 0.3, 0.5}) CHECK(bound_D(omega, q) > 0.0);
  CHECK_THROWS_AS(bound_D(0.3, 2), std::invalid_argument);
}

TEST_CASE("two-pirate group-level region matches the closed form") {
  RegionPoint p = region_21(2, 0.1);
  CHECK(p.feasible);
  CHECK(p.r1_sup == Approx(0.065931944624508993992).epsilon(1e-13));
  CHECK(p.r2_sup == Approx(0.46899559358928122125).epsilon(1e-13));

  RegionPoint boundary = region_21(2, 0.25);
  CHECK(boundary.feasible);
  CHECK(boundary.r1_sup == Approx(0.0));

  CHECK_FALSE(region_21(2, 0.26).feasible);
  CHECK_FALSE(region_21(2, -0.01).feasible);
  CHECK(region_21(4, 0.3).feasible);  // limit is 3/8 for q = 4
}

TEST_CASE("t-pirate single-accusation region matches the closed form") {
  RegionPoint p = region_t1(4, 3, 0.1);
  CHECK(p.feasible);
  // c = (2/3)(1 - 1/16) = 0.625, so R1 = 1 - h(0.725).
  CHECK(p.r1_sup == Approx(1.0 - 0.99882299565872702322).epsilon(1e-9));
  CHECK(p.r2_sup == entropy_q(0.1, 4));
  CHECK_FALSE(region_t1(4, 3, 0.2).feasible);  // 0.625 + 0.2 > 3/4
  CHECK_THROWS_AS(region_t1(4, 1, 0.1), std::invalid_argument);
}

TEST_CASE("the t = 2 region specializes to the two-pirate region") {
  for (std::uint32_t q : {2u, 3u, 4u, 8u}) {
    for (double omega : {0.0, 0.05, 0.1, 0.2}) {
      RegionPoint a = region_21(q, omega);
      RegionPoint b = region_t1(q, 2, omega);
      REQUIRE(a.feasible == b.feasible);
      if (!a.feasible) continue;
      CHECK(b.r1_sup == Approx(a.r1_sup).epsilon(1e-12));
      CHECK(b.r2_sup == Approx(a.r2_sup).epsilon(1e-12));
    }
  }
}

TEST_CASE("pair-accusation region composes the pieces") {
  SearchCfg light{5e-3, 1, 1, {}};
  // Binding-cap point: the distance cap cuts the search below h(omega).
  RegionPoint p = region_t2(3, 2, 0.3, light);
  CHECK(p.feasible);
  CHECK(p.r1_sup == region_t1(3, 2, 0.3).r1_sup);
  double h = entropy_q(0.3, 3);
  double best = std::max(f1(0.3, 3, light), f2(0.3, 3, light));
  CHECK(p.r2_sup == h - best);
  CHECK(p.r2_sup > 1e-3);
  CHECK(p.r2_sup <= h + 1e-12);
  // Slack-cap point: the stationary candidate is admissible, the search
  // attains h(omega) and the level-2 budget collapses to zero.
  RegionPoint z = region_t2(3, 2, 0.1, light);
  CHECK(z.feasible);
  CHECK(std::abs(z.r2_sup) <= 1e-9);
  CHECK_THROWS_AS(region_t2(2, 3, 0.1, light), std::invalid_argument);
}

TEST_CASE("constrained maximizations respect their envelope bounds") {
  SearchCfg light{5e-3, 1, 1, {}};
  // phi never exceeds h(omega) on the admissible set, so neither search can.
  for (std::uint32_t q : {3u, 4u}) {
    for (double omega : {0.1, 0.3}) {
      double h = entropy_q(omega, q);
      CHECK(f1(omega, q, light) <= h + 1e-9);
      CHECK(f2(omega, q, light) <= h + 1e-9);
    }
  }
  // Small omega leaves the distance cap slack at the low end of the gamma
  // range, where the injected stationary candidate evaluates to h exactly.
  CHECK(f2(0.1, 3, light) == Approx(entropy_q(0.1, 3)).epsilon(1e-9));
  CHECK(f2(0.1, 4, light) == Approx(entropy_q(0.1, 4)).epsilon(1e-9));
  // When the cap binds across the whole range the maximum drops below h.
  CHECK(f1(0.1, 3, light) < entropy_q(0.1, 3) - 1e-3);
  CHECK(f2(0.3, 3, light) < entropy_q(0.3, 3) - 1e-3);
  // Refining the grid can only help, up to tie-breaking noise.
  SearchCfg finer{2.5e-3, 2, 1, {}};
  CHECK(f1(0.1, 3, finer) >= f1(0.1, 3, light) - 1e-9);
  CHECK(f2(0.3, 4, finer) >= f2(0.3, 4, light) - 1e-9);
}

TEST_CASE("region tables carry reference columns only for the binary case") {
  std::vector<double> omegas{0.0, 0.1, 0.3};
  std::string csv = emit_region(2, 2, 1, omegas);
  CHECK(csv.rfind("omega,R1_sup,R2_sup,feasible,ref_R1_plus_R2,ref_R1_upper,"
                  "ref_R1_plus_R2_md\n",
                  0) == 0);
  CHECK(csv.find(",1,0.25,0.188\n") != std::string::npos);
  // omega = 0.3 > 0.25 is infeasible: empty rate cells, flag 0.
  CHECK(csv.find("0.3,,,0,1,0.25,0.188\n") != std::string::npos);

  std::string plain = emit_region(3, 2, 1, omegas);
  CHECK(plain.rfind("omega,R1_sup,R2_sup,feasible\n", 0) == 0);
  CHECK(plain.find("ref_") == std::string::npos);

  CHECK_THROWS_AS(emit_region(3, 3, 3, omegas), std::invalid_argument);
  CHECK_THROWS_AS(emit_region(3, 1, 1, omegas), std::invalid_argument);
  CHECK_THROWS_AS(emit_region(2, 3, 2, omegas), std::invalid_argument);
}

}  // TEST_SUITE
