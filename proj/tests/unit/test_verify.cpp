// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fpcode/construct.hpp"
#include "fpcode/envelope.hpp"
#include "fpcode/rng.hpp"
#include "fpcode/verify.hpp"

using namespace fpcode;

TEST_SUITE("verify") {

TEST_CASE("check_prop1 follows the strict integer inequalities") {
  // Two singleton groups with fully differing rows: d1 = n = 3.
  TwoLevelCode far(3, 3, 2, 1, {0, 0, 0, 1, 1, 1});
  CHECK(check_prop1(far, 2, 1));  // 3*4 > 3*3 and the d2 sentinel is vacuous

  // d1 = 2 of n = 3 is not enough for t1 = 2: 2*4 = 8 <= 9.
  TwoLevelCode near(3, 3, 2, 1, {0, 0, 0, 1, 1, 0});
  CHECK_FALSE(check_prop1(near, 2, 1));

  // Boundary equality must fail: d1 = 3, n = 4, t1 = 2 gives 12 = 12.
  TwoLevelCode edge(2, 4, 2, 1, {0, 0, 0, 0, 1, 1, 1, 0});
  CHECK_FALSE(check_prop1(edge, 2, 1));

  // One step past the boundary passes: d1 = 4 = n.
  TwoLevelCode past(2, 4, 2, 1, {0, 0, 0, 0, 1, 1, 1, 1});
  CHECK(check_prop1(past, 2, 1));
}

TEST_CASE("check_prop1 tests both levels and honors sentinels") {
  // Two groups of two members; rows chosen so d1 = 4 (cross-group pairs all
  // differ everywhere) and d2 = 2 (members differ in half the coordinates).
  std::vector<std::uint8_t> flat{
      0, 0, 0, 0,  // (0,0)
      0, 0, 1, 1,  // (0,1)
      2, 2, 2, 2,  // (1,0)
      2, 2, 3, 3,  // (1,1)
  };
  TwoLevelCode code(4, 4, 2, 2, flat);
  DistanceProfile prof = min_distances(code);
  REQUIRE(prof.d1 == 4);
  REQUIRE(prof.d2 == 2);
  // t1 = 3, t2 = 2: level one needs 4*9 > 4*8 (holds); level two needs
  // 2*4 > 4*3 (fails).
  CHECK_FALSE(check_prop1(code, 3, 2));
  // t1 = 2, t2 = 1: the t2 = 1 condition is 2*1 > 0.
  CHECK(check_prop1(code, 2, 1));

  // Single group: d1 is undefined and must pass vacuously.
  TwoLevelCode one_group(4, 4, 1, 2, {0, 0, 0, 0, 1, 1, 1, 1});
  CHECK(check_prop1(one_group, 3, 2));  // d2 = 4: 4*4 > 4*3

  // Preconditions on the coalition bounds.
  CHECK_THROWS_AS(check_prop1(code, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(check_prop1(code, 1, 0), std::invalid_argument);
}

TEST_CASE("exhaustive verification certifies a clean code") {
  // Three singleton groups, mutually differing everywhere. Any coalition of
  // two leaves the third row at distance n, never a minimizer.
  TwoLevelCode code(3, 3, 3, 1, {0, 0, 0, 1, 1, 1, 2, 2, 2});
  TAVerdict v = verify_ta_exhaustive(code, 2, 1);
  CHECK(v.holds);
  CHECK(v.t1 == 2);
  CHECK(v.t2 == 1);
  CHECK_FALSE(v.counterexample.has_value());
  // 3 singletons + 3 pairs; singleton envelopes have one word, pair
  // envelopes 2^3 = 8.
  CHECK(v.coalitions_checked == 6);
  CHECK(v.forgeries_checked == 3 * 1 + 3 * 8);
}

TEST_CASE("exhaustive verification finds the lex-first counterexample") {
  // Rows (0,0), (1,1), (0,1). The pair {(0,0),(1,0)} can forge (0,1),
  // which decodes to the innocent third group.
  TwoLevelCode code(2, 2, 3, 1, {0, 0, 1, 1, 0, 1});
  TAVerdict v = verify_ta_exhaustive(code, 2, 1);
  CHECK_FALSE(v.holds);
  REQUIRE(v.counterexample.has_value());
  const Counterexample& cx = *v.counterexample;
  CHECK(cx.part == "group");
  CHECK(cx.coalition == std::vector<UserId>{{0, 0}, {1, 0}});
  CHECK(cx.forgery.symbols == std::vector<std::uint8_t>{0, 1});
  CHECK(cx.distance == 0);
  CHECK(cx.offenders == std::vector<UserId>{{2, 0}});
}

TEST_CASE("verdicts and canonical work counts are worker invariant") {
  TwoLevelCode bad(2, 2, 3, 1, {0, 0, 1, 1, 0, 1});
  ConstructionParams p{3, 4, 2, 2, 1.0, 42};
  TwoLevelCode rnd = build_random_two_level(p);
  for (const TwoLevelCode& code : {bad, rnd}) {
    TAVerdict base = verify_ta_exhaustive(code, 2, 1, {100'000'000, 1});
    for (unsigned workers : {2u, 4u, 8u}) {
      TAVerdict v = verify_ta_exhaustive(code, 2, 1, {100'000'000, workers});
      CHECK(v.holds == base.holds);
      CHECK(v.coalitions_checked == base.coalitions_checked);
      CHECK(v.forgeries_checked == base.forgeries_checked);
      CHECK(v.counterexample.has_value() == base.counterexample.has_value());
      if (v.counterexample && base.counterexample) {
        CHECK(v.counterexample->part == base.counterexample->part);
        CHECK(v.counterexample->coalition == base.counterexample->coalition);
        CHECK(v.counterexample->forgery == base.counterexample->forgery);
        CHECK(v.counterexample->offenders == base.counterexample->offenders);
      }
    }
  }
}

TEST_CASE("oversized scans are refused up front") {
  ConstructionParams p{4, 16, 4, 4, 1.0, 7};
  TwoLevelCode code = build_random_two_level(p);
  CHECK_THROWS_AS(verify_ta_exhaustive(code, 3, 2, {1000, 1}),
                  WorkLimitError);
  try {
    verify_ta_exhaustive(code, 3, 2, {1000, 1});
  } catch (const WorkLimitError& e) {
    CHECK(e.estimated_work > 1000.0);
  }
}

TEST_CASE("sufficient distance conditions imply the exhaustive verdict") {
  rng::Stream s(404, rng::Role::search);
  int certified = 0;
  for (int rep = 0; rep < 40 && certified < 5; ++rep) {
    ConstructionParams p{static_cast<std::uint8_t>(8 + s.bounded(9)),
                         static_cast<std::uint32_t>(4 + s.bounded(3)),
                         2,
                         2,
                         1.0,
                         s.next()};
    TwoLevelCode code = build_random_two_level(p);
    if (!check_prop1(code, 2, 1)) continue;
    ++certified;
    TAVerdict v = verify_ta_exhaustive(code, 2, 1);
    CHECK(v.holds);
  }
  CHECK(certified >= 5);
}

TEST_CASE("one_per_group_subcode keeps the chosen member of each group") {
  ConstructionParams p{5, 6, 3, 2, 0.5, 11};
  TwoLevelCode code = build_random_two_level(p);
  std::vector<std::uint32_t> pick{1, 0, 1};
  TwoLevelCode sub = one_per_group_subcode(code, pick);
  CHECK(sub.m1() == 3);
  CHECK(sub.m2() == 1);
  CHECK(sub.q() == code.q());
  CHECK(sub.n() == code.n());
  CHECK_FALSE(sub.provenance().has_value());
  for (std::uint32_t g = 0; g < 3; ++g)
    CHECK(sub.fingerprint({g, 0}) == code.fingerprint({g, pick[g]}));

  CHECK_THROWS_AS(one_per_group_subcode(code, std::vector<std::uint32_t>{0}),
                  std::invalid_argument);
  std::vector<std::uint32_t> oob{0, 2, 0};
  CHECK_THROWS_AS(one_per_group_subcode(code, oob), std::invalid_argument);
}

TEST_CASE("regroup_one_level reinterprets rows without moving them") {
  ConstructionParams p{4, 6, 2, 3, 0.5, 13};
  TwoLevelCode code = build_random_two_level(p);
  TwoLevelCode flat_code = regroup_one_level(code, 1, 6);
  CHECK(flat_code.m1() == 1);
  CHECK(flat_code.m2() == 6);
  CHECK(flat_code.flat() == code.flat());
  TwoLevelCode tall = regroup_one_level(code, 6, 1);
  CHECK(tall.flat() == code.flat());
  // d over all pairs is invariant under regrouping.
  CHECK(min_distances(tall).d == min_distances(code).d);
  CHECK_THROWS_AS(regroup_one_level(code, 4, 2), std::invalid_argument);
}

}  // TEST_SUITE
