// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fpcode/construct.hpp"
#include "fpcode/decode.hpp"
#include "fpcode/kernels.hpp"
#include "fpcode/rng.hpp"

using namespace fpcode;

namespace {

// Slow reference: scan every row, track the minimum and all rows attaining it.
MinimizerSet naive_minimizers(const TwoLevelCode& code, const Fingerprint& y) {
  MinimizerSet out;
  out.distance = std::numeric_limits<std::uint32_t>::max();
  for (std::uint64_t r = 0; r < code.user_count(); ++r) {
    std::uint32_t d =
        kernels::hamming(code.row_at(r).data(), y.symbols.data(), code.n());
    if (d < out.distance) {
      out.distance = d;
      out.rows.assign(1, r);
    } else if (d == out.distance) {
      out.rows.push_back(r);
    }
  }
  return out;
}

Fingerprint random_word(std::uint8_t q, std::uint32_t n, rng::Stream& s) {
  Fingerprint y{q, std::vector<std::uint8_t>(n)};
  for (auto& sym : y.symbols) sym = static_cast<std::uint8_t>(s.bounded(q));
  return y;
}

}  // namespace

TEST_SUITE("decode") {

TEST_CASE("find_minimizers matches a naive scan on random codes") {
  rng::Stream s(77, rng::Role::search);
  for (int rep = 0; rep < 30; ++rep) {
    ConstructionParams p{static_cast<std::uint8_t>(2 + s.bounded(4)),
                         static_cast<std::uint32_t>(2 + s.bounded(6)),
                         static_cast<std::uint32_t>(1 + s.bounded(3)),
                         static_cast<std::uint32_t>(1 + s.bounded(3)),
                         1.0,
                         s.next()};
    TwoLevelCode code = build_random_two_level(p);
    Fingerprint y = random_word(code.q(), code.n(), s);
    MinimizerSet got = find_minimizers(code, y);
    MinimizerSet want = naive_minimizers(code, y);
    CHECK(got.distance == want.distance);
    CHECK(got.rows == want.rows);
  }
}

TEST_CASE("md_decode returns the unique closest user") {
  std::vector<std::uint8_t> flat{
      0, 0, 0,  // (0,0)
      1, 1, 1,  // (0,1)
      2, 2, 2,  // (1,0)
      0, 1, 2,  // (1,1)
  };
  TwoLevelCode code(3, 3, 2, 2, flat);
  Fingerprint y{3, {1, 1, 0}};
  DecodeResult r = md_decode(code, y, TieBreak::lex_first);
  REQUIRE(r.user.has_value());
  CHECK(*r.user == UserId{0, 1});
  CHECK(r.distance == 1);
  CHECK(r.tie_count == 1);
}

TEST_CASE("lex_first resolves ties to the smallest user pair") {
  std::vector<std::uint8_t> flat{
      0, 0, 0,  // (0,0)
      1, 1, 0,  // (0,1)
      1, 0, 1,  // (1,0)
      0, 1, 1,  // (1,1)
  };
  TwoLevelCode code(2, 3, 2, 2, flat);
  Fingerprint mid{2, {1, 0, 0}};  // distances r0=1 r1=1 r2=1 r3=3
  DecodeResult lex = md_decode(code, mid, TieBreak::lex_first);
  REQUIRE(lex.user.has_value());
  CHECK(*lex.user == UserId{0, 0});
  CHECK(lex.distance == 1);
  CHECK(lex.tie_count == 3);
}

TEST_CASE("strict_fail reports failure exactly on genuine ties") {
  std::vector<std::uint8_t> flat{
      0, 0, 0,  // (0,0)
      1, 1, 0,  // (0,1)
      1, 0, 1,  // (1,0)
      0, 1, 1,  // (1,1)
  };
  TwoLevelCode code(2, 3, 2, 2, flat);

  Fingerprint unique{2, {1, 1, 0}};  // r1 alone at distance 0
  DecodeResult hit = md_decode(code, unique, TieBreak::strict_fail);
  REQUIRE(hit.user.has_value());
  CHECK(*hit.user == UserId{0, 1});
  CHECK(hit.tie_count == 1);

  Fingerprint mid{2, {1, 0, 0}};  // r0=1 r1=1 r2=1 r3=3
  DecodeResult fail = md_decode(code, mid, TieBreak::strict_fail);
  CHECK_FALSE(fail.user.has_value());
  CHECK(fail.distance == 1);
  CHECK(fail.tie_count == 3);
}

TEST_CASE("group decoding composes with the user decoder") {
  std::vector<std::uint8_t> flat{
      0, 0, 0,  // (0,0)
      1, 1, 0,  // (0,1)
      1, 0, 1,  // (1,0)
      0, 1, 1,  // (1,1)
  };
  TwoLevelCode code(2, 3, 2, 2, flat);

  Fingerprint mid{2, {1, 0, 0}};  // rows 0,1,2 tie across both groups
  GroupDecodeResult g = md_decode_group(code, mid, TieBreak::strict_fail);
  CHECK_FALSE(g.group.has_value());
  CHECK(g.tie_count == 3);

  GroupDecodeResult glex = md_decode_group(code, mid, TieBreak::lex_first);
  REQUIRE(glex.group.has_value());
  CHECK(*glex.group == 0);

  // A tie confined to one group still fails the composed decoder: the user
  // stage fails first, so no group is emitted.
  std::vector<std::uint8_t> flat2{
      0, 0, 1,  // (0,0)
      0, 1, 0,  // (0,1)
      1, 1, 1,  // (1,0)
      1, 1, 1,  // (1,1) duplicate row in the far group
  };
  TwoLevelCode code2(2, 3, 2, 2, flat2);
  Fingerprint y{2, {0, 0, 0}};  // r0=1 r1=1 r2=3 r3=3
  GroupDecodeResult gg = md_decode_group(code2, y, TieBreak::strict_fail);
  CHECK_FALSE(gg.group.has_value());
  CHECK(gg.distance == 1);
  CHECK(gg.tie_count == 2);

  GroupDecodeResult gglex = md_decode_group(code2, y, TieBreak::lex_first);
  REQUIRE(gglex.group.has_value());
  CHECK(*gglex.group == 0);
}

TEST_CASE("queries must match the code shape") {
  TwoLevelCode code(3, 4, 2, 2, std::vector<std::uint8_t>(16, 0));
  Fingerprint short_y{3, {0, 1}};
  CHECK_THROWS_AS(md_decode(code, short_y, TieBreak::lex_first),
                  std::invalid_argument);
  Fingerprint bad_sym{3, {0, 1, 2, 3}};
  CHECK_THROWS_AS(md_decode(code, bad_sym, TieBreak::lex_first),
                  std::invalid_argument);
  Fingerprint wrong_q{4, {0, 1, 2, 0}};
  CHECK_THROWS_AS(md_decode_group(code, wrong_q, TieBreak::lex_first),
                  std::invalid_argument);
}

}  // TEST_SUITE
