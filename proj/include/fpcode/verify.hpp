// SPDX-License-Identifier: Apache-2.0
// Traceability certification: the sufficient distance conditions, the
// exhaustive coalition/forgery oracle, and code reshaping helpers.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fpcode/core.hpp"
#include "fpcode/decode.hpp"

namespace fpcode {

// True iff d1*t1^2 > n*(t1^2 - 1) and d2*t2^2 > n*(t2^2 - 1), evaluated in
// integer arithmetic. Undefined distances count as n + 1 and pass
// vacuously. Requires t1 > t2 >= 1.
bool check_prop1(const TwoLevelCode& code, std::uint32_t t1,
                 std::uint32_t t2);

struct VerifyLimits {
  // Refusal threshold on the total number of (coalition, forgery) pairs.
  std::uint64_t max_work = 100'000'000;
  unsigned workers = 1;
};

struct Counterexample {
  std::vector<UserId> coalition;
  Fingerprint forgery;
  // "user": some minimizer is outside the coalition (fine accusation
  // fails); "group": some minimizer's group is outside the coalition's
  // groups (coarse accusation fails).
  std::string part;
  std::uint32_t distance = 0;
  std::vector<UserId> offenders;
};

struct TAVerdict {
  bool holds = true;
  std::uint32_t t1 = 0;
  std::uint32_t t2 = 0;
  std::uint64_t coalitions_checked = 0;
  std::uint64_t forgeries_checked = 0;
  std::optional<Counterexample> counterexample;
};

// Ground-truth traceability check by enumeration: for every coalition of
// size at most t2 and every word in its envelope, all minimum-distance
// users must lie in the coalition; for size at most t1, all minimizer
// groups must lie in the coalition's groups. Ties are adversarial. The
// reported counterexample is the first one in (coalition size, coalition
// lex, forgery lex) order regardless of worker count, and the work counts
// always reflect that canonical order. Throws WorkLimitError if the scan
// would exceed limits.max_work pairs.
TAVerdict verify_ta_exhaustive(const TwoLevelCode& code, std::uint32_t t1,
                               std::uint32_t t2,
                               const VerifyLimits& limits = {});

// Keeps one chosen member per group: members[g] < M2 selects the survivor
// of group g. Result has M2 = 1 and no provenance.
TwoLevelCode one_per_group_subcode(const TwoLevelCode& code,
                                   std::span<const std::uint32_t> members);

// Reinterprets the same codewords under a new (m1, m2) grouping, row-major.
// Requires m1*m2 to equal the user count.
TwoLevelCode regroup_one_level(const TwoLevelCode& code, std::uint32_t m1,
                               std::uint32_t m2);

}  // namespace fpcode
