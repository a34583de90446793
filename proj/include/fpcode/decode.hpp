// SPDX-License-Identifier: Apache-2.0
// Minimum-distance decoding at the user and group level.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fpcode/core.hpp"

namespace fpcode {

// What to output when several codewords attain the minimum distance.
// lex_first picks the smallest (group, member) pair; strict_fail reports
// a decoding failure instead of guessing.
enum class TieBreak { lex_first, strict_fail };

// Minimum distance and every row index attaining it, in increasing order.
struct MinimizerSet {
  std::uint32_t distance = 0;
  std::vector<std::uint64_t> rows;
};

MinimizerSet find_minimizers(const TwoLevelCode& code, const Fingerprint& y);

struct DecodeResult {
  std::optional<UserId> user;  // empty on a strict-fail tie
  std::uint32_t distance = 0;
  std::uint64_t tie_count = 1;
};

struct GroupDecodeResult {
  std::optional<std::uint32_t> group;
  std::uint32_t distance = 0;
  std::uint64_t tie_count = 1;
};

// Closest codeword under the given tie policy.
DecodeResult md_decode(const TwoLevelCode& code, const Fingerprint& y,
                       TieBreak tb);

// Composition of the user decoder with the group map: the group of the
// decoded user, or a failure when the user decoder fails.
GroupDecodeResult md_decode_group(const TwoLevelCode& code,
                                  const Fingerprint& y, TieBreak tb);

}  // namespace fpcode
