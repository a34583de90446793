// SPDX-License-Identifier: Apache-2.0
#include "fpcode/decode.hpp"

#include <limits>
#include <stdexcept>

#include "fpcode/kernels.hpp"

namespace fpcode {

namespace {

void check_query(const TwoLevelCode& code, const Fingerprint& y) {
  if (code.user_count() == 0)
    throw std::invalid_argument("cannot decode against an empty code");
  if (y.q != code.q() || y.size() != code.n())
    throw std::invalid_argument("query does not match the code parameters");
  validate_fingerprint(y);
}

}  // namespace

MinimizerSet find_minimizers(const TwoLevelCode& code, const Fingerprint& y) {
  check_query(code, y);
  const std::size_t users = code.user_count();
  std::vector<std::uint32_t> dists(users);
  kernels::hamming_rows(y.data(), code.flat().data(), users, code.n(),
                        dists.data());
  MinimizerSet out;
  out.distance = std::numeric_limits<std::uint32_t>::max();
  for (std::size_t u = 0; u < users; ++u) {
    if (dists[u] < out.distance) {
      out.distance = dists[u];
      out.rows.clear();
    }
    if (dists[u] == out.distance) out.rows.push_back(u);
  }
  return out;
}

DecodeResult md_decode(const TwoLevelCode& code, const Fingerprint& y,
                       TieBreak tb) {
  MinimizerSet ms = find_minimizers(code, y);
  DecodeResult out;
  out.distance = ms.distance;
  out.tie_count = ms.rows.size();
  if (tb == TieBreak::lex_first || ms.rows.size() == 1)
    out.user = code.user_at(ms.rows.front());
  return out;
}

GroupDecodeResult md_decode_group(const TwoLevelCode& code,
                                  const Fingerprint& y, TieBreak tb) {
  DecodeResult inner = md_decode(code, y, tb);
  GroupDecodeResult out;
  out.distance = inner.distance;
  out.tie_count = inner.tie_count;
  if (inner.user) out.group = inner.user->group;
  return out;
}

}  // namespace fpcode
