// SPDX-License-Identifier: Apache-2.0
#include "fpcode/attacks.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "fpcode/envelope.hpp"

namespace fpcode {

namespace {

rng::Stream& require_rng(const AttackContext& ctx) {
  if (ctx.rng == nullptr)
    throw std::invalid_argument("strategy requires a random stream");
  return *ctx.rng;
}

Fingerprint blank_output(const AttackContext& ctx) {
  detail::validate_coalition(ctx.coalition);
  Fingerprint y;
  y.q = ctx.coalition.front().q;
  y.symbols.assign(ctx.coalition.front().size(), 0);
  return y;
}

}  // namespace

Fingerprint attack_interleave_uniform(const AttackContext& ctx) {
  Fingerprint y = blank_output(ctx);
  rng::Stream& rs = require_rng(ctx);
  const std::uint64_t t = ctx.coalition.size();
  for (std::size_t i = 0; i < y.size(); ++i)
    y.symbols[i] = ctx.coalition[rs.bounded(t)].symbols[i];
  return y;
}

Fingerprint attack_envelope_uniform(const AttackContext& ctx) {
  Fingerprint y = blank_output(ctx);
  rng::Stream& rs = require_rng(ctx);
  auto sets = envelope_column_sets(ctx.coalition);
  for (std::size_t i = 0; i < y.size(); ++i)
    y.symbols[i] = sets[i][rs.bounded(sets[i].size())];
  return y;
}

Fingerprint attack_minority_symbol(const AttackContext& ctx) {
  Fingerprint y = blank_output(ctx);
  std::array<std::uint32_t, 256> counts{};
  for (std::size_t i = 0; i < y.size(); ++i) {
    counts.fill(0);
    for (const auto& fp : ctx.coalition) ++counts[fp.symbols[i]];
    std::uint32_t best_count = std::numeric_limits<std::uint32_t>::max();
    std::uint8_t best_symbol = 0;
    for (std::uint32_t s = 0; s < y.q; ++s)
      if (counts[s] > 0 && counts[s] < best_count) {
        best_count = counts[s];
        best_symbol = static_cast<std::uint8_t>(s);
      }
    y.symbols[i] = best_symbol;
  }
  return y;
}

Fingerprint attack_nearest_innocent(const AttackContext& ctx) {
  Fingerprint y = blank_output(ctx);
  rng::Stream& rs = require_rng(ctx);
  if (ctx.code == nullptr)
    throw std::invalid_argument(
        "nearest_innocent requires the full code in the attack context");
  const TwoLevelCode& code = *ctx.code;
  if (code.q() != y.q || code.n() != y.size())
    throw std::invalid_argument("code does not match the coalition");

  auto sets = envelope_column_sets(ctx.coalition);
  auto feasible = [&sets](std::size_t i, std::uint8_t s) {
    return std::binary_search(sets[i].begin(), sets[i].end(), s);
  };

  // Scan all users in row-major order; the first one attaining the minimum
  // number of infeasible coordinates wins, so ties are deterministic.
  bool found = false;
  std::size_t best_miss = std::numeric_limits<std::size_t>::max();
  std::span<const std::uint8_t> best_row;
  const std::size_t users = std::size_t{code.m1()} * code.m2();
  for (std::size_t u = 0; u < users; ++u) {
    auto row = code.row_at(u);
    bool is_pirate = false;
    for (const auto& fp : ctx.coalition)
      if (std::equal(row.begin(), row.end(), fp.symbols.begin())) {
        is_pirate = true;
        break;
      }
    if (is_pirate) continue;
    std::size_t miss = 0;
    for (std::size_t i = 0; i < row.size() && miss < best_miss; ++i)
      if (!feasible(i, row[i])) ++miss;
    if (miss < best_miss) {
      best_miss = miss;
      best_row = row;
      found = true;
      if (miss == 0) break;
    }
  }
  if (!found) return attack_interleave_uniform(ctx);

  for (std::size_t i = 0; i < y.size(); ++i)
    y.symbols[i] = feasible(i, best_row[i])
                       ? best_row[i]
                       : sets[i][rs.bounded(sets[i].size())];
  return y;
}

namespace {

struct NamedStrategy {
  const char* name;
  StrategyFn fn;
};

constexpr NamedStrategy kStrategies[] = {
    {"interleave_uniform", attack_interleave_uniform},
    {"envelope_uniform", attack_envelope_uniform},
    {"minority_symbol", attack_minority_symbol},
    {"nearest_innocent", attack_nearest_innocent},
};

}  // namespace

StrategyFn find_strategy(const std::string& name) {
  for (const auto& s : kStrategies)
    if (name == s.name) return s.fn;
  throw std::invalid_argument("unknown strategy: " + name);
}

std::vector<std::string> strategy_names() {
  std::vector<std::string> out;
  for (const auto& s : kStrategies) out.emplace_back(s.name);
  return out;
}

}  // namespace fpcode
