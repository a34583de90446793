// SPDX-License-Identifier: Apache-2.0
// Pirate strategies. Every strategy emits a word inside the coalition's
// feasible set: each output coordinate is copied from some coalition member.
#pragma once

#include <span>
#include <string>
#include <vector>

#include "fpcode/core.hpp"
#include "fpcode/rng.hpp"

namespace fpcode {

// Inputs for one forgery. `code` is only consulted by strategies that need
// knowledge of the innocent codewords; it may be null otherwise.
struct AttackContext {
  std::span<const Fingerprint> coalition;
  const TwoLevelCode* code = nullptr;
  rng::Stream* rng = nullptr;
};

using StrategyFn = Fingerprint (*)(const AttackContext&);

// Each coordinate is copied from a uniformly chosen coalition member.
Fingerprint attack_interleave_uniform(const AttackContext& ctx);

// Each coordinate is drawn uniformly from the distinct symbols the
// coalition holds there.
Fingerprint attack_envelope_uniform(const AttackContext& ctx);

// Each coordinate takes the least frequent symbol among the coalition's
// symbols there; frequency ties resolve to the smallest symbol value.
// Deterministic: ignores ctx.rng.
Fingerprint attack_minority_symbol(const AttackContext& ctx);

// Targets the innocent codeword that the coalition can imitate best: the
// one with the fewest coordinates outside the feasible set. Feasible
// coordinates copy the target; the rest are drawn uniformly from the
// coalition's distinct symbols there. Requires ctx.code; falls back to
// interleaving when every codeword value is held by the coalition.
Fingerprint attack_nearest_innocent(const AttackContext& ctx);

// Name lookup used by the CLI and the simulator. Throws
// std::invalid_argument for an unknown name.
StrategyFn find_strategy(const std::string& name);

// Registered names in a fixed order, for usage messages.
std::vector<std::string> strategy_names();

}  // namespace fpcode
