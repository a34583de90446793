// SPDX-License-Identifier: Apache-2.0
#include "fpcode/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "fpcode/attacks.hpp"
#include "fpcode/construct.hpp"
#include "fpcode/decode.hpp"
#include "fpcode/io.hpp"
#include "fpcode/offset_stats.hpp"
#include "fpcode/rng.hpp"

namespace fpcode {
namespace {

constexpr double kWilsonZ = 1.959963984540054;
constexpr double kResolutionFloor = 1e-5;
constexpr double kMaterializedUserCap = 1 << 24;
constexpr double kAutoMaterializedCap = 4096;

// Everything a trial needs that is constant across trials.
struct SimContext {
  Engine engine = Engine::materialized;
  std::vector<UserId> coalition;
  std::vector<std::uint32_t> pirate_groups;  // ascending unique
  StrategyFn strategy = nullptr;
  std::uint32_t w = 0;
  // Virtual engine only: minimum-distance law for a whole fresh group.
  offset_stats::GroupMinTable group_table;
};

bool needs_materialized(const TrialSpec& spec) {
  return spec.strategy == "nearest_innocent" ||
         spec.ties != TieAccounting::adversarial;
}

std::vector<UserId> resolve_coalition(const TrialSpec& spec) {
  const CoalitionPattern& pat = spec.coalition;
  std::vector<UserId> users;
  switch (pat.kind) {
    case CoalitionPattern::Kind::explicit_users: {
      if (pat.users.empty())
        throw std::invalid_argument("coalition must list at least one user");
      for (const UserId& u : pat.users) {
        if (static_cast<double>(u.group) >= spec.m1 ||
            static_cast<double>(u.member) >= spec.m2)
          throw std::invalid_argument("coalition user out of range");
      }
      std::set<UserId> dedup(pat.users.begin(), pat.users.end());
      if (dedup.size() != pat.users.size())
        throw std::invalid_argument("coalition lists a user twice");
      users = pat.users;
      break;
    }
    case CoalitionPattern::Kind::distinct_groups: {
      if (pat.size == 0)
        throw std::invalid_argument("coalition must list at least one user");
      if (static_cast<double>(pat.size) > spec.m1)
        throw std::invalid_argument(
            "distinct-groups coalition larger than the group count");
      for (std::uint32_t g = 0; g < pat.size; ++g) users.push_back({g, 0});
      break;
    }
    case CoalitionPattern::Kind::same_group: {
      if (pat.size == 0)
        throw std::invalid_argument("coalition must list at least one user");
      if (static_cast<double>(pat.size) > spec.m2)
        throw std::invalid_argument(
            "same-group coalition larger than the member count");
      for (std::uint32_t m = 0; m < pat.size; ++m) users.push_back({0, m});
      break;
    }
  }
  return users;
}

void check_spec_basics(const TrialSpec& spec) {
  if (spec.q < 2 || spec.q > 256)
    throw std::invalid_argument("alphabet size out of range");
  if (spec.n == 0) throw std::invalid_argument("length must be positive");
  if (spec.m1 < 1.0 || spec.m2 < 1.0)
    throw std::invalid_argument("group and member counts must be at least 1");
  if (!(spec.omega >= 0.0) || spec.omega > 1.0)
    throw std::invalid_argument("offset weight fraction must be in [0, 1]");
}

Engine resolve_engine_checked(const TrialSpec& spec) {
  check_spec_basics(spec);
  Engine engine = spec.engine;
  if (engine == Engine::auto_select) {
    if (needs_materialized(spec))
      engine = Engine::materialized;
    else
      engine = spec.m1 * spec.m2 <= kAutoMaterializedCap
                   ? Engine::materialized
                   : Engine::virtualized;
  }
  if (engine == Engine::virtualized && needs_materialized(spec))
    throw std::invalid_argument(
        "virtualized engine supports only code-oblivious strategies and "
        "adversarial tie accounting; use the materialized engine");
  if (engine == Engine::materialized) {
    if (std::floor(spec.m1) != spec.m1 || std::floor(spec.m2) != spec.m2)
      throw std::invalid_argument(
          "materialized engine needs integral user counts");
    if (spec.m1 * spec.m2 > kMaterializedUserCap)
      throw std::invalid_argument(
          "materialized engine caps the user count at 2^24; "
          "use the virtualized engine");
  }
  return engine;
}

SimContext build_context(const TrialSpec& spec) {
  SimContext ctx;
  ctx.engine = resolve_engine_checked(spec);
  ctx.coalition = resolve_coalition(spec);
  ctx.strategy = find_strategy(spec.strategy);
  ctx.w = required_integral_weight(spec.omega, spec.n);
  std::set<std::uint32_t> groups;
  for (const UserId& u : ctx.coalition) groups.insert(u.group);
  ctx.pirate_groups.assign(groups.begin(), groups.end());
  if (ctx.engine == Engine::virtualized)
    ctx.group_table =
        offset_stats::group_min_table(spec.n, ctx.w, spec.q, spec.m2);
  return ctx;
}

TrialOutcome score_materialized(const TrialSpec& spec, const SimContext& ctx,
                                std::uint64_t trial_seed) {
  ConstructionParams params{spec.q,
                            spec.n,
                            static_cast<std::uint32_t>(spec.m1),
                            static_cast<std::uint32_t>(spec.m2),
                            spec.omega,
                            trial_seed};
  TwoLevelCode code = build_random_two_level(params);

  std::vector<Fingerprint> fps;
  fps.reserve(ctx.coalition.size());
  std::vector<std::uint64_t> pirate_rows;
  pirate_rows.reserve(ctx.coalition.size());
  for (const UserId& u : ctx.coalition) {
    fps.push_back(code.fingerprint(u));
    pirate_rows.push_back(code.user_index(u));
  }
  std::sort(pirate_rows.begin(), pirate_rows.end());

  rng::Stream strategy_rng(trial_seed, rng::Role::strategy);
  AttackContext attack{fps, &code, &strategy_rng};
  Fingerprint y = ctx.strategy(attack);

  MinimizerSet mins = find_minimizers(code, y);
  TrialOutcome out;
  out.overall_min = mins.distance;
  out.pirate_min = dist_to_set(y, fps);

  auto row_is_pirate = [&](std::uint64_t row) {
    return std::binary_search(pirate_rows.begin(), pirate_rows.end(), row);
  };
  auto group_is_pirate = [&](std::uint32_t group) {
    return std::binary_search(ctx.pirate_groups.begin(),
                              ctx.pirate_groups.end(), group);
  };

  if (spec.ties == TieAccounting::strict_fail && mins.rows.size() > 1) {
    out.e1_event = true;
    out.e2_event = true;
    out.cls = TrialOutcome::ErrorClass::tie_failure;
    return out;
  }
  std::size_t scored =
      spec.ties == TieAccounting::adversarial ? mins.rows.size() : 1;
  for (std::size_t i = 0; i < scored; ++i) {
    std::uint64_t row = mins.rows[i];
    if (!row_is_pirate(row)) out.e2_event = true;
    if (!group_is_pirate(code.user_at(row).group)) out.e1_event = true;
  }
  if (out.e1_event)
    out.cls = TrialOutcome::ErrorClass::other_group_innocent;
  else if (out.e2_event)
    out.cls = TrialOutcome::ErrorClass::same_group_innocent;
  return out;
}

TrialOutcome score_virtualized(
    const TrialSpec& spec, const SimContext& ctx, std::uint64_t trial_seed,
    std::map<std::uint32_t, offset_stats::DistanceTable>& table_cache) {
  const std::uint32_t n = spec.n;
  // Pirate rows are drawn from the same positional streams the full
  // construction uses, so both engines see identical coalitions.
  std::map<std::uint32_t, Fingerprint> centers;
  for (std::uint32_t g : ctx.pirate_groups) {
    rng::Stream cs(trial_seed, rng::Role::center, g);
    centers.emplace(g, sample_center(n, spec.q, cs));
  }
  std::vector<Fingerprint> fps;
  fps.reserve(ctx.coalition.size());
  for (const UserId& u : ctx.coalition) {
    rng::Stream os(trial_seed, rng::Role::offset, u.group, u.member);
    Fingerprint offset = sample_constant_weight(n, ctx.w, spec.q, os);
    fps.push_back(add_mod_q(centers.at(u.group), offset));
  }

  rng::Stream strategy_rng(trial_seed, rng::Role::strategy);
  AttackContext attack{fps, nullptr, &strategy_rng};
  Fingerprint y = ctx.strategy(attack);

  TrialOutcome out;
  out.pirate_min = dist_to_set(y, fps);

  // Closest innocent inside each pirate group: the member count minus the
  // pirates it contains, with the minimum sampled from the distance law
  // conditioned on wt(y - R_g).
  const std::uint32_t none = n + 1;
  std::uint32_t same_min = none;
  for (std::uint32_t g : ctx.pirate_groups) {
    double members = spec.m2;
    for (const UserId& u : ctx.coalition)
      if (u.group == g) members -= 1.0;
    if (members < 1.0) continue;
    std::uint32_t d = weight(sub_mod_q(y, centers.at(g)));
    auto it = table_cache.find(d);
    if (it == table_cache.end())
      it = table_cache
               .emplace(d, offset_stats::conditional_distance_table(n, ctx.w,
                                                                    spec.q, d))
               .first;
    double u01 = rng::Stream(trial_seed, rng::Role::search, 0, g).unit();
    same_min = std::min(same_min,
                        offset_stats::sample_min_distance(it->second, members,
                                                          u01));
  }

  // Closest user across all fully innocent groups.
  std::uint32_t other_min = none;
  double other_groups =
      spec.m1 - static_cast<double>(ctx.pirate_groups.size());
  if (other_groups >= 1.0) {
    double u01 = rng::Stream(trial_seed, rng::Role::search, 1, 0).unit();
    other_min = offset_stats::sample_group_min(ctx.group_table, other_groups,
                                               u01);
  }

  out.overall_min = std::min({out.pirate_min, same_min, other_min});
  out.e2_event = std::min(same_min, other_min) <= out.pirate_min;
  out.e1_event = other_min <= std::min(out.pirate_min, same_min);
  if (out.e1_event)
    out.cls = TrialOutcome::ErrorClass::other_group_innocent;
  else if (out.e2_event)
    out.cls = TrialOutcome::ErrorClass::same_group_innocent;
  return out;
}

TrialOutcome run_one(const TrialSpec& spec, const SimContext& ctx,
                     std::uint64_t trial_index,
                     std::map<std::uint32_t, offset_stats::DistanceTable>&
                         table_cache) {
  std::uint64_t trial_seed =
      rng::derive_key(spec.master_seed, rng::Role::trial, trial_index);
  TrialOutcome out =
      ctx.engine == Engine::materialized
          ? score_materialized(spec, ctx, trial_seed)
          : score_virtualized(spec, ctx, trial_seed, table_cache);
  if (out.e1_event && !out.e2_event)
    throw std::logic_error(
        "trial scored a group accusation error without a user accusation "
        "error");
  return out;
}

struct Tally {
  std::uint64_t e1 = 0, e2 = 0;
  std::uint64_t same = 0, other = 0, tie = 0;

  void add(const TrialOutcome& out) {
    e1 += out.e1_event;
    e2 += out.e2_event;
    switch (out.cls) {
      case TrialOutcome::ErrorClass::same_group_innocent: ++same; break;
      case TrialOutcome::ErrorClass::other_group_innocent: ++other; break;
      case TrialOutcome::ErrorClass::tie_failure: ++tie; break;
      case TrialOutcome::ErrorClass::none: break;
    }
  }
  void merge(const Tally& t) {
    e1 += t.e1;
    e2 += t.e2;
    same += t.same;
    other += t.other;
    tie += t.tie;
  }
};

const char* engine_name(Engine e) {
  return e == Engine::materialized ? "materialized" : "virtual";
}

}  // namespace

Interval wilson_interval(std::uint64_t events, std::uint64_t trials) {
  if (trials == 0) throw std::invalid_argument("interval needs trials");
  if (events > trials)
    throw std::invalid_argument("more events than trials");
  const double nn = static_cast<double>(trials);
  const double p = static_cast<double>(events) / nn;
  const double z2 = kWilsonZ * kWilsonZ;
  const double denom = 1.0 + z2 / nn;
  const double center = p + z2 / (2.0 * nn);
  const double half =
      kWilsonZ * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
  Interval iv;
  iv.lo = std::max(0.0, (center - half) / denom);
  iv.hi = std::min(1.0, (center + half) / denom);
  return iv;
}

Engine resolve_engine(const TrialSpec& spec) {
  Engine engine = resolve_engine_checked(spec);
  resolve_coalition(spec);
  find_strategy(spec.strategy);
  required_integral_weight(spec.omega, spec.n);
  return engine;
}

TrialOutcome run_trial(const TrialSpec& spec, std::uint64_t trial_index) {
  SimContext ctx = build_context(spec);
  std::map<std::uint32_t, offset_stats::DistanceTable> cache;
  return run_one(spec, ctx, trial_index, cache);
}

ErrorEstimate estimate_errors(const TrialSpec& spec) {
  if (spec.trials == 0) throw std::invalid_argument("need at least one trial");
  SimContext ctx = build_context(spec);
  const unsigned workers =
      std::max(1u, std::min(spec.workers, 256u));

  // Trials are keyed by index alone, so any partition of the index range
  // yields the same totals; the stride split just balances load.
  std::vector<Tally> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto run_part = [&](unsigned part) {
    try {
      std::map<std::uint32_t, offset_stats::DistanceTable> cache;
      Tally local;
      for (std::uint64_t t = part; t < spec.trials; t += workers)
        local.add(run_one(spec, ctx, t, cache));
      parts[part] = local;
    } catch (...) {
      errors[part] = std::current_exception();
    }
  };
  if (workers == 1) {
    run_part(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned p = 0; p < workers; ++p) pool.emplace_back(run_part, p);
    for (std::thread& th : pool) th.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  Tally total;
  for (const Tally& t : parts) total.merge(t);

  ErrorEstimate est;
  est.trials = spec.trials;
  est.e1_events = total.e1;
  est.e2_events = total.e2;
  est.e1_hat = static_cast<double>(total.e1) / static_cast<double>(spec.trials);
  est.e2_hat = static_cast<double>(total.e2) / static_cast<double>(spec.trials);
  Interval i1 = wilson_interval(total.e1, spec.trials);
  Interval i2 = wilson_interval(total.e2, spec.trials);
  est.e1_lo = i1.lo;
  est.e1_hi = i1.hi;
  est.e2_lo = i2.lo;
  est.e2_hi = i2.hi;
  est.same_group_innocent = total.same;
  est.other_group_innocent = total.other;
  est.tie_failure = total.tie;
  est.e1_below_resolution = est.e1_hat < kResolutionFloor;
  est.e2_below_resolution = est.e2_hat < kResolutionFloor;
  est.engine_used = ctx.engine;
  return est;
}

std::string sweep_blocklength(const SweepSpec& spec) {
  if (spec.n_list.empty())
    throw std::invalid_argument("sweep needs at least one block length");
  if (spec.r1 < 0.0 || spec.r2 < 0.0)
    throw std::invalid_argument("rates must be nonnegative");
  if (spec.trials_per_n.size() > 1 &&
      spec.trials_per_n.size() != spec.n_list.size())
    throw std::invalid_argument(
        "trial counts must be one value or one per block length");

  std::ostringstream csv;
  csv << "n,w,M1,M2,trials,e1_hat,e1_lo,e1_hi,e2_hat,e2_lo,e2_hi,"
         "e1_events,e2_events,engine\n";
  for (std::size_t i = 0; i < spec.n_list.size(); ++i) {
    std::uint32_t n = spec.n_list[i];
    TrialSpec row = spec.base;
    row.n = n;
    row.m1 = floor_power(spec.base.q, n * spec.r1);
    row.m2 = floor_power(spec.base.q, n * spec.r2);
    if (!spec.trials_per_n.empty())
      row.trials = spec.trials_per_n.size() == 1 ? spec.trials_per_n[0]
                                                 : spec.trials_per_n[i];
    // Rows must stay independent: re-key so a trial index never maps to
    // the same stream at two block lengths.
    row.master_seed =
        rng::derive_key(spec.base.master_seed, rng::Role::trial, n, 1);
    std::uint32_t w = required_integral_weight(row.omega, n);
    ErrorEstimate est = estimate_errors(row);
    csv << n << ',' << w << ',' << io::format_double(row.m1) << ','
        << io::format_double(row.m2) << ',' << est.trials << ','
        << io::format_double(est.e1_hat) << ',' << io::format_double(est.e1_lo)
        << ',' << io::format_double(est.e1_hi) << ','
        << io::format_double(est.e2_hat) << ',' << io::format_double(est.e2_lo)
        << ',' << io::format_double(est.e2_hi) << ',' << est.e1_events << ','
        << est.e2_events << ',' << engine_name(est.engine_used) << '\n';
  }
  return csv.str();
}

}  // namespace fpcode
