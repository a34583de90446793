// SPDX-License-Identifier: Apache-2.0
#include "fpcode/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <utility>

#include "fpcode/construct.hpp"
#include "fpcode/envelope.hpp"

namespace fpcode {

namespace {

void check_ts(std::uint32_t t1, std::uint32_t t2) {
  if (t2 < 1 || t1 <= t2)
    throw std::invalid_argument("coalition bounds must satisfy t1 > t2 >= 1");
}

// Advances a sorted k-subset of {0,..,users-1} to its lex successor.
bool next_combination(std::vector<std::uint64_t>& c, std::uint64_t users) {
  const std::size_t k = c.size();
  std::size_t i = k;
  while (i > 0) {
    --i;
    if (c[i] + (k - i) <= users - 1) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Calls fn(combination, ordinal) for every coalition in (size, lex) order;
// fn returns false to stop.
template <class Fn>
void for_each_coalition(std::uint64_t users, std::uint32_t t1, Fn&& fn) {
  std::uint64_t ordinal = 0;
  for (std::uint32_t s = 1; s <= t1 && s <= users; ++s) {
    std::vector<std::uint64_t> c(s);
    std::iota(c.begin(), c.end(), 0);
    while (true) {
      if (!fn(c, ordinal)) return;
      ++ordinal;
      if (!next_combination(c, users)) break;
    }
  }
}

double coalition_count(std::uint64_t users, std::uint32_t t1) {
  double total = 0.0;
  for (std::uint32_t s = 1; s <= t1 && s <= users; ++s) {
    double binom = 1.0;
    for (std::uint32_t i = 0; i < s; ++i)
      binom = binom * static_cast<double>(users - i) / (i + 1);
    total += binom;
  }
  return total;
}

struct CoalitionView {
  std::vector<Fingerprint> fps;
  std::vector<std::uint64_t> rows;     // sorted member row indices
  std::vector<std::uint32_t> groups;   // sorted distinct groups
};

CoalitionView make_view(const TwoLevelCode& code,
                        const std::vector<std::uint64_t>& rows) {
  CoalitionView v;
  v.rows = rows;
  for (auto r : rows) {
    auto span = code.row_at(r);
    v.fps.push_back(
        Fingerprint{code.q(), {span.begin(), span.end()}});
    v.groups.push_back(code.user_at(r).group);
  }
  std::sort(v.groups.begin(), v.groups.end());
  v.groups.erase(std::unique(v.groups.begin(), v.groups.end()),
                 v.groups.end());
  return v;
}

struct LocalFind {
  std::uint64_t ordinal = 0;
  std::uint64_t forgery_index = 0;  // position of the forgery, 0-based
  Counterexample ce;
};

// Scans one coalition; fills `find` and returns true on a violation.
bool scan_coalition(const TwoLevelCode& code, const CoalitionView& v,
                    bool part_a, LocalFind& find) {
  bool violated = false;
  std::uint64_t fidx = 0;
  envelope_enumerate(
      v.fps,
      [&](const Fingerprint& y) {
        MinimizerSet ms = find_minimizers(code, y);
        std::vector<UserId> user_offenders;
        std::vector<UserId> group_offenders;
        for (auto row : ms.rows) {
          UserId u = code.user_at(row);
          if (part_a &&
              !std::binary_search(v.rows.begin(), v.rows.end(), row))
            user_offenders.push_back(u);
          if (!std::binary_search(v.groups.begin(), v.groups.end(),
                                  u.group))
            group_offenders.push_back(u);
        }
        if (user_offenders.empty() && group_offenders.empty()) {
          ++fidx;
          return true;
        }
        violated = true;
        find.forgery_index = fidx;
        find.ce.forgery = y;
        find.ce.distance = ms.distance;
        if (!user_offenders.empty()) {
          find.ce.part = "user";
          find.ce.offenders = std::move(user_offenders);
        } else {
          find.ce.part = "group";
          find.ce.offenders = std::move(group_offenders);
        }
        for (auto row : v.rows) find.ce.coalition.push_back(code.user_at(row));
        return false;
      },
      std::numeric_limits<std::uint64_t>::max());
  return violated;
}

}  // namespace

bool check_prop1(const TwoLevelCode& code, std::uint32_t t1,
                 std::uint32_t t2) {
  check_ts(t1, t2);
  DistanceProfile p = min_distances(code);
  const std::uint64_t n = code.n();
  auto ok = [n](std::uint64_t d, std::uint64_t t) {
    return d * t * t > n * (t * t - 1);
  };
  return ok(p.d1, t1) && ok(p.d2, t2);
}

TAVerdict verify_ta_exhaustive(const TwoLevelCode& code, std::uint32_t t1,
                               std::uint32_t t2,
                               const VerifyLimits& limits) {
  check_ts(t1, t2);
  const std::uint64_t users = code.user_count();
  if (users == 0) throw std::invalid_argument("code has no users");

  TAVerdict verdict;
  verdict.t1 = t1;
  verdict.t2 = t2;

  // Refuse before enumerating anything if the coalition count alone
  // already exceeds the budget (every coalition costs at least one pair).
  double approx_coalitions = coalition_count(users, t1);
  if (approx_coalitions > static_cast<double>(limits.max_work))
    throw WorkLimitError("coalition count exceeds the work limit",
                         approx_coalitions);

  // Exact pre-scan: total (coalition, forgery) pairs in canonical order.
  std::uint64_t total_coalitions = 0;
  std::uint64_t total_forgeries = 0;
  bool over = false;
  for_each_coalition(users, t1, [&](const std::vector<std::uint64_t>& rows,
                                    std::uint64_t) {
    CoalitionView v = make_view(code, rows);
    std::uint64_t sz =
        detail::envelope_size_capped(envelope_column_sets(v.fps));
    ++total_coalitions;
    if (total_forgeries > std::numeric_limits<std::uint64_t>::max() - sz) {
      over = true;
      return false;
    }
    total_forgeries += sz;
    if (total_forgeries > limits.max_work) {
      over = true;
      return false;
    }
    return true;
  });
  if (over)
    throw WorkLimitError("forgery count exceeds the work limit",
                         static_cast<double>(total_forgeries));

  // Parallel scan. Worker w owns ordinals congruent to w; each worker finds
  // the first violation in its share and publishes the ordinal so others
  // can stop scanning later coalitions.
  const unsigned workers = std::max(1u, limits.workers);
  std::atomic<std::uint64_t> best{std::numeric_limits<std::uint64_t>::max()};
  std::vector<LocalFind> finds(workers);
  std::vector<char> has_find(workers, 0);

  auto run_worker = [&](unsigned w) {
    for_each_coalition(
        users, t1,
        [&](const std::vector<std::uint64_t>& rows, std::uint64_t ordinal) {
          if (ordinal % workers != w) return true;
          if (ordinal > best.load(std::memory_order_relaxed)) return false;
          CoalitionView v = make_view(code, rows);
          LocalFind find;
          if (!scan_coalition(code, v, rows.size() <= t2, find))
            return true;
          find.ordinal = ordinal;
          finds[w] = std::move(find);
          has_find[w] = 1;
          std::uint64_t cur = best.load(std::memory_order_relaxed);
          while (ordinal < cur &&
                 !best.compare_exchange_weak(cur, ordinal,
                                             std::memory_order_relaxed)) {
          }
          return false;  // later ordinals in this share are all larger
        });
  };

  if (workers == 1) {
    run_worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(run_worker, w);
    for (auto& t : pool) t.join();
  }

  unsigned winner = workers;
  for (unsigned w = 0; w < workers; ++w)
    if (has_find[w] &&
        (winner == workers || finds[w].ordinal < finds[winner].ordinal))
      winner = w;

  if (winner == workers) {
    verdict.coalitions_checked = total_coalitions;
    verdict.forgeries_checked = total_forgeries;
    return verdict;
  }

  // Canonical work counts: everything strictly before the counterexample in
  // the serial order, plus the violating pair itself.
  const LocalFind& win = finds[winner];
  std::uint64_t prefix = 0;
  for_each_coalition(users, t1, [&](const std::vector<std::uint64_t>& rows,
                                    std::uint64_t ordinal) {
    if (ordinal >= win.ordinal) return false;
    CoalitionView v = make_view(code, rows);
    prefix += detail::envelope_size_capped(envelope_column_sets(v.fps));
    return true;
  });
  verdict.holds = false;
  verdict.coalitions_checked = win.ordinal + 1;
  verdict.forgeries_checked = prefix + win.forgery_index + 1;
  verdict.counterexample = win.ce;
  return verdict;
}

TwoLevelCode one_per_group_subcode(const TwoLevelCode& code,
                                   std::span<const std::uint32_t> members) {
  if (members.size() != code.m1())
    throw std::invalid_argument("need exactly one member choice per group");
  for (auto m : members)
    if (m >= code.m2())
      throw std::invalid_argument("member selector out of range");
  std::vector<std::uint8_t> flat;
  flat.reserve(std::size_t{code.m1()} * code.n());
  for (std::uint32_t g = 0; g < code.m1(); ++g) {
    auto row = code.row({g, members[g]});
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return TwoLevelCode(code.q(), code.n(), code.m1(), 1, std::move(flat));
}

TwoLevelCode regroup_one_level(const TwoLevelCode& code, std::uint32_t m1,
                               std::uint32_t m2) {
  if (static_cast<std::uint64_t>(m1) * m2 != code.user_count())
    throw std::invalid_argument(
        "regrouping must preserve the number of users");
  return TwoLevelCode(code.q(), code.n(), m1, m2, code.flat());
}

}  // namespace fpcode
