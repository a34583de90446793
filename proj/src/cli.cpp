// SPDX-License-Identifier: Apache-2.0
#include "fpcode/cli.hpp"

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpcode/attacks.hpp"
#include "fpcode/construct.hpp"
#include "fpcode/core.hpp"
#include "fpcode/decode.hpp"
#include "fpcode/envelope.hpp"
#include "fpcode/io.hpp"
#include "fpcode/rates.hpp"
#include "fpcode/rng.hpp"
#include "fpcode/sim.hpp"
#include "fpcode/verify.hpp"

namespace fpcode::cli {
namespace {

using ordered_json = nlohmann::ordered_json;
using FlagMap = std::map<std::string, std::string>;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(text.substr(start));
      return out;
    }
    out.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

std::uint64_t parse_u64(const std::string& tok) {
  std::size_t pos = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(tok, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer '" + tok + "'");
  }
  if (pos != tok.size() || tok.empty() || tok[0] == '-')
    throw std::invalid_argument("bad integer '" + tok + "'");
  return v;
}

double parse_f64(const std::string& tok) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(tok, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + tok + "'");
  }
  if (pos != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
  return v;
}

// User lists are 1-based on the wire: "g,m;g,m;...".
std::vector<UserId> parse_users(const std::string& text) {
  std::vector<UserId> users;
  for (const std::string& item : split(text, ';')) {
    std::vector<std::string> parts = split(item, ',');
    if (parts.size() != 2)
      throw std::invalid_argument("user list entries look like 'group,member'");
    std::uint64_t g = parse_u64(parts[0]);
    std::uint64_t m = parse_u64(parts[1]);
    if (g == 0 || m == 0)
      throw std::invalid_argument("user indices start at 1");
    if (g > 0xffffffffull || m > 0xffffffffull)
      throw std::invalid_argument("user index out of range");
    users.push_back({static_cast<std::uint32_t>(g - 1),
                     static_cast<std::uint32_t>(m - 1)});
  }
  return users;
}

int hex_val(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument("bad hex digit");
}

// "0,2,1,..." or "hex:0002..." (two digits per symbol).
Fingerprint parse_symbols(const std::string& text, std::uint16_t q) {
  std::vector<std::uint8_t> syms;
  if (text.rfind("hex:", 0) == 0) {
    std::string h = text.substr(4);
    if (h.size() % 2 != 0)
      throw std::invalid_argument("hex symbols need two digits each");
    for (std::size_t i = 0; i < h.size(); i += 2)
      syms.push_back(
          static_cast<std::uint8_t>(hex_val(h[i]) * 16 + hex_val(h[i + 1])));
  } else {
    for (const std::string& tok : split(text, ',')) {
      std::uint64_t v = parse_u64(tok);
      if (v > 255) throw std::invalid_argument("symbol out of range");
      syms.push_back(static_cast<std::uint8_t>(v));
    }
  }
  Fingerprint fp{q, std::move(syms)};
  validate_fingerprint(fp);
  return fp;
}

// "start:stop:step", endpoints inclusive; a bare number is a single point.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts = split(text, ':');
  if (parts.size() == 1) return {parse_f64(parts[0])};
  if (parts.size() != 3)
    throw std::invalid_argument("grid looks like start:stop:step");
  double lo = parse_f64(parts[0]);
  double hi = parse_f64(parts[1]);
  double step = parse_f64(parts[2]);
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");
  if (hi < lo) throw std::invalid_argument("grid stop below start");
  std::vector<double> grid;
  std::uint64_t count = static_cast<std::uint64_t>((hi - lo) / step + 1e-9);
  for (std::uint64_t i = 0; i <= count; ++i) grid.push_back(lo + double(i) * step);
  if (grid.back() < hi - 1e-12) grid.push_back(hi);
  return grid;
}

ordered_json user_json(const UserId& u) {
  return ordered_json::array({u.group + 1, u.member + 1});
}

const char* engine_name_impl(Engine e) {
  return e == Engine::materialized ? "materialized" : "virtual";
}

// Writes bytes to `out` plus a sibling manifest, or to stdout when `out`
// is empty.
void emit(const std::string& verb, const FlagMap& flags, const FlagMap& inputs,
          const std::string& out, const std::string& bytes) {
  if (out.empty()) {
    std::cout << bytes;
    return;
  }
  io::write_file(out, bytes);
  io::RunManifest m;
  m.verb = verb;
  m.version = kVersion;
  m.flags = flags;
  m.input_digests = inputs;
  m.output_digests[out] = io::file_sha256(out);
  io::write_file(out + ".manifest.json", io::serialize_manifest(m));
}

FlagMap code_input(const std::string& path) {
  return {{path, io::file_sha256(path)}};
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"two-level fingerprinting codes: construction, attacks, "
               "decoding, verification, rate regions, simulation"};
  app.require_subcommand(1);
  int rc = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a random two-level code");
  struct {
    std::uint16_t q = 2;
    std::uint32_t n = 0, m1 = 0, m2 = 0;
    double omega = 0.0;
    std::uint64_t seed = 0;
    std::string out;
  } g;
  gen->add_option("--q", g.q, "alphabet size")->required();
  gen->add_option("--n", g.n, "code length")->required();
  gen->add_option("--M1", g.m1, "group count")->required();
  gen->add_option("--M2", g.m2, "members per group")->required();
  gen->add_option("--omega", g.omega, "offset weight fraction w/n")->required();
  gen->add_option("--seed", g.seed, "master seed")->required();
  gen->add_option("--out", g.out, "output code file")->required();
  gen->callback([&] {
    ConstructionParams params{g.q, g.n, g.m1, g.m2, g.omega, g.seed};
    TwoLevelCode code = build_random_two_level(params);
    FlagMap flags{{"--q", std::to_string(g.q)},
                  {"--n", std::to_string(g.n)},
                  {"--M1", std::to_string(g.m1)},
                  {"--M2", std::to_string(g.m2)},
                  {"--omega", io::format_double(g.omega)},
                  {"--seed", std::to_string(g.seed)},
                  {"--out", g.out}};
    emit("gen", flags, {}, g.out, io::serialize_code(code));
  });

  // distances
  auto* dist = app.add_subcommand("distances",
                                  "Two-level minimum distance profile");
  struct {
    std::string code, out;
  } dd;
  dist->add_option("--code", dd.code, "code file")->required();
  dist->add_option("--out", dd.out, "output file (default stdout)");
  dist->callback([&] {
    TwoLevelCode code = io::load_code(dd.code);
    DistanceProfile p = min_distances(code);
    ordered_json j;
    j["d1"] = p.d1;
    j["d2"] = p.d2;
    j["d"] = p.d;
    j["d1_defined"] = p.d1_defined;
    j["d2_defined"] = p.d2_defined;
    FlagMap flags{{"--code", dd.code}, {"--out", dd.out}};
    emit("distances", flags, code_input(dd.code), dd.out, j.dump() + "\n");
  });

  // verify-ta
  auto* ver = app.add_subcommand("verify-ta",
                                 "Exhaustive traceability check");
  struct {
    std::string code, out;
    std::uint32_t t1 = 2, t2 = 1;
    std::uint64_t max_work = 100'000'000;
    unsigned workers = 1;
    bool expect_holds = false;
  } vv;
  ver->add_option("--code", vv.code, "code file")->required();
  ver->add_option("--t1", vv.t1, "group-level coalition bound")->required();
  ver->add_option("--t2", vv.t2, "user-level coalition bound")->required();
  ver->add_option("--max-work", vv.max_work,
                  "refuse jobs above this many (coalition, forgery) pairs");
  ver->add_option("--workers", vv.workers, "worker threads");
  ver->add_flag("--expect-holds", vv.expect_holds,
                "exit 1 if a counterexample is found");
  ver->add_option("--out", vv.out, "output file (default stdout)");
  ver->callback([&] {
    TwoLevelCode code = io::load_code(vv.code);
    VerifyLimits limits{vv.max_work, vv.workers};
    TAVerdict v = verify_ta_exhaustive(code, vv.t1, vv.t2, limits);
    ordered_json j;
    j["holds"] = v.holds;
    j["t1"] = v.t1;
    j["t2"] = v.t2;
    j["coalitions_checked"] = v.coalitions_checked;
    j["forgeries_checked"] = v.forgeries_checked;
    if (v.counterexample) {
      const Counterexample& ce = *v.counterexample;
      ordered_json cj;
      cj["part"] = ce.part;
      cj["coalition"] = ordered_json::array();
      for (const UserId& u : ce.coalition) cj["coalition"].push_back(user_json(u));
      cj["forgery"] = ce.forgery.symbols;
      cj["distance"] = ce.distance;
      cj["offenders"] = ordered_json::array();
      for (const UserId& u : ce.offenders) cj["offenders"].push_back(user_json(u));
      j["counterexample"] = cj;
    }
    FlagMap flags{{"--code", vv.code},
                  {"--t1", std::to_string(vv.t1)},
                  {"--t2", std::to_string(vv.t2)},
                  {"--max-work", std::to_string(vv.max_work)},
                  {"--workers", std::to_string(vv.workers)},
                  {"--expect-holds", vv.expect_holds ? "true" : "false"},
                  {"--out", vv.out}};
    emit("verify-ta", flags, code_input(vv.code), vv.out, j.dump() + "\n");
    if (vv.expect_holds && !v.holds) rc = 1;
  });

  // decode
  auto* dec = app.add_subcommand("decode", "Minimum-distance decode a forgery");
  struct {
    std::string code, forgery, ties = "lex-first", out;
  } de;
  dec->add_option("--code", de.code, "code file")->required();
  dec->add_option("--forgery", de.forgery,
                  "symbols, comma separated or hex:...")->required();
  dec->add_option("--ties", de.ties, "tie policy")
      ->check(CLI::IsMember({"lex-first", "strict-fail"}));
  dec->add_option("--out", de.out, "output file (default stdout)");
  dec->callback([&] {
    TwoLevelCode code = io::load_code(de.code);
    Fingerprint y = parse_symbols(de.forgery, code.q());
    TieBreak tb =
        de.ties == "strict-fail" ? TieBreak::strict_fail : TieBreak::lex_first;
    DecodeResult r = md_decode(code, y, tb);
    GroupDecodeResult gr = md_decode_group(code, y, tb);
    ordered_json j;
    j["user"] = r.user ? user_json(*r.user) : ordered_json(0);
    j["group"] = gr.group ? ordered_json(*gr.group + 1) : ordered_json(0);
    j["distance"] = r.distance;
    j["tie_count"] = r.tie_count;
    FlagMap flags{{"--code", de.code},
                  {"--forgery", de.forgery},
                  {"--ties", de.ties},
                  {"--out", de.out}};
    emit("decode", flags, code_input(de.code), de.out, j.dump() + "\n");
  });

  // attack
  auto* att = app.add_subcommand("attack", "Forge a fingerprint from a coalition");
  struct {
    std::string code, coalition, strategy, out;
    std::uint64_t seed = 0;
  } at;
  att->add_option("--code", at.code, "code file")->required();
  att->add_option("--coalition", at.coalition,
                  "coalition users 'g,m;g,m;...' (1-based)")->required();
  att->add_option("--strategy", at.strategy, "forgery strategy")
      ->required()
      ->check(CLI::IsMember(strategy_names()));
  att->add_option("--seed", at.seed, "strategy seed")->required();
  att->add_option("--out", at.out, "output file (default stdout)");
  att->callback([&] {
    TwoLevelCode code = io::load_code(at.code);
    std::vector<UserId> users = parse_users(at.coalition);
    std::vector<Fingerprint> fps;
    for (const UserId& u : users) {
      if (u.group >= code.m1() || u.member >= code.m2())
        throw std::invalid_argument("coalition user out of range");
      fps.push_back(code.fingerprint(u));
    }
    rng::Stream stream(at.seed, rng::Role::strategy);
    AttackContext ctx{fps, &code, &stream};
    Fingerprint y = find_strategy(at.strategy)(ctx);
    ordered_json j;
    j["q"] = code.q();
    j["n"] = code.n();
    j["symbols"] = y.symbols;
    FlagMap flags{{"--code", at.code},
                  {"--coalition", at.coalition},
                  {"--strategy", at.strategy},
                  {"--seed", std::to_string(at.seed)},
                  {"--out", at.out}};
    emit("attack", flags, code_input(at.code), at.out, j.dump() + "\n");
  });

  // simulate
  auto* simc = app.add_subcommand(
      "simulate", "Monte Carlo accusation-error estimation");
  struct {
    std::uint16_t q = 2;
    std::uint32_t n = 0;
    double omega = 0.0;
    double m1 = 0.0, m2 = 0.0;
    std::uint32_t size = 1;
    std::string pattern = "distinct-groups";
    std::string users;
    std::string strategy = "interleave_uniform";
    std::string ties = "adversarial";
    std::uint64_t trials = 10'000;
    std::uint64_t seed = 0;
    std::string engine = "auto";
    unsigned workers = 1;
    std::string n_list, trials_per_n;
    double r1 = -1.0, r2 = -1.0;
    std::string out;
  } si;
  simc->add_option("--q", si.q, "alphabet size");
  simc->add_option("--omega", si.omega, "offset weight fraction")->required();
  simc->add_option("--n", si.n, "code length (single point)");
  simc->add_option("--M1", si.m1, "group count (single point)");
  simc->add_option("--M2", si.m2, "members per group (single point)");
  simc->add_option("--coalition-size", si.size, "pattern coalition size");
  simc->add_option("--coalition-pattern", si.pattern, "pattern kind")
      ->check(CLI::IsMember({"distinct-groups", "same-group"}));
  simc->add_option("--coalition-users", si.users,
                   "explicit coalition 'g,m;...' (1-based), overrides pattern");
  simc->add_option("--strategy", si.strategy, "forgery strategy")
      ->check(CLI::IsMember(strategy_names()));
  simc->add_option("--ties", si.ties, "tie accounting")
      ->check(CLI::IsMember({"adversarial", "lex-first", "strict-fail"}));
  simc->add_option("--trials", si.trials, "trials per point");
  simc->add_option("--seed", si.seed, "master seed")->required();
  simc->add_option("--engine", si.engine, "trial engine")
      ->check(CLI::IsMember({"auto", "materialized", "virtual"}));
  simc->add_option("--workers", si.workers, "worker threads");
  simc->add_option("--n-list", si.n_list,
                   "comma list of block lengths (sweep mode)");
  simc->add_option("--r1", si.r1, "group rate (sweep mode)");
  simc->add_option("--r2", si.r2, "user rate (sweep mode)");
  simc->add_option("--trials-per-n", si.trials_per_n,
                   "comma list of trial counts (sweep mode)");
  simc->add_option("--out", si.out, "output file (sweep requires one)");
  simc->callback([&] {
    TrialSpec base;
    base.q = si.q;
    base.omega = si.omega;
    base.strategy = si.strategy;
    base.trials = si.trials;
    base.master_seed = si.seed;
    base.workers = si.workers;
    base.ties = si.ties == "adversarial"
                    ? TieAccounting::adversarial
                    : si.ties == "lex-first" ? TieAccounting::lex_first
                                             : TieAccounting::strict_fail;
    base.engine = si.engine == "auto"
                      ? Engine::auto_select
                      : si.engine == "materialized" ? Engine::materialized
                                                    : Engine::virtualized;
    if (!si.users.empty()) {
      base.coalition.kind = CoalitionPattern::Kind::explicit_users;
      base.coalition.users = parse_users(si.users);
    } else {
      base.coalition.kind = si.pattern == "same-group"
                                ? CoalitionPattern::Kind::same_group
                                : CoalitionPattern::Kind::distinct_groups;
      base.coalition.size = si.size;
    }
    FlagMap flags{{"--q", std::to_string(si.q)},
                  {"--omega", io::format_double(si.omega)},
                  {"--coalition-size", std::to_string(si.size)},
                  {"--coalition-pattern", si.pattern},
                  {"--coalition-users", si.users},
                  {"--strategy", si.strategy},
                  {"--ties", si.ties},
                  {"--trials", std::to_string(si.trials)},
                  {"--seed", std::to_string(si.seed)},
                  {"--engine", si.engine},
                  {"--workers", std::to_string(si.workers)},
                  {"--out", si.out}};
    if (!si.n_list.empty()) {
      if (si.r1 < 0.0 || si.r2 < 0.0)
        throw std::invalid_argument("sweep mode needs --r1 and --r2");
      if (si.out.empty())
        throw std::invalid_argument("sweep mode needs --out");
      SweepSpec sweep;
      sweep.base = base;
      sweep.r1 = si.r1;
      sweep.r2 = si.r2;
      for (const std::string& tok : split(si.n_list, ','))
        sweep.n_list.push_back(static_cast<std::uint32_t>(parse_u64(tok)));
      if (!si.trials_per_n.empty())
        for (const std::string& tok : split(si.trials_per_n, ','))
          sweep.trials_per_n.push_back(parse_u64(tok));
      std::cerr << "simulate: sweep over " << sweep.n_list.size()
                << " block lengths\n";
      flags["--n-list"] = si.n_list;
      flags["--r1"] = io::format_double(si.r1);
      flags["--r2"] = io::format_double(si.r2);
      flags["--trials-per-n"] = si.trials_per_n;
      emit("simulate", flags, {}, si.out, sweep_blocklength(sweep));
      return;
    }
    if (si.n == 0 || si.m1 < 1.0 || si.m2 < 1.0)
      throw std::invalid_argument(
          "single-point mode needs --n, --M1, and --M2");
    base.n = si.n;
    base.m1 = si.m1;
    base.m2 = si.m2;
    std::cerr << "simulate: " << base.trials << " trials\n";
    ErrorEstimate est = estimate_errors(base);
    ordered_json j;
    j["q"] = si.q;
    j["n"] = si.n;
    j["omega"] = si.omega;
    j["M1"] = si.m1;
    j["M2"] = si.m2;
    j["strategy"] = si.strategy;
    j["ties"] = si.ties;
    j["engine"] = engine_name_impl(est.engine_used);
    j["trials"] = est.trials;
    j["e1_events"] = est.e1_events;
    j["e2_events"] = est.e2_events;
    j["e1_hat"] = est.e1_hat;
    j["e1_lo"] = est.e1_lo;
    j["e1_hi"] = est.e1_hi;
    j["e2_hat"] = est.e2_hat;
    j["e2_lo"] = est.e2_lo;
    j["e2_hi"] = est.e2_hi;
    j["same_group_innocent"] = est.same_group_innocent;
    j["other_group_innocent"] = est.other_group_innocent;
    j["tie_failure"] = est.tie_failure;
    j["e1_below_resolution"] = est.e1_below_resolution;
    j["e2_below_resolution"] = est.e2_below_resolution;
    flags["--n"] = std::to_string(si.n);
    flags["--M1"] = io::format_double(si.m1);
    flags["--M2"] = io::format_double(si.m2);
    emit("simulate", flags, {}, si.out, j.dump() + "\n");
  });

  // region
  auto* reg = app.add_subcommand("region", "Achievable rate region table");
  struct {
    std::uint16_t q = 2;
    std::uint32_t t1 = 2, t2 = 1;
    std::string grid;
    double step = 1e-3;
    std::uint32_t refine = 2;
    unsigned workers = 1;
    std::string out;
  } re;
  reg->add_option("--q", re.q, "alphabet size")->required();
  reg->add_option("--t1", re.t1, "group-level coalition bound")->required();
  reg->add_option("--t2", re.t2, "user-level coalition bound")->required();
  reg->add_option("--omega-grid", re.grid, "start:stop:step (inclusive)")
      ->required();
  reg->add_option("--step", re.step, "exponent search grid step");
  reg->add_option("--refine", re.refine, "refinement rounds");
  reg->add_option("--workers", re.workers, "worker threads");
  reg->add_option("--out", re.out, "output CSV file")->required();
  reg->callback([&] {
    std::vector<double> omegas = parse_grid(re.grid);
    SearchCfg cfg;
    cfg.step = re.step;
    cfg.refine_rounds = re.refine;
    cfg.workers = re.workers;
    std::string csv = emit_region(re.q, re.t1, re.t2, omegas, cfg);
    FlagMap flags{{"--q", std::to_string(re.q)},
                  {"--t1", std::to_string(re.t1)},
                  {"--t2", std::to_string(re.t2)},
                  {"--omega-grid", re.grid},
                  {"--step", io::format_double(re.step)},
                  {"--refine", std::to_string(re.refine)},
                  {"--workers", std::to_string(re.workers)},
                  {"--out", re.out}};
    emit("region", flags, {}, re.out, csv);
  });

  // diagnostics
  auto* diag = app.add_subcommand(
      "diagnostics", "Offset sampler marginal and pairwise statistics");
  struct {
    std::uint32_t n = 0, w = 0;
    std::uint16_t q = 2;
    std::uint64_t samples = 100'000;
    std::uint64_t seed = 0;
    std::string out;
  } di;
  diag->add_option("--n", di.n, "length")->required();
  diag->add_option("--w", di.w, "offset weight")->required();
  diag->add_option("--q", di.q, "alphabet size")->required();
  diag->add_option("--samples", di.samples, "number of draws");
  diag->add_option("--seed", di.seed, "sampling seed")->required();
  diag->add_option("--out", di.out, "output file (default stdout)");
  diag->callback([&] {
    OffsetDiagnostics d =
        offset_pair_diagnostics(di.n, di.w, di.q, di.samples, di.seed);
    ordered_json j;
    j["n"] = d.n;
    j["w"] = d.w;
    j["q"] = d.q;
    j["samples"] = d.samples;
    j["theory_marginal"] = d.theory_marginal;
    j["theory_joint"] = d.theory_joint;
    j["max_abs_dev_marginal"] = d.max_abs_dev_marginal;
    j["max_abs_dev_joint"] = d.max_abs_dev_joint;
    j["chebyshev_bound"] = d.chebyshev_bound;
    j["marginal_counts"] = d.marginal_counts;
    ordered_json pairs = ordered_json::array();
    for (const auto& [l, m] : d.pairs)
      pairs.push_back(ordered_json::array({l, m}));
    j["pairs"] = pairs;
    j["joint_counts"] = d.joint_counts;
    FlagMap flags{{"--n", std::to_string(di.n)},
                  {"--w", std::to_string(di.w)},
                  {"--q", std::to_string(di.q)},
                  {"--samples", std::to_string(di.samples)},
                  {"--seed", std::to_string(di.seed)},
                  {"--out", di.out}};
    emit("diagnostics", flags, {}, di.out, j.dump() + "\n");
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const WorkLimitError& e) {
    std::cerr << "refusing: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}

}  // namespace fpcode::cli
