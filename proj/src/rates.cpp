// SPDX-License-Identifier: Apache-2.0
#include "fpcode/rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "fpcode/io.hpp"

namespace fpcode {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Precomputed per-alphabet constants so the inner search loop stays cheap.
struct QConsts {
  double ln_q;
  double ln_qm1;       // ln(q-1)
  double log_ratio;    // log_q((q-2)/(q-1)), 0 at q = 2 placeholder
  double log_qm2;      // log_q(q-2)
};

QConsts make_consts(std::uint32_t q) {
  QConsts c{};
  c.ln_q = std::log(static_cast<double>(q));
  c.ln_qm1 = std::log(static_cast<double>(q - 1));
  if (q >= 3) {
    c.log_ratio = (std::log(static_cast<double>(q - 2)) - c.ln_qm1) / c.ln_q;
    c.log_qm2 = std::log(static_cast<double>(q - 2)) / c.ln_q;
  }
  return c;
}

// h(x) with the end points taken by convention; tolerates the tiny
// out-of-range slop grid arithmetic produces.
double entropy_impl(double x, const QConsts& c) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return c.ln_qm1 / c.ln_q;
  return (-x * std::log(x) - (1.0 - x) * std::log1p(-x) + x * c.ln_qm1) /
         c.ln_q;
}

// c * h(u / c) with the c = 0 convention.
double scaled_entropy(double cc, double u, const QConsts& c) {
  if (cc <= 0.0) return 0.0;
  return cc * entropy_impl(u / cc, c);
}

// The exponent expression with arguments assumed inside the domain (up to
// floating slop). All validation lives in the public wrapper.
double phi_impl(double omega, double gamma, double alpha, double beta,
                const QConsts& c) {
  return scaled_entropy(1.0 - gamma, alpha, c) +
         scaled_entropy(gamma - beta, omega - alpha - beta, c) +
         scaled_entropy(gamma, beta, c) + (omega - alpha) * c.log_ratio -
         beta * c.log_qm2;
}

void check_unit(double x, const char* name) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::invalid_argument(std::string(name) +
                                " must lie in [0, 1]");
}

// Best grid point; ties in value resolve to the smallest (gamma, alpha,
// beta), so the result is independent of evaluation order.
struct Best {
  double value = kNegInf;
  double gamma = 0.0;
  double alpha = 0.0;
  double beta = 0.0;

  void consider(double v, double g, double a, double b) {
    if (v > value) {
      value = v;
      gamma = g;
      alpha = a;
      beta = b;
      return;
    }
    if (v == value && value != kNegInf) {
      if (g < gamma || (g == gamma && (a < alpha ||
                                       (a == alpha && b < beta)))) {
        gamma = g;
        alpha = a;
        beta = b;
      }
    }
  }

  void merge(const Best& o) { consider(o.value, o.gamma, o.alpha, o.beta); }
};

// Ascending sample points lo, lo+step, .., hi with hi always included.
std::vector<double> sample_range(double lo, double hi, double step) {
  std::vector<double> out;
  if (hi < lo) return out;
  const double span = hi - lo;
  auto count = static_cast<std::uint64_t>(span / step + 1e-9);
  out.reserve(count + 2);
  for (std::uint64_t k = 0; k <= count; ++k) out.push_back(lo + k * step);
  if (out.empty() || out.back() < hi - 1e-15) out.push_back(hi);
  return out;
}

// Scans the (alpha, beta) slice at one gamma, including the stationary
// candidate alpha = omega(1-gamma), beta = omega*gamma/(q-1) clamped into
// the constraint box.
void scan_gamma(double omega, double gamma, double delta, double step,
                const QConsts& c, std::uint32_t q, bool local,
                double alpha_center, double beta_center, double radius,
                Best& best) {
  double alo = std::max(0.0, omega - gamma);
  double ahi = std::min(omega, 1.0 - gamma);
  if (local) {
    alo = std::max(alo, alpha_center - radius);
    ahi = std::min(ahi, alpha_center + radius);
  }
  if (ahi < alo) return;
  for (double alpha : sample_range(alo, ahi, step)) {
    double blo = std::max(0.0, gamma + alpha - delta);
    double bhi = std::min(gamma, omega - alpha);
    if (local) {
      blo = std::max(blo, beta_center - radius);
      bhi = std::min(bhi, beta_center + radius);
    }
    if (bhi < blo - 1e-12) continue;
    bhi = std::max(bhi, blo);
    for (double beta : sample_range(blo, bhi, step))
      best.consider(phi_impl(omega, gamma, alpha, beta, c), gamma, alpha,
                    beta);
  }
  // Candidate injection (skipped in local passes; the coarse pass already
  // injected it and refinement only needs the neighborhood).
  if (!local) {
    double astar = std::clamp(omega * (1.0 - gamma), alo, ahi);
    double blo = std::max(0.0, gamma + astar - delta);
    double bhi = std::min(gamma, omega - astar);
    if (bhi >= blo - 1e-12) {
      bhi = std::max(bhi, blo);
      double bstar = std::clamp(omega * gamma / (q - 1), blo, bhi);
      best.consider(phi_impl(omega, gamma, astar, bstar, c), gamma, astar,
                    bstar);
    }
  }
}

Best search_gammas(double omega, std::uint32_t q, double delta,
                   const std::vector<double>& gammas, double step,
                   const QConsts& c, unsigned workers, bool local,
                   double alpha_center, double beta_center, double radius) {
  workers = std::max(1u, workers);
  if (workers == 1 || gammas.size() < 2 * workers) {
    Best best;
    for (double g : gammas)
      scan_gamma(omega, g, delta, step, c, q, local, alpha_center,
                 beta_center, radius, best);
    return best;
  }
  std::vector<Best> bests(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < gammas.size(); i += workers)
        scan_gamma(omega, gammas[i], delta, step, c, q, local, alpha_center,
                   beta_center, radius, bests[w]);
    });
  for (auto& t : pool) t.join();
  Best best;
  for (const auto& b : bests) best.merge(b);
  return best;
}

// Shared driver for both constraint families: coarse grid over the gamma
// window, then refine_rounds local passes shrinking the step tenfold.
double f_search(double omega, std::uint32_t q, double gamma_lo,
                double gamma_hi, double delta, const SearchCfg& cfg) {
  check_unit(omega, "omega");
  if (q < 3) throw std::invalid_argument("alphabet must have q >= 3");
  if (!(cfg.step > 0.0)) throw std::invalid_argument("step must be > 0");
  if (gamma_hi < gamma_lo) return kNegInf;
  gamma_lo = std::clamp(gamma_lo, 0.0, 1.0);
  gamma_hi = std::clamp(gamma_hi, 0.0, 1.0);

  const QConsts c = make_consts(q);
  double step = cfg.step;
  Best best = search_gammas(omega, q, delta,
                            sample_range(gamma_lo, gamma_hi, step), step, c,
                            cfg.workers, false, 0.0, 0.0, 0.0);
  for (int round = 0; round < cfg.refine_rounds; ++round) {
    if (best.value == kNegInf) break;
    double fine = step / 10.0;
    double glo = std::max(gamma_lo, best.gamma - step);
    double ghi = std::min(gamma_hi, best.gamma + step);
    Best refined =
        search_gammas(omega, q, delta, sample_range(glo, ghi, fine), fine, c,
                      cfg.workers, true, best.alpha, best.beta, step);
    best.merge(refined);
    step = fine;
  }
  return best.value;
}

}  // namespace

double entropy_q(double x, std::uint32_t q) {
  if (q < 2) throw std::invalid_argument("alphabet must have q >= 2");
  check_unit(x, "entropy argument");
  return entropy_impl(x, make_consts(q));
}

double delta1(double omega, std::uint32_t q) {
  check_unit(omega, "omega");
  if (q < 3) throw std::invalid_argument("alphabet must have q >= 3");
  return 0.5 * (1.0 - (1.0 - omega) * (1.0 - omega) -
                omega * omega / (q - 1));
}

double delta2(double omega, std::uint32_t q) {
  check_unit(omega, "omega");
  if (q < 3) throw std::invalid_argument("alphabet must have q >= 3");
  return 0.5 * (1.0 - 1.0 / q);
}

double phi(const PhiArgs& a) {
  if (a.q < 3) throw std::invalid_argument("alphabet must have q >= 3");
  check_unit(a.omega, "omega");
  check_unit(a.gamma, "gamma");
  check_unit(a.alpha, "alpha");
  check_unit(a.beta, "beta");
  constexpr double kTol = 1e-9;
  if (a.alpha > 1.0 - a.gamma + kTol)
    throw std::invalid_argument("phi domain requires alpha <= 1 - gamma");
  if (a.beta > a.gamma + kTol)
    throw std::invalid_argument("phi domain requires beta <= gamma");
  if (a.alpha + a.beta > a.omega + kTol)
    throw std::invalid_argument("phi domain requires alpha + beta <= omega");
  if (a.omega - a.alpha > a.gamma + kTol)
    throw std::invalid_argument("phi domain requires omega - alpha <= gamma");
  return phi_impl(a.omega, a.gamma, a.alpha, a.beta, make_consts(a.q));
}

double f1(double omega, std::uint32_t q, const SearchCfg& cfg) {
  double delta =
      cfg.delta_override ? *cfg.delta_override : delta1(omega, q);
  return f_search(omega, q, omega * omega,
                  1.0 - (1.0 - omega) * (1.0 - omega), delta, cfg);
}

double f2(double omega, std::uint32_t q, const SearchCfg& cfg) {
  double delta =
      cfg.delta_override ? *cfg.delta_override : delta2(omega, q);
  return f_search(omega, q, omega * (q - 1.0) / q,
                  1.0 - (1.0 - omega) / q, delta, cfg);
}

double bound_D(double omega, std::uint32_t q) {
  check_unit(omega, "omega");
  if (q < 3) throw std::invalid_argument("alphabet must have q >= 3");
  const QConsts c = make_consts(q);
  return omega * omega * omega * (-c.log_ratio + c.log_qm2 / (q - 1.0));
}

RegionPoint region_21(std::uint32_t q, double omega) {
  if (q < 2) throw std::invalid_argument("alphabet must have q >= 2");
  RegionPoint p;
  p.omega = omega;
  const double half = (q - 1.0) / (2.0 * q);
  if (!(omega >= 0.0 && omega <= half)) return p;
  p.feasible = true;
  p.r1_sup = 1.0 - entropy_q(half + omega, q);
  p.r2_sup = entropy_q(omega, q);
  return p;
}

RegionPoint region_t1(std::uint32_t q, std::uint32_t t, double omega) {
  if (q < 2) throw std::invalid_argument("alphabet must have q >= 2");
  if (t < 2) throw std::invalid_argument("coalition bound must have t >= 2");
  RegionPoint p;
  p.omega = omega;
  const double c = ((t - 1.0) / t) *
                   (1.0 - std::pow(static_cast<double>(q),
                                   -static_cast<double>(t - 1)));
  if (!(omega >= 0.0 && c + omega <= (q - 1.0) / q)) return p;
  p.feasible = true;
  p.r1_sup = 1.0 - entropy_q(c + omega, q);
  p.r2_sup = entropy_q(omega, q);
  return p;
}

RegionPoint region_t2(std::uint32_t q, std::uint32_t t, double omega,
                      const SearchCfg& cfg) {
  if (q < 3) throw std::invalid_argument("alphabet must have q >= 3");
  RegionPoint p = region_t1(q, t, omega);
  if (!p.feasible) return p;
  p.r2_sup = entropy_q(omega, q) - std::max(f1(omega, q, cfg),
                                            f2(omega, q, cfg));
  return p;
}

std::string emit_region(std::uint32_t q, std::uint32_t t1, std::uint32_t t2,
                        std::span<const double> omegas,
                        const SearchCfg& cfg) {
  if (t2 != 1 && t2 != 2)
    throw std::invalid_argument("region tables support t2 in {1, 2}");
  if (t1 <= t2)
    throw std::invalid_argument("coalition bounds must satisfy t1 > t2");
  if (t2 == 2 && q < 3)
    throw std::invalid_argument("alphabet must have q >= 3");
  const bool refs = (q == 2 && t1 == 2 && t2 == 1);
  std::string out = "omega,R1_sup,R2_sup,feasible";
  if (refs) out += ",ref_R1_plus_R2,ref_R1_upper,ref_R1_plus_R2_md";
  out += "\n";
  for (double omega : omegas) {
    RegionPoint p = t2 == 1 ? region_t1(q, t1, omega)
                            : region_t2(q, t1, omega, cfg);
    out += io::format_double(omega);
    out += ',';
    if (p.feasible) out += io::format_double(p.r1_sup);
    out += ',';
    if (p.feasible) out += io::format_double(p.r2_sup);
    out += ',';
    out += p.feasible ? '1' : '0';
    if (refs) out += ",1,0.25,0.188";
    out += "\n";
  }
  return out;
}

}  // namespace fpcode
