#include "qread/critical.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <future>
#include <thread>

#include "qread/minimize.hpp"

namespace qread {

double log_gain_margin(double m, double r0, double nS, double nB) {
  const double ln2c = log_twice_classical_bound(log_ideal_fidelity(r0, nB, nS), m);
  const double ln2q = m * log_ideal_chernoff_term(r0, nB, nS);
  return ln2c - ln2q;
}

namespace {

void validate_ideal(double r0, double nS, double nB) {
  if (!(r0 >= 0.0) || r0 >= 1.0)
    throw DomainError("critical_m: r0 must lie in [0, 1)");
  if (!(nS > 0.0)) throw DomainError("critical_m: nS must be > 0");
  if (!(nB >= 0.0)) throw DomainError("critical_m: nB must be >= 0");
}

}  // namespace

CriticalM critical_m_detail(double r0, double nS, double nB, const CriticalConfig& cfg) {
  validate_ideal(r0, nS, nB);
  const auto margin = [&](double lm) { return log_gain_margin(std::exp(lm), r0, nS, nB); };
  const double llo = std::log(cfg.m_min);
  const double lhi = std::log(cfg.m_max);
  if (margin(llo) > 0.0) return {cfg.m_min, CriticalMethod::bisection};
  if (margin(lhi) > 0.0) {
    const double root = std::exp(bisect_root(margin, llo, lhi, cfg.bisect_iters));
    return {root, CriticalMethod::bisection};
  }
  // No sign change up to m_max.  Scan 20 log-spaced samples plus the
  // endpoints before declaring anything (paranoia against non-monotone G).
  for (int i = 1; i < 21; ++i) {
    const double lm = llo + (lhi - llo) * i / 21.0;
    if (margin(lm) > 0.0) {
      const double root = std::exp(bisect_root(margin, llo, lm, cfg.bisect_iters));
      return {root, CriticalMethod::bisection};
    }
  }
  // r0 -> 1 regime: the root exists but lies beyond the bracket.
  const double eps = 1.0 - r0;
  const double asy = nB > 0.0 ? kappa(nB, nS, eps) : 0.25 / nS;
  if (asy > 0.5 * cfg.m_max) return {asy, CriticalMethod::asymptote};
  throw NoAdvantage("critical_m: G <= 0 for all M up to m_max "
                    "(high-energy regime, no quantum advantage certified)");
}

double critical_m(double r0, double nS, double nB, const CriticalConfig& cfg) {
  return critical_m_detail(r0, nS, nB, cfg).m_real;
}

CriticalPoint critical_m_worst_case(double r0, double nS, const CriticalConfig& cfg) {
  validate_ideal(r0, nS, 0.0);
  std::vector<double> grid{0.0, nS / (1.0 + 2.0 * nS)};
  const double lg_lo = std::log(1e-4), lg_hi = std::log(cfg.nb_max);
  for (int i = 0; i < cfg.nb_grid; ++i)
    grid.push_back(std::exp(lg_lo + (lg_hi - lg_lo) * i / (cfg.nb_grid - 1)));
  std::sort(grid.begin(), grid.end());

  double best_nb = 0.0, best_m = -1.0;
  CriticalMethod best_method = CriticalMethod::bisection;
  std::size_t best_idx = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CriticalM cm = critical_m_detail(r0, nS, grid[i], cfg);  // NoAdvantage propagates
    if (cm.m_real > best_m) {
      best_m = cm.m_real;
      best_nb = grid[i];
      best_method = cm.method;
      best_idx = i;
    }
  }
  // Refine between the grid neighbours of the best sample.
  const double lo = best_idx == 0 ? 0.0 : grid[best_idx - 1];
  const double hi = best_idx + 1 < grid.size() ? grid[best_idx + 1] : cfg.nb_max;
  if (hi > lo) {
    const auto neg = [&](double nb) { return -critical_m_detail(r0, nS, nb, cfg).m_real; };
    const ScalarMinimum m = golden_section_minimize(neg, lo, hi, cfg.nb_tol);
    if (-m.value > best_m) {
      best_m = -m.value;
      best_nb = m.x;
      best_method = critical_m_detail(r0, nS, best_nb, cfg).method;
    }
  }
  CriticalPoint pt;
  pt.r0 = r0;
  pt.nS = nS;
  pt.m_real = best_m;
  pt.m_int = static_cast<std::int64_t>(std::ceil(best_m));
  pt.nB_worst = best_nb;
  pt.method = best_method;
  return pt;
}

double asymptote_r0_to_1(double nS, double eps) {
  if (!(nS > 0.0) || !(eps > 0.0))
    throw DomainError("asymptote_r0_to_1: nS and eps must be > 0");
  return 1.0 / (4.0 * nS * (2.0 * nS + 1.0) * eps);
}

double kappa(double nB, double nS, double eps) {
  const double d = nB + nS + 2.0 * nB * nS;
  return nB / (d * d * eps);
}

std::optional<double> asymptote_high_energy(double nS) {
  if (!(nS >= 1.0)) throw DomainError("asymptote_high_energy: nS must be >= 1");
  const double denom = 2.0 * std::log1p(nS) - nS;
  if (denom <= 0.0) return std::nullopt;
  return std::log(2.0) / denom;
}

CriticalCurve critical_curve(double nS, std::span<const double> r0_grid,
                             const CriticalConfig& cfg) {
  for (std::size_t i = 0; i + 1 < r0_grid.size(); ++i)
    if (!(r0_grid[i] < r0_grid[i + 1]))
      throw DomainError("critical_curve: grid must be strictly increasing");

  CriticalCurve curve;
  curve.nS = nS;
  curve.points.resize(r0_grid.size());

  const auto eval = [&](std::size_t i) {
    CriticalCurvePoint p;
    p.r0 = r0_grid[i];
    try {
      const CriticalPoint cp = critical_m_worst_case(r0_grid[i], nS, cfg);
      p.advantage = true;
      p.m_real = cp.m_real;
      p.m_int = cp.m_int;
      p.nB_worst = cp.nB_worst;
      p.method = cp.method;
    } catch (const NoAdvantage&) {
      p.advantage = false;
    }
    return p;
  };

  // Grid points are independent; fan out, keep grid order in the output.
  const unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  if (workers == 1 || r0_grid.size() < 4) {
    for (std::size_t i = 0; i < r0_grid.size(); ++i) curve.points[i] = eval(i);
    return curve;
  }
  std::vector<std::future<void>> tasks;
  tasks.reserve(workers);
  std::atomic<std::size_t> next{0};
  for (unsigned w = 0; w < workers; ++w) {
    tasks.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next.fetch_add(1); i < r0_grid.size(); i = next.fetch_add(1))
        curve.points[i] = eval(i);
    }));
  }
  for (auto& t : tasks) t.get();
  return curve;
}

}  // namespace qread
