#pragma once

// Critical signal number for ideal memories (r1 = 1): the real root in M of
// G(M) = 0, its ceiling, and the maximization over the bath temperature N_B
// that makes the critical number a function of r0 alone.  Root finding works
// on ln(2C) - ln(2Q), which has the sign of G and stays exact when both
// bounds underflow.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qread/bounds.hpp"

namespace qread {

struct CriticalConfig {
  double m_min = 1e-3;    // lower bracket for the continuous root
  double m_max = 1e8;     // upper bracket; beyond it the asymptote takes over
  int bisect_iters = 80;  // log-space bisection iterations
  double nb_max = 10.0;   // bath search domain [0, nb_max] (config knob)
  double nb_tol = 1e-8;   // golden-section tolerance of the N_B refinement
  int nb_grid = 25;       // log-spaced coarse N_B samples
};

enum class CriticalMethod { bisection, asymptote };

/// ln(2C) - ln(2Q) at signal count m for an ideal memory; > 0 iff G > 0.
double log_gain_margin(double m, double r0, double nS, double nB);

struct CriticalM {
  double m_real = 0.0;
  CriticalMethod method = CriticalMethod::bisection;
};

/// Real root of G(M) = 0 for the ideal memory (r0, r1 = 1, nB), M treated
/// as continuous.  Throws NoAdvantage when G <= 0 over the whole bracket
/// and the r0 -> 1 asymptote cannot explain it (high-energy regime).
CriticalM critical_m_detail(double r0, double nS, double nB,
                            const CriticalConfig& cfg = {});
double critical_m(double r0, double nS, double nB,
                  const CriticalConfig& cfg = {});

struct CriticalPoint {
  double r0 = 0.0;
  double nS = 0.0;
  double m_real = 0.0;
  std::int64_t m_int = 1;   // ceil(m_real)
  double nB_worst = 0.0;    // maximizing bath temperature
  CriticalMethod method = CriticalMethod::bisection;
};

/// max over N_B in [0, nb_max] of critical_m; coarse log grid seeded with
/// the analytic candidate N_B* = N_S/(1+2N_S), then golden refinement.
CriticalPoint critical_m_worst_case(double r0, double nS,
                                    const CriticalConfig& cfg = {});

/// First-order r0 -> 1 asymptote [4 N_S (2 N_S + 1) eps]^-1, eps = 1 - r0.
double asymptote_r0_to_1(double nS, double eps);

/// kappa(N_B) = N_B / [(N_B + N_S + 2 N_B N_S)^2 eps]; its maximum over
/// N_B sits at N_B* and equals asymptote_r0_to_1.
double kappa(double nB, double nS, double eps);

/// High-energy closed form M~ = ln2 / [2 ln(1+N_S) - N_S] for r0 = 0,
/// N_B = 0; nullopt once 2 ln(1+N_S) <= N_S (divergent, N_S ≳ 2.51).
std::optional<double> asymptote_high_energy(double nS);

struct CriticalCurvePoint {
  double r0 = 0.0;
  bool advantage = true;    // false: NoAdvantage recorded for this r0
  double m_real = 0.0;
  std::int64_t m_int = 0;
  double nB_worst = 0.0;
  CriticalMethod method = CriticalMethod::bisection;
};

struct CriticalCurve {
  double nS = 0.0;
  std::vector<CriticalCurvePoint> points;
};

/// Worst-case critical number per grid point; grid strictly increasing in
/// [0, 1).  Points are independent and evaluated concurrently; output order
/// follows the grid.
CriticalCurve critical_curve(double nS, std::span<const double> r0_grid,
                             const CriticalConfig& cfg = {});

}  // namespace qread
