#pragma once

// Bounded scalar minimization and bracketed root finding.  Plain golden
// section with an optional uniform prescan that shrinks the bracket around
// the global grid minimum before the section search starts.

#include <cmath>
#include <utility>
#include <vector>

#include "qread/errors.hpp"

namespace qread {

struct ScalarMinimum {
  double x = 0.0;
  double value = 0.0;
};

template <typename F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi,
                                      double x_tol, int prescan = 0) {
  if (!(lo < hi)) throw OptimizationError("golden_section_minimize: empty bracket");
  double a = lo, b = hi;
  double best_x = lo, best_f = f(lo);
  {
    const double fhi = f(hi);
    if (fhi < best_f) { best_f = fhi; best_x = hi; }
  }
  if (prescan >= 3) {
    const double h = (hi - lo) / (prescan - 1);
    int ibest = (best_x == lo) ? 0 : prescan - 1;
    for (int i = 1; i < prescan - 1; ++i) {
      const double x = lo + i * h;
      const double fx = f(x);
      if (fx < best_f) { best_f = fx; best_x = x; ibest = i; }
    }
    a = lo + std::max(0, ibest - 1) * h;
    b = lo + std::min(prescan - 1, ibest + 1) * h;
  }

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double u = b - invphi * (b - a);
  double v = a + invphi * (b - a);
  double fu = f(u), fv = f(v);
  while (b - a > x_tol) {
    if (fu > fv) {
      a = u;
      u = v; fu = fv;
      v = a + invphi * (b - a); fv = f(v);
    } else {
      b = v;
      v = u; fv = fu;
      u = b - invphi * (b - a); fu = f(u);
    }
  }
  if (fu < best_f) { best_f = fu; best_x = u; }
  if (fv < best_f) { best_f = fv; best_x = v; }
  if (!std::isfinite(best_f))
    throw OptimizationError("golden_section_minimize: non-finite objective");
  return {best_x, best_f};
}

/// Bisection on a sign change; returns the midpoint of the final bracket.
/// Pre: f(lo) and f(hi) have opposite (non-zero) signs.
template <typename F>
double bisect_root(F&& f, double lo, double hi, int iters) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw OptimizationError("bisect_root: endpoints do not bracket a sign change");
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid; flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace qread
