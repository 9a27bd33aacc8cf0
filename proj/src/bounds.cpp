#include "qread/bounds.hpp"

#include <cmath>

#include "qread/minimize.hpp"

namespace qread {

namespace {

// sqrt(r1) - sqrt(r0) without cancellation near r0 = r1.
double sqrt_gap(double r0, double r1) {
  const double s = std::sqrt(r0) + std::sqrt(r1);
  return s > 0.0 ? (r1 - r0) / s : 0.0;
}

}  // namespace

double log_coherent_fidelity(const MemoryModel& mem, double nS) {
  mem.validate();
  if (!(nS >= 0.0)) throw DomainError("coherent_fidelity: nS must be >= 0");
  if (mem.r0 == mem.r1) return 0.0;  // identical channels, prefactor collapses
  const double gamma = 1.0 + (2.0 - mem.r0 - mem.r1) * mem.nB;
  double theta = 4.0 * mem.nB * mem.nB;
  for (double r : {mem.r0, mem.r1})
    theta *= (1.0 - r) * (1.0 + (1.0 - r) * mem.nB);
  const double d = sqrt_gap(mem.r0, mem.r1);
  return -std::log(std::sqrt(gamma * gamma + theta) - std::sqrt(theta))
         - d * d * nS / gamma;
}

double coherent_fidelity(const MemoryModel& mem, double nS) {
  return std::exp(log_coherent_fidelity(mem, nS));
}

double log_twice_classical_bound(double log_fidelity, double m) {
  const double x = m * log_fidelity;  // ln F^M <= 0
  if (x == 0.0) return 0.0;           // F = 1: C = 1/2
  // 2C = 1 - sqrt(1-F^M) = F^M / (1 + sqrt(1-F^M))
  return x - std::log1p(std::sqrt(-std::expm1(x)));
}

double classical_bound(const MemoryModel& mem, const SignalProfile& sig) {
  sig.validate();
  const double lnf = log_coherent_fidelity(mem, sig.nS);
  if (lnf == 0.0) return 0.5;
  const double x = static_cast<double>(sig.m) * lnf;
  return 0.5 * (1.0 - std::sqrt(-std::expm1(x)));
}

namespace detail {

double chernoff_qs_scaled_lambda(const TwoModeNormalCM& v0, const TwoModeNormalCM& v1,
                                 double s, double lambda_scale) {
  if (!(s > 0.0) || !(s < 1.0))
    throw DomainError("chernoff_qs: s must lie in (0, 1)");
  const SymplecticDecomposition d0 = williamson(v0);
  const SymplecticDecomposition d1 = williamson(v1);

  // V_u(p) = S_u diag(L(nu1), L(nu1), L(nu2), L(nu2)) S_u^T keeps the normal
  // form: a' = x+^2 L1 + x-^2 L2, b' = x-^2 L1 + x+^2 L2, c' = x+ x- (L1+L2).
  const auto powered = [lambda_scale](const SymplecticDecomposition& d, double p) {
    const double l1 = lambda_p(d.nu1, p) * lambda_scale;
    const double l2 = lambda_p(d.nu2, p) * lambda_scale;
    const double xp2 = d.x_plus * d.x_plus;
    const double xm2 = d.x_minus * d.x_minus;
    return TwoModeNormalCM{xp2 * l1 + xm2 * l2, xm2 * l1 + xp2 * l2,
                           d.x_plus * d.x_minus * (l1 + l2)};
  };
  const TwoModeNormalCM w0 = powered(d0, s);
  const TwoModeNormalCM w1 = powered(d1, 1.0 - s);

  const double sum_a = w0.a + w1.a;
  const double sum_b = w0.b + w1.b;
  const double sum_c = w0.c + w1.c;
  const double sqrt_det = sum_a * sum_b - sum_c * sum_c;  // sqrt(det) of the normal form

  const double pref = gp(d0.nu1, s) * gp(d0.nu2, s)
                    * gp(d1.nu1, 1.0 - s) * gp(d1.nu2, 1.0 - s);
  return 4.0 * pref / sqrt_det;
}

}  // namespace detail

double chernoff_qs_cms(const TwoModeNormalCM& v0, const TwoModeNormalCM& v1, double s) {
  return detail::chernoff_qs_scaled_lambda(v0, v1, s, 1.0);
}

double chernoff_qs(const MemoryModel& mem, double nS, double s) {
  if (!(s > 0.0) || !(s < 1.0))
    throw DomainError("chernoff_qs: s must lie in (0, 1)");
  mem.validate();
  if (mem.r0 == mem.r1) return 1.0;  // identical states
  return chernoff_qs_cms(output_cm(mem, Bit::zero, nS),
                         output_cm(mem, Bit::one, nS), s);
}

ChernoffTerm chernoff_infimum(const MemoryModel& mem, double nS) {
  mem.validate();
  if (mem.r0 == mem.r1) return {1.0, 0.5};
  const TwoModeNormalCM v0 = output_cm(mem, Bit::zero, nS);
  const TwoModeNormalCM v1 = output_cm(mem, Bit::one, nS);
  const auto f = [&](double s) { return chernoff_qs_cms(v0, v1, s); };

  constexpr double kEdge = 1e-6;
  ScalarMinimum m = golden_section_minimize(f, kEdge, 1.0 - kEdge, 1e-9, 21);
  ChernoffTerm best{m.value, m.x};
  // Boundary infima (ideal and near-ideal memories) sit at s -> 1; the
  // search interval stops at 1 - 1e-6, so probe closer to the limit.
  for (double s : {1.0 - 1e-9, 1.0 - 1e-12, 1e-9, 1e-12}) {
    const double v = f(s);
    if (v < best.q) best = {v, s};
  }
  if (!std::isfinite(best.q) || !(best.q > 0.0) || best.q > 1.0 + 1e-9)
    throw OptimizationError("chernoff_infimum: Q_s left (0, 1]");
  return best;
}

ChernoffTerm quantum_chernoff_term(const MemoryModel& mem, double nS) {
  mem.validate();
  if (mem.r0 == mem.r1) return {1.0, 0.5};
  if (mem.r1 > 1.0 - 1e-9)  // pure branch: infimum is the s->1 fidelity limit
    return {ideal_chernoff_term(mem.r0, mem.nB, nS), 1.0};
  return chernoff_infimum(mem, nS);
}

QuantumBound quantum_bound(const MemoryModel& mem, const SignalProfile& sig) {
  sig.validate();
  const ChernoffTerm term = quantum_chernoff_term(mem, sig.nS);
  const double lnq = mem.r1 > 1.0 - 1e-9 && mem.r0 != mem.r1
                         ? log_ideal_chernoff_term(mem.r0, mem.nB, sig.nS)
                         : std::log(term.q);
  return {0.5 * std::exp(static_cast<double>(sig.m) * lnq), term.s_star};
}

BoundPair compute_bounds(const MemoryModel& mem, const SignalProfile& sig) {
  const QuantumBound qb = quantum_bound(mem, sig);
  return {classical_bound(mem, sig), qb.q_bound, qb.s_star};
}

double log_ideal_chernoff_term(double r0, double nB, double nS) {
  if (!(r0 >= 0.0) || !(r0 <= 1.0) || !(nB >= 0.0) || !(nS > 0.0))
    throw DomainError("ideal_chernoff_term: invalid parameters");
  const double omq = (1.0 - r0) / (1.0 + std::sqrt(r0));  // 1 - sqrt(r0)
  const double d_minus_1 = omq * nS * (2.0 + omq * nS)
                         + nB * (2.0 * nS + 1.0) * (1.0 - r0);
  return -std::log1p(d_minus_1);
}

double ideal_chernoff_term(double r0, double nB, double nS) {
  return std::exp(log_ideal_chernoff_term(r0, nB, nS));
}

double log_ideal_fidelity(double r0, double nB, double nS) {
  if (!(r0 >= 0.0) || !(r0 <= 1.0) || !(nB >= 0.0) || !(nS >= 0.0))
    throw DomainError("ideal_fidelity: invalid parameters");
  const double omq = (1.0 - r0) / (1.0 + std::sqrt(r0));
  const double gamma = 1.0 + (1.0 - r0) * nB;
  return -std::log1p((1.0 - r0) * nB) - omq * omq * nS / gamma;
}

double ideal_fidelity(double r0, double nB, double nS) {
  return std::exp(log_ideal_fidelity(r0, nB, nS));
}

}  // namespace qread
