#pragma once

// Discrimination bounds for reading one memory cell with M signal modes of
// energy N_S each:
//
//   classical lower bound   C(M, N_S) = [1 - sqrt(1 - F(N_S)^M)] / 2,
//     F = fidelity between the two coherent-probe outputs;
//   quantum upper bound     Q(M, N_S) = inf_s Tr[rho0^s rho1^(1-s)]^M / 2,
//     rho_u = EPR-transmitter output states (quantum Chernoff bound).
//
// Powers are taken in the log domain so M ~ 1e5..1e8 stays exact.

#include "qread/channel.hpp"

namespace qread {

struct BoundPair {
  double c_bound = 0.5;  // classical lower bound C
  double q_bound = 0.5;  // quantum Chernoff upper bound Q
  double s_star = 1.0;   // optimizing s of the Chernoff infimum
};

/// Fidelity (squared-overlap convention) between the two coherent-probe
/// outputs of the cell.  Exactly 1 when r0 == r1.
double coherent_fidelity(const MemoryModel& mem, double nS);

/// ln of coherent_fidelity, evaluated without forming the fidelity
/// (keeps full precision when F is within 1e-8 of 1).
double log_coherent_fidelity(const MemoryModel& mem, double nS);

/// C(M, N_S) = [1 - sqrt(1 - F^M)] / 2 with F^M = exp(M ln F).
double classical_bound(const MemoryModel& mem, const SignalProfile& sig);

/// ln(2*C) from ln F; exact for any M (used by the critical-point solver
/// where both bounds underflow as doubles).
double log_twice_classical_bound(double log_fidelity, double m);

/// Q_s = Tr[rho0^s rho1^(1-s)] for two zero-mean two-mode Gaussian states
/// in normal form:  Q_s = 4 * prod_k G_s(nu_k^0) G_{1-s}(nu_k^1)
///                        / sqrt(det[V0(s) + V1(1-s)]),
/// V_u(p) = S_u (⊕_k Lambda_p(nu_k^u) I) S_u^T.  The sum stays in normal
/// form, so the det is the scalar (A*B - C^2)^2.
double chernoff_qs_cms(const TwoModeNormalCM& v0, const TwoModeNormalCM& v1, double s);

/// Q_s for the EPR-transmitter output pair of the cell; 1 when r0 == r1.
double chernoff_qs(const MemoryModel& mem, double nS, double s);

struct ChernoffTerm {
  double q = 1.0;       // inf_s Q_s
  double s_star = 1.0;  // minimizing s (1.0 marks the boundary limit)
};

/// Numeric infimum of Q_s over s in (0,1): 21-point prescan, golden section
/// to 1e-9 in s, then probes at 1 - 1e-9 / 1 - 1e-12 (and mirrored) so a
/// boundary infimum is resolved to the limit rather than the search edge.
ChernoffTerm chernoff_infimum(const MemoryModel& mem, double nS);

/// inf_s Q_s with the ideal-memory shortcut: for r1 > 1 - 1e-9 the infimum
/// is the s->1 limit and equals the closed-form Chernoff term.
ChernoffTerm quantum_chernoff_term(const MemoryModel& mem, double nS);

struct QuantumBound {
  double q_bound = 0.5;
  double s_star = 1.0;
};

/// Q(M, N_S) = Q^M / 2 in the log domain.
QuantumBound quantum_bound(const MemoryModel& mem, const SignalProfile& sig);

/// Both bounds for one parameter point.
BoundPair compute_bounds(const MemoryModel& mem, const SignalProfile& sig);

/// Ideal memory (r1 = 1) closed forms:
///   Q(N_S) = 1 / ([1 + (1-sqrt(r0)) N_S]^2 + N_B (2 N_S + 1)(1 - r0))
///   F(N_S) = exp(-(1-sqrt(r0))^2 N_S / gamma) / gamma,  gamma = 1 + (1-r0) N_B
double ideal_chernoff_term(double r0, double nB, double nS);
double log_ideal_chernoff_term(double r0, double nB, double nS);
double ideal_fidelity(double r0, double nB, double nS);
double log_ideal_fidelity(double r0, double nB, double nS);

namespace detail {
/// Q_s with every Lambda_p value scaled by lambda_scale.  Certification
/// sensitivity hook for the oracle-check command; lambda_scale = 1 is the
/// production path.
double chernoff_qs_scaled_lambda(const TwoModeNormalCM& v0, const TwoModeNormalCM& v1,
                                 double s, double lambda_scale);
}  // namespace detail

}  // namespace qread
