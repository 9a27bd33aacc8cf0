#pragma once

// Brute-force referee on a truncated Fock space.  States are dense density
// operators in the number basis; the lossy-thermal channel is realized by an
// explicit beam-splitter dilation (mode ⊗ thermal ancilla, unitary generated
// by the quadrature coupling x_r = sqrt(r) x_s + sqrt(1-r) x_b), traced over
// the ancilla.  Everything here is independent of the Gaussian closed forms
// it certifies.
//
// Two-mode operators produced in this problem commute with N_r - N_i, so the
// expensive spectral work also comes in a sector-blocked flavour
// (TwoModeSectors) that never materializes the dim^2 x dim^2 matrix; the
// dense and blocked routes are cross-checked in the tests.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "qread/errors.hpp"

namespace qread::fock {

using CMat = Eigen::MatrixXcd;

struct FockOperator {
  int dim = 0;    // truncation cutoff per mode (basis |0..dim-1>)
  int modes = 1;  // 1 or 2; two-mode index is n_first * dim + n_second
  CMat entries;   // dense Hermitian, size dim^modes
  double trace_deficit = 0.0;  // 1 - Tr, recorded at construction for states
};

FockOperator vacuum_state(int dim);
/// |alpha> with real amplitude; mean quadratures (2*alpha, 0).
FockOperator coherent_state(double alpha, int dim);
FockOperator thermal_state(double nB, int dim);

/// Truncated two-mode squeezed vacuum |xi> = sech(xi) sum tanh(xi)^n |n,n>,
/// N_S = sinh^2(xi); mode 0 is the signal.  TruncationError when the
/// truncated norm deficit exceeds tol.
FockOperator tmsv_ket(double nS, int dim, double tol = 1e-8);

/// Lossy-thermal channel on mode 0 via the explicit dilation.  dim_bath <= 0
/// picks a bath cutoff covering the thermal tail plus the system photons.
FockOperator apply_loss(const FockOperator& state, double r, double nB,
                        int dim_bath = 0, double tol = 1e-8);

/// F = [Tr sqrt(sqrt(rho) sigma sqrt(rho))]^2 (squared-overlap convention:
/// coherent states give exp(-|alpha-beta|^2)).
double uhlmann_fidelity(const FockOperator& rho, const FockOperator& sigma);

/// Tr[rho^s sigma^(1-s)], fractional powers by eigendecomposition with
/// negative eigenvalues clipped at the -1e-10 floor.
double chernoff_trace(const FockOperator& rho, const FockOperator& sigma, double s);

/// Exact minimum error probability [1 - D(rho, sigma)]/2 for equiprobable
/// hypotheses, D the trace distance.
double helstrom_error(const FockOperator& rho, const FockOperator& sigma);

/// Tr rho^p (diagnostic; for a thermal state equals G_p(2nB+1)).
double trace_power(const FockOperator& rho, double p);

double mean_photons(const FockOperator& state, int mode);

/// First moments (q1, p1, ...) in the [x_k, x_l] = 2i*Omega convention.
Eigen::VectorXd mean_quadratures(const FockOperator& state);

/// Covariance matrix (2*modes square) in the same convention; vacuum -> I.
Eigen::MatrixXd covariance_matrix(const FockOperator& state);

/// Two-mode operator stored as blocks over the photon-number difference
/// d = n_first - n_second.  Sector d holds basis states |n, n-d> ordered by
/// n; all states built from a TMSV with loss on one arm live exactly in
/// this block structure.
class TwoModeSectors {
 public:
  /// rho_ri(u) of the EPR transmitter: TMSV(nS), loss (r, nB) on the signal.
  static TwoModeSectors epr_output(double nS, double r, double nB, int dim,
                                   double tol = 1e-8);

  /// Splits a dense two-mode operator; NumericalError when mass outside the
  /// sector pattern exceeds leak_tol.
  static TwoModeSectors from_dense(const FockOperator& op, double leak_tol = 1e-10);

  FockOperator to_dense() const;

  int dim() const { return dim_; }
  double trace() const;
  double trace_deficit() const { return trace_deficit_; }

  friend double chernoff_trace(const TwoModeSectors& rho, const TwoModeSectors& sigma,
                               double s);
  friend double helstrom_error(const TwoModeSectors& rho, const TwoModeSectors& sigma);
  friend double uhlmann_fidelity(const TwoModeSectors& rho, const TwoModeSectors& sigma);

 private:
  TwoModeSectors(int dim, double deficit);
  Eigen::MatrixXd& block(int d) { return blocks_[static_cast<std::size_t>(d + dim_ - 1)]; }
  const Eigen::MatrixXd& block(int d) const {
    return blocks_[static_cast<std::size_t>(d + dim_ - 1)];
  }

  int dim_ = 0;
  double trace_deficit_ = 0.0;
  std::vector<Eigen::MatrixXd> blocks_;  // index d + dim - 1, d in [-(dim-1), dim-1]
};

double chernoff_trace(const TwoModeSectors& rho, const TwoModeSectors& sigma, double s);
double helstrom_error(const TwoModeSectors& rho, const TwoModeSectors& sigma);
double uhlmann_fidelity(const TwoModeSectors& rho, const TwoModeSectors& sigma);

}  // namespace qread::fock
