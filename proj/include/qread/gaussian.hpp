#pragma once

// Two-mode Gaussian covariance matrices in the normal form
//
//     V = [ a*I  c*Z ]      I = diag(1,1),  Z = diag(1,-1)
//         [ c*Z  b*I ]
//
// with the quadrature convention [x_k, x_l] = 2i*Omega and vacuum CM = I
// (a thermal mode with nB mean photons has CM (2*nB+1)*I).  All states in
// this library have CMs of this form, so the symplectic spectrum and the
// diagonalizing symplectic matrix are closed-form scalars.

#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "qread/errors.hpp"

namespace qread {

/// A CM is accepted as physical when nu_min >= 1 - kPhysicalityTol
/// (guards round-off on pure states, where y = 4 exactly only in reals).
inline constexpr double kPhysicalityTol = 1e-9;

/// Below this distance from nu = 1 the spectral scalars G_p, Lambda_p take
/// their pure-state limit 1 explicitly (avoids 0^p/0^p).
inline constexpr double kPureBranchTol = 1e-12;

struct TwoModeNormalCM {
  double a = 1.0;  // first-mode quadrature variance, vacuum = 1
  double b = 1.0;  // second-mode quadrature variance
  double c = 0.0;  // cross-mode correlation amplitude, >= 0

  /// y = (a+b)^2 - 4c^2; physical CMs have y >= 4.
  double y() const { return (a + b) * (a + b) - 4.0 * c * c; }

  /// Dense 4x4 view (qqpp-free ordering q1,p1,q2,p2); tests only.
  Eigen::Matrix4d dense() const {
    Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
    v(0, 0) = a; v(1, 1) = a;
    v(2, 2) = b; v(3, 3) = b;
    v(0, 2) = c; v(2, 0) = c;
    v(1, 3) = -c; v(3, 1) = -c;
    return v;
  }
};

/// Symplectic form Omega for two modes in (q1,p1,q2,p2) ordering.
inline Eigen::Matrix4d symplectic_form() {
  Eigen::Matrix4d om = Eigen::Matrix4d::Zero();
  om(0, 1) = 1; om(1, 0) = -1;
  om(2, 3) = 1; om(3, 2) = -1;
  return om;
}

/// Symplectic eigenvalues nu1 = (sqrt(y)+a-b)/2, nu2 = (sqrt(y)+b-a)/2.
/// Throws NonPhysicalCM when y < 4 beyond tolerance or nu_min < 1 - tol.
inline std::pair<double, double> symplectic_spectrum(const TwoModeNormalCM& cm) {
  const double y = cm.y();
  if (y < 0.0)
    throw NonPhysicalCM("symplectic_spectrum: (a+b)^2 - 4c^2 < 0");
  const double sy = std::sqrt(y);
  const double nu1 = 0.5 * (sy + cm.a - cm.b);
  const double nu2 = 0.5 * (sy + cm.b - cm.a);
  if (std::min(nu1, nu2) < 1.0 - kPhysicalityTol)
    throw NonPhysicalCM("symplectic_spectrum: nu_min < 1 (uncertainty principle)");
  return {nu1, nu2};
}

/// Williamson data for the normal form: V = S * (nu1*I (+) nu2*I) * S^T with
///
///     S = [ x+*I  x-*Z ],   x_pm = sqrt((a+b ± sqrt(y)) / (2*sqrt(y))).
///         [ x-*Z  x+*I ]
struct SymplecticDecomposition {
  double nu1 = 1.0;
  double nu2 = 1.0;
  double x_plus = 1.0;
  double x_minus = 0.0;

  Eigen::Matrix4d symplectic() const {
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s(0, 0) = x_plus; s(1, 1) = x_plus;
    s(2, 2) = x_plus; s(3, 3) = x_plus;
    s(0, 2) = x_minus; s(2, 0) = x_minus;
    s(1, 3) = -x_minus; s(3, 1) = -x_minus;
    return s;
  }

  Eigen::Matrix4d williamson_form() const {
    Eigen::Vector4d w(nu1, nu1, nu2, nu2);
    return w.asDiagonal();
  }
};

inline SymplecticDecomposition williamson(const TwoModeNormalCM& cm) {
  const auto [nu1, nu2] = symplectic_spectrum(cm);
  const double sy = std::sqrt(cm.y());
  const double s = cm.a + cm.b;
  SymplecticDecomposition d;
  d.nu1 = nu1;
  d.nu2 = nu2;
  d.x_plus = std::sqrt((s + sy) / (2.0 * sy));
  d.x_minus = std::sqrt(std::max(0.0, (s - sy)) / (2.0 * sy));
  return d;
}

/// G_p(nu) = 2^p / [(nu+1)^p - (nu-1)^p].  For a thermal mode with
/// symplectic eigenvalue nu this equals Tr rho^p; G_p(1) = 1 by the
/// pure-state limit.
inline double gp(double nu, double p) {
  if (!(p > 0.0) || p > 1.0)
    throw DomainError("gp: p must lie in (0, 1]");
  if (nu < 1.0 - kPhysicalityTol)
    throw DomainError("gp: nu must be >= 1");
  if (std::abs(nu - 1.0) < kPureBranchTol) return 1.0;
  nu = std::max(nu, 1.0);
  return std::pow(2.0, p) / (std::pow(nu + 1.0, p) - std::pow(nu - 1.0, p));
}

/// Lambda_p(nu) = [(nu+1)^p + (nu-1)^p] / [(nu+1)^p - (nu-1)^p]:
/// symplectic eigenvalue of the renormalized power rho^p / Tr rho^p.
/// Lambda_p(1) = 1, Lambda_1(nu) = nu.
inline double lambda_p(double nu, double p) {
  if (!(p > 0.0) || p > 1.0)
    throw DomainError("lambda_p: p must lie in (0, 1]");
  if (nu < 1.0 - kPhysicalityTol)
    throw DomainError("lambda_p: nu must be >= 1");
  if (std::abs(nu - 1.0) < kPureBranchTol) return 1.0;
  nu = std::max(nu, 1.0);
  const double up = std::pow(nu + 1.0, p);
  const double dn = std::pow(nu - 1.0, p);
  return (up + dn) / (up - dn);
}

}  // namespace qread
