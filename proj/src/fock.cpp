#include "qread/fock.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace qread::fock {

namespace {

constexpr double kEigFloor = -1e-10;   // below this a negative eigenvalue is an error
constexpr double kRelNoise = 1e-14;    // relative spectral noise floor (zeroed)
constexpr double kThermalTail = 1e-16;

std::vector<double> thermal_weights(double nB) {
  if (!(nB >= 0.0)) throw DomainError("thermal weights: nB must be >= 0");
  if (nB == 0.0) return {1.0};
  const double t = nB / (1.0 + nB);
  const int n = std::max(2, static_cast<int>(std::ceil(std::log(kThermalTail) / std::log(t))) + 2);
  std::vector<double> p(static_cast<std::size_t>(n));
  double w = 1.0 - t;
  for (auto& v : p) { v = w; w *= t; }
  return p;
}

std::vector<double> tmsv_coefficients(double nS, int dim) {
  const double xi = std::asinh(std::sqrt(nS));
  const double t = std::tanh(xi), sech = 1.0 / std::cosh(xi);
  std::vector<double> c(static_cast<std::size_t>(dim));
  double v = sech;
  for (auto& x : c) { x = v; v *= t; }
  return c;
}

void check_state_like(const FockOperator& op) {
  const Eigen::Index n = op.entries.rows();
  if (n != op.entries.cols() || op.dim <= 0)
    throw DomainError("FockOperator: entries must be square with dim > 0");
  Eigen::Index expect = 1;
  for (int m = 0; m < op.modes; ++m) expect *= op.dim;
  if (n != expect) throw DomainError("FockOperator: entries size != dim^modes");
}

// Hermitize and eigendecompose; clips spectral noise, rejects eigenvalues
// below the negative floor.
struct Spectrum {
  Eigen::VectorXd values;
  CMat vectors;
};

Spectrum state_spectrum(const FockOperator& op) {
  check_state_like(op);
  const CMat h = 0.5 * (op.entries + op.entries.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(h);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigendecomposition failed");
  Eigen::VectorXd w = es.eigenvalues();
  const double floor = kRelNoise * std::max(0.0, w.maxCoeff());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < kEigFloor)
      throw NumericalError("state eigenvalue below the -1e-10 floor");
    if (w[i] < floor) w[i] = 0.0;
  }
  return {std::move(w), es.eigenvectors()};
}

// Beam-splitter dilation U = exp[theta (a_s^+ a_b - a_s a_b^+)] with
// cos(theta) = sqrt(r), exact unitary on the truncated product space.
// U conserves the total photon number, so it is built per total-N block
// over the system occupation j.
class Dilation {
 public:
  Dilation(int d_sys, int d_bath, double r) : ds_(d_sys), db_(d_bath) {
    const double theta = std::acos(std::min(1.0, std::sqrt(r)));
    const int nmax = ds_ + db_ - 2;
    blocks_.reserve(static_cast<std::size_t>(nmax + 1));
    jmin_.reserve(static_cast<std::size_t>(nmax + 1));
    for (int N = 0; N <= nmax; ++N) {
      const int jmin = std::max(0, N - (db_ - 1));
      const int jmax = std::min(N, ds_ - 1);
      const int n = jmax - jmin + 1;
      jmin_.push_back(jmin);
      if (n == 1) {
        blocks_.push_back(Eigen::MatrixXd::Ones(1, 1));
        continue;
      }
      CMat h = CMat::Zero(n, n);  // i * generator, Hermitian tridiagonal
      for (int i = 0; i + 1 < n; ++i) {
        const int j = jmin + i;
        const double g = theta * std::sqrt(double(j + 1) * double(N - j));
        h(i + 1, i) = std::complex<double>(0.0, g);
        h(i, i + 1) = std::complex<double>(0.0, -g);
      }
      Eigen::SelfAdjointEigenSolver<CMat> es(h);
      CMat u = es.eigenvectors()
               * (std::complex<double>(0.0, -1.0) * es.eigenvalues().array())
                     .exp().matrix().asDiagonal()
               * es.eigenvectors().adjoint();
      blocks_.push_back(u.real());  // exp of a real antisymmetric generator
    }
  }

  /// <m, l | U | k, n>; zero unless m + l = k + n and indices fit.
  double element(int m, int l, int k, int n) const {
    const int N = k + n;
    if (m + l != N || m < 0 || m >= ds_ || l < 0 || l >= db_ || k >= ds_ || n >= db_)
      return 0.0;
    if (N >= static_cast<int>(blocks_.size())) return 0.0;
    const int jmin = jmin_[static_cast<std::size_t>(N)];
    return blocks_[static_cast<std::size_t>(N)](m - jmin, k - jmin);
  }

  int bath_dim() const { return db_; }

 private:
  int ds_, db_;
  std::vector<Eigen::MatrixXd> blocks_;
  std::vector<int> jmin_;
};

}  // namespace

FockOperator vacuum_state(int dim) {
  FockOperator op{dim, 1, CMat::Zero(dim, dim), 0.0};
  op.entries(0, 0) = 1.0;
  return op;
}

FockOperator coherent_state(double alpha, int dim) {
  if (dim < 1) throw DomainError("coherent_state: dim must be >= 1");
  if (alpha == 0.0) return vacuum_state(dim);
  Eigen::VectorXd psi(dim);
  for (int n = 0; n < dim; ++n)
    psi[n] = std::exp(-0.5 * alpha * alpha + n * std::log(alpha)
                      - 0.5 * std::lgamma(double(n) + 1.0));
  FockOperator op{dim, 1, (psi * psi.transpose()).cast<std::complex<double>>(), 0.0};
  op.trace_deficit = 1.0 - psi.squaredNorm();
  return op;
}

FockOperator thermal_state(double nB, int dim) {
  if (dim < 1) throw DomainError("thermal_state: dim must be >= 1");
  if (!(nB >= 0.0)) throw DomainError("thermal_state: nB must be >= 0");
  FockOperator op{dim, 1, CMat::Zero(dim, dim), 0.0};
  if (nB == 0.0) {
    op.entries(0, 0) = 1.0;
    return op;
  }
  const double t = nB / (1.0 + nB);
  double w = 1.0 - t;
  for (int n = 0; n < dim; ++n) {
    op.entries(n, n) = w;
    w *= t;
  }
  op.trace_deficit = std::pow(t, dim);  // geometric tail mass
  return op;
}

FockOperator tmsv_ket(double nS, int dim, double tol) {
  if (!(nS >= 0.0)) throw DomainError("tmsv_ket: nS must be >= 0");
  if (dim < 1) throw DomainError("tmsv_ket: dim must be >= 1");
  const auto c = tmsv_coefficients(nS, dim);
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(Eigen::Index(dim) * dim);
  for (int k = 0; k < dim; ++k)
    psi[Eigen::Index(k) * dim + k] = c[static_cast<std::size_t>(k)];
  FockOperator op{dim, 2, (psi * psi.transpose()).cast<std::complex<double>>(), 0.0};
  op.trace_deficit = 1.0 - psi.squaredNorm();
  if (op.trace_deficit >= tol)
    throw TruncationError("tmsv_ket: trace deficit above tolerance; raise dim");
  return op;
}

FockOperator apply_loss(const FockOperator& state, double r, double nB,
                        int dim_bath, double tol) {
  check_state_like(state);
  if (!(r >= 0.0) || !(r <= 1.0)) throw DomainError("apply_loss: r must lie in [0, 1]");
  if (!(nB >= 0.0)) throw DomainError("apply_loss: nB must be >= 0");
  if (state.modes != 1 && state.modes != 2)
    throw DomainError("apply_loss: one- or two-mode states only");
  if (r == 1.0) return state;  // identity channel regardless of the bath

  const int d = state.dim;
  const auto pn = thermal_weights(nB);
  const int db = dim_bath > 0 ? dim_bath : d + static_cast<int>(pn.size());
  const Dilation dil(d, db, r);

  const Spectrum sp = state_spectrum(state);
  const Eigen::Index size = state.entries.rows();
  CMat out = CMat::Zero(size, size);
  Eigen::VectorXcd phi(size);
  for (Eigen::Index e = 0; e < sp.values.size(); ++e) {
    const double w = sp.values[e];
    if (w == 0.0) continue;
    const Eigen::VectorXcd psi = sp.vectors.col(e);
    for (int n = 0; n < static_cast<int>(pn.size()); ++n) {
      for (int l = 0; l < db; ++l) {
        const int delta = n - l;
        phi.setZero();
        bool any = false;
        for (int k = std::max(0, -delta); k < d && k + delta < d; ++k) {
          const double u = dil.element(k + delta, l, k, n);
          if (u == 0.0) continue;
          any = true;
          if (state.modes == 1) {
            phi[k + delta] = u * psi[k];
          } else {
            phi.segment(Eigen::Index(k + delta) * d, d) =
                u * psi.segment(Eigen::Index(k) * d, d);
          }
        }
        if (!any) continue;
        out.noalias() += (w * pn[static_cast<std::size_t>(n)]) * (phi * phi.adjoint());
      }
    }
  }
  FockOperator res{d, state.modes, 0.5 * (out + out.adjoint()), 0.0};
  res.trace_deficit = 1.0 - res.entries.real().trace();
  if (res.trace_deficit >= tol)
    throw TruncationError("apply_loss: output trace deficit above tolerance; raise dim");
  return res;
}

double uhlmann_fidelity(const FockOperator& rho, const FockOperator& sigma) {
  if (rho.dim != sigma.dim || rho.modes != sigma.modes)
    throw DomainError("uhlmann_fidelity: shape mismatch");
  const Spectrum a = state_spectrum(rho);
  const CMat sqrt_rho = a.vectors * a.values.cwiseSqrt().asDiagonal() * a.vectors.adjoint();
  const CMat t = sqrt_rho * sigma.entries * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (t + t.adjoint()));
  if (es.info() != Eigen::Success) throw NumericalError("uhlmann_fidelity: eig failed");
  Eigen::VectorXd w = es.eigenvalues();
  const double floor = kRelNoise * std::max(0.0, w.maxCoeff());
  double s = 0.0;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < kEigFloor) throw NumericalError("uhlmann_fidelity: eigenvalue below floor");
    if (w[i] > floor) s += std::sqrt(w[i]);
  }
  return s * s;
}

double chernoff_trace(const FockOperator& rho, const FockOperator& sigma, double s) {
  if (!(s > 0.0) || !(s < 1.0)) throw DomainError("chernoff_trace: s must lie in (0, 1)");
  if (rho.dim != sigma.dim || rho.modes != sigma.modes)
    throw DomainError("chernoff_trace: shape mismatch");
  const Spectrum a = state_spectrum(rho);
  const Spectrum b = state_spectrum(sigma);
  const Eigen::MatrixXd overlap = (a.vectors.adjoint() * b.vectors).cwiseAbs2();
  const Eigen::VectorXd x = a.values.array().pow(s).matrix();
  const Eigen::VectorXd y = b.values.array().pow(1.0 - s).matrix();
  return x.dot(overlap * y);
}

double helstrom_error(const FockOperator& rho, const FockOperator& sigma) {
  if (rho.dim != sigma.dim || rho.modes != sigma.modes)
    throw DomainError("helstrom_error: shape mismatch");
  const CMat d = 0.5 * (rho.entries - sigma.entries);
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (d + d.adjoint()),
                                         Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("helstrom_error: eig failed");
  return 0.5 * (1.0 - es.eigenvalues().cwiseAbs().sum());
}

double trace_power(const FockOperator& rho, double p) {
  if (!(p > 0.0) || p > 1.0) throw DomainError("trace_power: p must lie in (0, 1]");
  const Spectrum a = state_spectrum(rho);
  return a.values.array().pow(p).sum();
}

// ---- moments via ladder-operator contractions --------------------------

namespace {

struct Ladder {  // first and second ladder moments of one or two modes
  std::complex<double> a0, a1;        // <a_mode>
  std::complex<double> a0a0, a1a1;    // <a^2>
  double n0 = 0.0, n1 = 0.0;          // <a^+ a>
  std::complex<double> a0a1, a0a1d;   // <a_0 a_1>, <a_0 a_1^+>
};

Ladder ladder_moments(const FockOperator& st) {
  check_state_like(st);
  Ladder L{};
  const CMat& r = st.entries;
  const int d = st.dim;
  if (st.modes == 1) {
    for (int m = 0; m < d; ++m) {
      L.n0 += m * std::real(r(m, m));
      if (m + 1 < d) L.a0 += std::sqrt(double(m + 1)) * r(m + 1, m);
      if (m + 2 < d) L.a0a0 += std::sqrt(double(m + 1) * double(m + 2)) * r(m + 2, m);
    }
    return L;
  }
  const auto idx = [d](int nf, int ns) { return Eigen::Index(nf) * d + ns; };
  for (int m = 0; m < d; ++m) {
    for (int j = 0; j < d; ++j) {
      const double p = std::real(r(idx(m, j), idx(m, j)));
      L.n0 += m * p;
      L.n1 += j * p;
      if (m + 1 < d) L.a0 += std::sqrt(double(m + 1)) * r(idx(m + 1, j), idx(m, j));
      if (j + 1 < d) L.a1 += std::sqrt(double(j + 1)) * r(idx(m, j + 1), idx(m, j));
      if (m + 2 < d)
        L.a0a0 += std::sqrt(double(m + 1) * double(m + 2)) * r(idx(m + 2, j), idx(m, j));
      if (j + 2 < d)
        L.a1a1 += std::sqrt(double(j + 1) * double(j + 2)) * r(idx(m, j + 2), idx(m, j));
      if (m + 1 < d && j + 1 < d)
        L.a0a1 += std::sqrt(double(m + 1) * double(j + 1)) * r(idx(m + 1, j + 1), idx(m, j));
      if (m + 1 < d && j >= 1)
        L.a0a1d += std::sqrt(double(m + 1) * double(j)) * r(idx(m + 1, j - 1), idx(m, j));
    }
  }
  return L;
}

}  // namespace

double mean_photons(const FockOperator& state, int mode) {
  if (mode < 0 || mode >= state.modes) throw DomainError("mean_photons: bad mode");
  const Ladder L = ladder_moments(state);
  return mode == 0 ? L.n0 : L.n1;
}

Eigen::VectorXd mean_quadratures(const FockOperator& state) {
  const Ladder L = ladder_moments(state);
  Eigen::VectorXd x(2 * state.modes);
  x[0] = 2.0 * L.a0.real();
  x[1] = 2.0 * L.a0.imag();
  if (state.modes == 2) {
    x[2] = 2.0 * L.a1.real();
    x[3] = 2.0 * L.a1.imag();
  }
  return x;
}

Eigen::MatrixXd covariance_matrix(const FockOperator& state) {
  const Ladder L = ladder_moments(state);
  const Eigen::VectorXd xb = mean_quadratures(state);
  const int n = 2 * state.modes;
  Eigen::MatrixXd v(n, n);
  // <q^2> = 1 + 2<n> + 2 Re<a^2>, <p^2> = 1 + 2<n> - 2 Re<a^2>,
  // sym<qp> = 2 Im<a^2>; cross-mode terms from <a0 a1>, <a0 a1^+>.
  v(0, 0) = 1.0 + 2.0 * L.n0 + 2.0 * L.a0a0.real();
  v(1, 1) = 1.0 + 2.0 * L.n0 - 2.0 * L.a0a0.real();
  v(0, 1) = v(1, 0) = 2.0 * L.a0a0.imag();
  if (state.modes == 2) {
    v(2, 2) = 1.0 + 2.0 * L.n1 + 2.0 * L.a1a1.real();
    v(3, 3) = 1.0 + 2.0 * L.n1 - 2.0 * L.a1a1.real();
    v(2, 3) = v(3, 2) = 2.0 * L.a1a1.imag();
    v(0, 2) = v(2, 0) = 2.0 * (L.a0a1.real() + L.a0a1d.real());
    v(1, 3) = v(3, 1) = 2.0 * (L.a0a1d.real() - L.a0a1.real());
    v(0, 3) = v(3, 0) = 2.0 * (L.a0a1.imag() - L.a0a1d.imag());
    v(1, 2) = v(2, 1) = 2.0 * (L.a0a1.imag() + L.a0a1d.imag());
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i, j) -= xb[i] * xb[j];
  return v;
}

// ---- sector-blocked two-mode pipeline -----------------------------------

TwoModeSectors::TwoModeSectors(int dim, double deficit)
    : dim_(dim), trace_deficit_(deficit),
      blocks_(static_cast<std::size_t>(2 * dim - 1)) {
  for (int d = -(dim_ - 1); d <= dim_ - 1; ++d) {
    const int n = dim_ - std::abs(d);
    block(d) = Eigen::MatrixXd::Zero(n, n);
  }
}

TwoModeSectors TwoModeSectors::epr_output(double nS, double r, double nB, int dim,
                                          double tol) {
  if (!(nS > 0.0)) throw DomainError("epr_output: nS must be > 0");
  if (!(r >= 0.0) || !(r <= 1.0)) throw DomainError("epr_output: r must lie in [0, 1]");
  const auto c = tmsv_coefficients(nS, dim);
  double norm2 = 0.0;
  for (double x : c) norm2 += x * x;
  if (1.0 - norm2 >= tol)
    throw TruncationError("epr_output: TMSV trace deficit above tolerance; raise dim");

  TwoModeSectors st(dim, 0.0);
  if (r == 1.0) {  // identity channel: the pure TMSV, all in sector 0
    Eigen::VectorXd psi = Eigen::Map<const Eigen::VectorXd>(c.data(), dim);
    st.block(0) = psi * psi.transpose();
    st.trace_deficit_ = 1.0 - norm2;
    return st;
  }

  const auto pn = thermal_weights(nB);
  const int db = dim + static_cast<int>(pn.size());
  const Dilation dil(dim, db, r);
  Eigen::VectorXd phi(dim);
  for (int n = 0; n < static_cast<int>(pn.size()); ++n) {
    const double wn = pn[static_cast<std::size_t>(n)];
    for (int l = 0; l < db; ++l) {
      const int delta = n - l;
      if (std::abs(delta) > dim - 1) continue;
      const int k_lo = std::max(0, -delta);
      const int k_hi = std::min(dim - 1, dim - 1 - delta);  // k and k+delta in range
      const int len = k_hi - k_lo + 1;
      if (len <= 0) continue;
      bool any = false;
      for (int k = k_lo; k <= k_hi; ++k) {
        const double u = dil.element(k + delta, l, k, n);
        phi[k - k_lo] = c[static_cast<std::size_t>(k)] * u;
        any = any || u != 0.0;
      }
      if (!any) continue;
      // sector basis |n_r, n_r - delta> ordered by n_r: local index k - k_lo
      st.block(delta).noalias() +=
          wn * (phi.head(len) * phi.head(len).transpose());
    }
  }
  st.trace_deficit_ = 1.0 - st.trace();
  if (st.trace_deficit_ >= tol)
    throw TruncationError("epr_output: output trace deficit above tolerance; raise dim");
  return st;
}

TwoModeSectors TwoModeSectors::from_dense(const FockOperator& op, double leak_tol) {
  check_state_like(op);
  if (op.modes != 2) throw DomainError("TwoModeSectors: two-mode operators only");
  const int dim = op.dim;
  TwoModeSectors st(dim, op.trace_deficit);
  double leak = 0.0;
  for (int nf = 0; nf < dim; ++nf)
    for (int ns = 0; ns < dim; ++ns)
      for (int mf = 0; mf < dim; ++mf)
        for (int ms = 0; ms < dim; ++ms) {
          const std::complex<double> v =
              op.entries(Eigen::Index(nf) * dim + ns, Eigen::Index(mf) * dim + ms);
          const int d1 = nf - ns, d2 = mf - ms;
          if (d1 == d2) {
            st.block(d1)(nf - std::max(0, d1), mf - std::max(0, d1)) = v.real();
            leak = std::max(leak, std::abs(v.imag()));
          } else {
            leak = std::max(leak, std::abs(v));
          }
        }
  if (leak > leak_tol)
    throw NumericalError("TwoModeSectors: operator leaks outside the sector pattern");
  return st;
}

FockOperator TwoModeSectors::to_dense() const {
  const int dim = dim_;
  FockOperator op{dim, 2, CMat::Zero(Eigen::Index(dim) * dim, Eigen::Index(dim) * dim),
                  trace_deficit_};
  for (int d = -(dim - 1); d <= dim - 1; ++d) {
    const Eigen::MatrixXd& b = block(d);
    const int base = std::max(0, d);
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) {
        const int nf = base + i, mf = base + j;
        op.entries(Eigen::Index(nf) * dim + (nf - d), Eigen::Index(mf) * dim + (mf - d)) =
            b(i, j);
      }
  }
  return op;
}

double TwoModeSectors::trace() const {
  double t = 0.0;
  for (const auto& b : blocks_) t += b.trace();
  return t;
}

namespace {

struct BlockSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

BlockSpectrum block_spectrum(const Eigen::MatrixXd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (b + b.transpose()));
  if (es.info() != Eigen::Success) throw NumericalError("sector eig failed");
  Eigen::VectorXd w = es.eigenvalues();
  const double floor = kRelNoise * std::max(0.0, w.maxCoeff());
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (w[i] < kEigFloor) throw NumericalError("sector eigenvalue below the -1e-10 floor");
    if (w[i] < floor) w[i] = 0.0;
  }
  return {std::move(w), es.eigenvectors()};
}

}  // namespace

double chernoff_trace(const TwoModeSectors& rho, const TwoModeSectors& sigma, double s) {
  if (!(s > 0.0) || !(s < 1.0)) throw DomainError("chernoff_trace: s must lie in (0, 1)");
  if (rho.dim_ != sigma.dim_) throw DomainError("chernoff_trace: dim mismatch");
  double tot = 0.0;
  for (int d = -(rho.dim_ - 1); d <= rho.dim_ - 1; ++d) {
    const Eigen::MatrixXd& a = rho.block(d);
    const Eigen::MatrixXd& b = sigma.block(d);
    if (a.cwiseAbs().maxCoeff() == 0.0 || b.cwiseAbs().maxCoeff() == 0.0) continue;
    const BlockSpectrum sa = block_spectrum(a);
    const BlockSpectrum sb = block_spectrum(b);
    const Eigen::MatrixXd overlap = (sa.vectors.transpose() * sb.vectors).cwiseAbs2();
    tot += sa.values.array().pow(s).matrix().dot(
        overlap * sb.values.array().pow(1.0 - s).matrix());
  }
  return tot;
}

double helstrom_error(const TwoModeSectors& rho, const TwoModeSectors& sigma) {
  if (rho.dim_ != sigma.dim_) throw DomainError("helstrom_error: dim mismatch");
  double norm1 = 0.0;
  for (int d = -(rho.dim_ - 1); d <= rho.dim_ - 1; ++d) {
    const Eigen::MatrixXd diff = 0.5 * (rho.block(d) - sigma.block(d));
    if (diff.cwiseAbs().maxCoeff() == 0.0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (diff + diff.transpose()),
                                                      Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("helstrom_error: eig failed");
    norm1 += es.eigenvalues().cwiseAbs().sum();
  }
  return 0.5 * (1.0 - norm1);
}

double uhlmann_fidelity(const TwoModeSectors& rho, const TwoModeSectors& sigma) {
  if (rho.dim_ != sigma.dim_) throw DomainError("uhlmann_fidelity: dim mismatch");
  double tot = 0.0;
  for (int d = -(rho.dim_ - 1); d <= rho.dim_ - 1; ++d) {
    const Eigen::MatrixXd& a = rho.block(d);
    const Eigen::MatrixXd& b = sigma.block(d);
    if (a.cwiseAbs().maxCoeff() == 0.0 || b.cwiseAbs().maxCoeff() == 0.0) continue;
    const BlockSpectrum sa = block_spectrum(a);
    const Eigen::MatrixXd sq =
        sa.vectors * sa.values.cwiseSqrt().asDiagonal() * sa.vectors.transpose();
    const Eigen::MatrixXd t = sq * b * sq;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (t + t.transpose()),
                                                      Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("uhlmann_fidelity: eig failed");
    const Eigen::VectorXd w = es.eigenvalues();
    const double floor = kRelNoise * std::max(0.0, w.maxCoeff());
    for (Eigen::Index i = 0; i < w.size(); ++i) {
      if (w[i] < kEigFloor) throw NumericalError("uhlmann_fidelity: eigenvalue below floor");
      if (w[i] > floor) tot += std::sqrt(w[i]);
    }
  }
  return tot * tot;
}

}  // namespace qread::fock
