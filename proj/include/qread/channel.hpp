#pragma once

// The memory cell as a pair of conditional attenuator channels.  Each cell
// is a beam splitter with reflectivity r0 (pit, bit 0) or r1 (land, bit 1),
// whose dark port carries white thermal noise with nB mean photons.  The
// transmitter side is described only by its signal profile {M, N_S}.

#include <cmath>
#include <cstdint>

#include "qread/errors.hpp"
#include "qread/gaussian.hpp"

namespace qread {

enum class Bit { zero = 0, one = 1 };

struct MemoryModel {
  double r0 = 0.0;  // pit reflectivity
  double r1 = 1.0;  // land reflectivity, r1 >= r0
  double nB = 0.0;  // mean thermal photons per bath mode

  void validate() const {
    if (!(r0 >= 0.0) || !(r0 <= 1.0) || !(r1 >= 0.0) || !(r1 <= 1.0))
      throw DomainError("MemoryModel: reflectivities must lie in [0, 1]");
    if (r1 < r0)
      throw DomainError("MemoryModel: convention requires r1 >= r0");
    if (!(nB >= 0.0))
      throw DomainError("MemoryModel: nB must be >= 0");
  }

  double reflectivity(Bit u) const { return u == Bit::zero ? r0 : r1; }
  bool ideal() const { return r1 == 1.0; }
};

struct SignalProfile {
  std::int64_t m = 1;  // number of signal modes
  double nS = 1.0;     // mean photons per signal mode

  void validate() const {
    if (m < 1) throw DomainError("SignalProfile: m must be a positive integer");
    if (!(nS > 0.0)) throw DomainError("SignalProfile: nS must be > 0");
  }
};

/// CM of the two-mode squeezed vacuum with N_S mean photons per arm:
/// a = b = 2*N_S+1, c = 2*sqrt(N_S*(N_S+1)).  Pure: nu1 = nu2 = 1.
inline TwoModeNormalCM tmsv_cm(double nS) {
  if (!(nS > 0.0)) throw DomainError("tmsv_cm: nS must be > 0");
  const double mu = 2.0 * nS + 1.0;
  return {mu, mu, 2.0 * std::sqrt(nS * (nS + 1.0))};
}

/// CM of the reflected+idler state when one TMSV arm passes the cell:
/// a = r*mu + (1-r)*beta, b = mu, c = sqrt(r*(mu^2-1)) with mu = 2*N_S+1,
/// beta = 2*N_B+1.  The idler marginal (b) is untouched by the channel.
inline TwoModeNormalCM output_cm(const MemoryModel& mem, Bit u, double nS) {
  mem.validate();
  if (!(nS > 0.0)) throw DomainError("output_cm: nS must be > 0");
  const double r = mem.reflectivity(u);
  const double mu = 2.0 * nS + 1.0;
  const double beta = 2.0 * mem.nB + 1.0;
  TwoModeNormalCM cm{r * mu + (1.0 - r) * beta, mu,
                     std::sqrt(r * (mu * mu - 1.0))};
  symplectic_spectrum(cm);  // internal assertion, never fires for valid inputs
  return cm;
}

/// Single isotropic Gaussian mode: CM = cm_scale * I plus first moments.
/// A coherent state |alpha> (alpha real) has mean (2*alpha, 0), cm_scale 1.
struct SingleModeGaussian {
  double mean_q = 0.0;
  double mean_p = 0.0;
  double cm_scale = 1.0;
};

/// Output of the coherent probe |sqrt(N_S)> through the cell:
/// mean (2*sqrt(r*N_S), 0), cm_scale = 1 + 2*(1-r)*N_B.
inline SingleModeGaussian coherent_output(const MemoryModel& mem, Bit u, double nS) {
  mem.validate();
  if (!(nS >= 0.0)) throw DomainError("coherent_output: nS must be >= 0");
  const double r = mem.reflectivity(u);
  return {2.0 * std::sqrt(r * nS), 0.0, 1.0 + 2.0 * (1.0 - r) * mem.nB};
}

}  // namespace qread
