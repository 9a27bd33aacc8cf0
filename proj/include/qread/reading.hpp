#pragma once

// Decoded-information view of the bounds: J = 1 - H(P_err) bits per cell,
// and the information gain G = J_quant - J_class certifying the quantum
// advantage whenever G > 0.

#include <cmath>

#include "qread/bounds.hpp"

namespace qread {

/// Binary Shannon entropy H(x) = -x log2 x - (1-x) log2(1-x), H(0)=H(1)=0.
inline double binary_entropy(double x) {
  if (!(x >= 0.0) || !(x <= 1.0))
    throw DomainError("binary_entropy: argument must lie in [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

struct GainReport {
  MemoryModel mem;
  SignalProfile sig;
  double c_bound = 0.5;
  double q_bound = 0.5;
  double j_class = 0.0;  // bits
  double j_quant = 0.0;  // bits
  double gain = 0.0;     // bits; > 0 certifies the quantum advantage
};

inline GainReport gain(const MemoryModel& mem, const SignalProfile& sig) {
  const BoundPair b = compute_bounds(mem, sig);
  GainReport rep;
  rep.mem = mem;
  rep.sig = sig;
  rep.c_bound = b.c_bound;
  rep.q_bound = b.q_bound;
  rep.j_class = 1.0 - binary_entropy(b.c_bound);
  rep.j_quant = 1.0 - binary_entropy(b.q_bound);
  rep.gain = rep.j_quant - rep.j_class;
  return rep;
}

}  // namespace qread
