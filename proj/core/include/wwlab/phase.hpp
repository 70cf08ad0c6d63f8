#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "wwlab/angle.hpp"
#include "wwlab/poly.hpp"

namespace wwlab {

// Streams q(n) mod 1 for a real polynomial q by forward differences: k+1
// registers, one mod-1 addition per register per step. Never forms q(n)
// directly, so the register magnitudes stay in [0,1) for any n. Per-step
// rounding in register j feeds every register below it, so worst-case drift
// against exact evaluation grows like binomial weights C(n,j)*2^-53 rather
// than linearly; for degree <= 2 it stays below 1e-9 out to a few thousand
// steps, and when every register lands on the 2^-52 dyadic lattice (e.g.
// q(n) = c n^2 with c representable in <= 52 bits) the stream is exact.
class PhaseAccumulator {
 public:
  // Registers seeded from consecutive values q(start), ..., q(start+k),
  // reduced mod 1 before differencing.
  static PhaseAccumulator from_values(std::span<const double> values);
  // q(n) = p(n) * scale; initial window evaluated with an fma product split
  // so the seeding is accurate even when p(start+j)*scale is large.
  static PhaseAccumulator for_scaled_poly(const PolyReal& p, double scale, long long start);

  double current() const { return r_.empty() ? 0.0 : r_[0]; }
  void advance();
  void retreat();
  void advance_by(long long steps);

 private:
  std::vector<double> r_;  // r_[j] = j-th forward difference of q at the cursor, mod 1
};

// One polynomial phase n -> p(n)*t mod 1, consumed front to back.
class PhaseStream {
 public:
  PhaseStream(PolyReal p, double scale, long long start = 0);

  // Yields p(position)*scale mod 1, then moves to position+1.
  Angle next();
  long long position() const { return position_; }

 private:
  PolyReal poly_;
  double scale_;
  long long position_;
  PhaseAccumulator acc_;
};

// p(n)*t mod 1 at a single index through the same register mechanism the
// streams use (cost O(n * degree) mod-1 additions).
double polynomial_phase_at(const PolyReal& p, double scale, long long n);

}  // namespace wwlab
