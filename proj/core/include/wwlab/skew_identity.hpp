#pragma once

#include <complex>

#include "wwlab/observable.hpp"
#include "wwlab/poly.hpp"
#include "wwlab/rational.hpp"
#include "wwlab/torus.hpp"

namespace wwlab {

// Character-pair reduction over a skew product (y, z): with fiber
// frequencies q1 = -b*k, q2 = a*k and base frequencies p1 = -b*kp,
// p2 = a*kp, the product of characters along the stride-a and stride-b
// lifted orbits collapses to
//
//   e^{2 pi i [(p1+p2) y0 + (q1+q2) z0]} * e^{2 pi i (c_top alpha^m n^{m+1} + psi(n))},
//
// where c_top is an exact rational and psi has degree <= m. verify_reduction
// checks this pointwise for n < N with the phase polynomials evaluated in
// exact integer arithmetic, which requires the parameters to sit on the
// dyadic lattice below (the map itself is exact there; only the final
// complex exponentials are floating point).
inline constexpr long long kIdentityLatticeDen = 65536;
inline constexpr double kIdentityGapTolerance = 1e-8;

struct ReductionSetup {
  long long a = 1;
  long long b = 2;
  int degree = 1;  // fiber exponent m, 1..3
  SkewForm form = SkewForm::kGeneric;
  long long k_freq = 1;    // fiber character multiplier k
  long long k_freq_p = 0;  // base character multiplier kp
  Rational alpha;          // in (0,1), denominator dividing 65536
  Rational y0;             // in [0,1), same lattice
  Rational z0;             // in [0,1), same lattice
  Observable f1 = Observable::constant(1.0, 2);  // optional extra factors
  Observable f2 = Observable::constant(1.0, 2);

  void validate() const;
};

struct ReductionAlgebra {
  long long p1 = 0, q1 = 0, p2 = 0, q2 = 0;
  Rational c_top;   // exact leading constant (alpha^m and n^{m+1} factored out)
  PolyReal psi;     // correction polynomial, double view for reports
  double theta0 = 0.0;  // constant phase (p1+p2) y0 + (q1+q2) z0, mod 1
};

// Computes the reduction data; throws std::domain_error when the leading
// term degenerates (c_top == 0, e.g. a = -b with even m, or k_freq = 0).
ReductionAlgebra build_reduction(const ReductionSetup& s);

struct IdentityReport {
  long long N = 0;
  double max_abs_gap = 0.0;
  Rational c_top;
  bool passed = false;  // max_abs_gap <= kIdentityGapTolerance
};

// Streams both sides for n = 0..N-1 and reports the largest pointwise gap
// |F1(T^{an}x) F2(T^{bn}x) e^{-2 pi i psi(n)} - C * f1 f2 e^{2 pi i c_top alpha^m n^{m+1}}|.
IdentityReport verify_reduction(const ReductionSetup& s, long long N);

// Exact mod-1 coordinates of the lifted skew orbit at index n; the values
// OrbitStream approximates in floating point. Same lattice requirement.
std::pair<double, double> exact_skew_orbit_point(int degree, SkewForm form, const Rational& alpha,
                                                 const Rational& y0, const Rational& z0,
                                                 long long n);

// Validates that v is exactly representable on the parameter lattice and
// converts it; use for wire-format inputs.
Rational snap_to_lattice(double v);

// alpha in (0,1) with c_top * alpha^m = t + j for some integer j; among the
// valid j the radicand closest to 1/2 is chosen. Plain double arithmetic,
// intended for picking engine demo parameters, not for lattice-exact runs.
double solve_alpha(double t, const Rational& c_top, int degree);

}  // namespace wwlab
