#pragma once

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wwlab/observable.hpp"
#include "wwlab/poly.hpp"
#include "wwlab/torus.hpp"

namespace wwlab {

// Data for the weighted double-recurrence average
//   W_N(t) = (1/N) sum_{n=0}^{N-1} f1(T^{a n} x) f2(T^{b n} x) e^{2 pi i p(n) t}.
struct AverageSpec {
  SystemSpec sys;
  Observable f1;
  Observable f2;
  long long a = 1;
  long long b = 2;
  PolyReal p;   // integer or real coefficients, constant-first
  Point start;  // the base point x

  void validate() const;  // throws on a == b, dimension or normalization violations
};

// a_n = f1(T^{an} x) f2(T^{bn} x) for n = 0..N-1. Negative exponents walk the
// inverse maps; zero exponents freeze the factor at x.
std::vector<std::complex<double>> ww_sequence(const AverageSpec& spec, long long N);

struct AverageResult {
  long long N = 0;
  double t = 0.0;
  std::complex<double> value;
};

// Kahan-compensated mean of a_n e^{2 pi i p(n) t} with the phase streamed
// through mod-1 difference registers.
AverageResult ww_average(std::span<const std::complex<double>> seq, const PolyReal& p, double t);

// W_N at every checkpoint from a single pass (values are exact prefixes).
std::vector<AverageResult> trace(const AverageSpec& spec, double t,
                                 std::span<const long long> checkpoints);

// Pure polynomial exponential-sum trace, (1/N) sum e^{2 pi i p(n) t}.
std::vector<AverageResult> weyl_trace(const PolyReal& p, double t,
                                      std::span<const long long> checkpoints);

struct SupScanResult {
  long long N = 0;
  double t_star = 0.0;
  double sup_value = 0.0;
  std::complex<double> value_at_t_star;
  std::string method;                     // "fft-binned" or "grid"
  std::optional<double> guaranteed_error; // certified sup gap; none for "grid"
};

// Global maximizer of |W_N(t)| over the unit t-interval. Requires integer
// polynomial coefficients with max_n |p(n)| <= 2^22: terms are binned by
// frequency, evaluated on an oversampled grid by FFT, refined by two rounds
// of parabolic interpolation on |S|^2, and certified via the Bernstein
// derivative bound (reported sup + guaranteed_error dominates sup_t |W_N|).
SupScanResult sup_scan(std::span<const std::complex<double>> seq, const PolyReal& p,
                       int oversample = 4, int workers = 1);

// Maximizer over an explicit [t_lo, t_hi] window on a plain grid; works for
// real coefficients, carries no certificate.
SupScanResult sup_scan_grid(std::span<const std::complex<double>> seq, const PolyReal& p,
                            double t_lo, double t_hi, long long grid_points, int workers = 1);

// sup_scan at every checkpoint, reusing prefix frequency bins.
std::vector<SupScanResult> sup_trace(const AverageSpec& spec,
                                     std::span<const long long> checkpoints, int oversample = 4,
                                     int workers = 1);

inline constexpr long long kMaxBinnedFrequency = 1LL << 22;

}  // namespace wwlab
