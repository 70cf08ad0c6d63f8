#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>

#include "wwlab/engine.hpp"
#include "wwlab/observable.hpp"
#include "wwlab/torus.hpp"

namespace wwlab {

// Thrown when an estimator's nominal work samples * H^(k-1) * N would exceed
// the hard cost ceiling; the caller should shrink H or N rather than wait.
class BudgetError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr long long kSeminormBudget = 1'000'000'000;

struct SeminormEstimate {
  int k = 1;
  long long N = 0;
  long long H = 0;
  int samples = 0;
  double value = 0.0;
};

// Orbit-averaged iterated-differencing seminorm of order k (1 <= k <= 4):
//   v_1(x) = |mean_{n<N} g(T^n x)|
//   v_{k+1}(x) = ( (1/H) sum_{h=1}^H v_k(x; g * conj(g o T^h))^{2^k} )^{1/2^{k+1}}
// reported as the arithmetic mean of v_k over `samples` seeded draws of x.
// Roots are taken by repeated square roots (exact on dyadic values), so
// constant observables come out exactly |c|.
SeminormEstimate ghk_estimate(const SystemSpec& sys, const Observable& f, int k, long long N,
                              long long H, int samples, std::uint64_t seed);

// Box-difference uniformity norm of f over Z_N, k in {2, 3}:
//   U_k(f)^{2^k} = (1/N^{k+1}) sum_{x, h_1..h_k} prod_{w in {0,1}^k} C^{|w|} f(x + w.h)
// (C = conjugation, applied when |w| is odd; indices mod N). k=2 is evaluated
// by collapsing the inner sums to autocorrelations (exactly the same sum);
// k=3 is the literal four-deep loop, which caps N at 64. k=2 caps N at 4096.
double gowers_norm_finite(std::span<const std::complex<double>> f, int k);

// Side-by-side report for the qualitative uniformity bound: lhs is the
// measured sup_t |W_N| for the average data, rhs the order-(deg p + 2)
// seminorm of the second observable, ratio their quotient (no threshold
// is asserted; the comparison is informational).
struct PairBoundReport {
  int k = 0;  // seminorm order used on the rhs
  long long N = 0;
  long long H = 0;
  int samples = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

PairBoundReport estimate_pair_bound(const AverageSpec& spec, long long N, long long H,
                                    int samples, std::uint64_t seed, int oversample = 4,
                                    int workers = 1);

}  // namespace wwlab
