#pragma once

#include <complex>
#include <span>

namespace wwlab {

// Differencing inequality for complex sequences a_0..a_{N-1}:
//
//   |1/N sum a_n|^2  <=  (N+H)/(N^2 (H+1)) * sum |a_n|^2
//                      + 2 (N+H)/(N^2 (H+1)^2)
//                        * sum_{h=1}^{H} (H+1-h) Re sum_{n=0}^{N-h-1} a_n conj(a_{n+h})
//
// Requires 0 <= H <= N-1 (larger windows only add empty correlation terms,
// so they are rejected as caller mistakes). Evaluation is the literal
// O(N*H) double loop with compensated sums; there is deliberately no
// transform shortcut, since the checker is used as an oracle.
struct VdcReport {
  long long N = 0;
  long long H = 0;
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;  // rhs - lhs
  bool holds = false;  // slack >= -1e-10
};

double vdc_lhs(std::span<const std::complex<double>> seq);
double vdc_rhs(std::span<const std::complex<double>> seq, long long H);
VdcReport vdc_check(std::span<const std::complex<double>> seq, long long H);

inline constexpr double kVdcSlackTolerance = -1e-10;

}  // namespace wwlab
