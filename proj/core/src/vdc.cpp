#include "wwlab/vdc.hpp"

#include <stdexcept>

#include "wwlab/summation.hpp"

namespace wwlab {

double vdc_lhs(std::span<const std::complex<double>> seq) {
  if (seq.empty()) throw std::invalid_argument("vdc_lhs: empty sequence");
  KahanComplexSum s;
  for (auto a : seq) s.add(a);
  std::complex<double> mean = s.value() / static_cast<double>(seq.size());
  return std::norm(mean);
}

double vdc_rhs(std::span<const std::complex<double>> seq, long long H) {
  if (seq.empty()) throw std::invalid_argument("vdc_rhs: empty sequence");
  if (H < 0) throw std::invalid_argument("vdc_rhs: H must be >= 0");
  const long long N = static_cast<long long>(seq.size());
  if (H >= N) throw std::invalid_argument("vdc_rhs: H must be at most N-1");
  const double dN = static_cast<double>(N);
  const double dH = static_cast<double>(H);

  KahanSum sq;
  for (auto a : seq) sq.add(std::norm(a));

  KahanSum corr;  // sum_h (H+1-h) Re sum_n a_n conj(a_{n+h})
  for (long long h = 1; h <= H; ++h) {
    KahanSum re;
    for (long long n = 0; n + h < N; ++n)
      re.add((seq[static_cast<std::size_t>(n)] *
              std::conj(seq[static_cast<std::size_t>(n + h)]))
                 .real());
    corr.add(static_cast<double>(H + 1 - h) * re.value());
  }

  double front = (dN + dH) / (dN * dN * (dH + 1.0));
  return front * sq.value() + 2.0 * front / (dH + 1.0) * corr.value();
}

VdcReport vdc_check(std::span<const std::complex<double>> seq, long long H) {
  VdcReport r;
  r.N = static_cast<long long>(seq.size());
  r.H = H;
  r.lhs = vdc_lhs(seq);
  r.rhs = vdc_rhs(seq, H);
  r.slack = r.rhs - r.lhs;
  r.holds = r.slack >= kVdcSlackTolerance;
  return r;
}

}  // namespace wwlab
