#include "wwlab/fft.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wwlab {

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

void fft_pow2(std::vector<std::complex<double>>& a, int sign) {
  std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft_pow2: length must be a nonzero power of two");
  // bit reversal permutation
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  // per-stage twiddle tables computed from scratch (no incremental rotation
  // drift; stage cost is dominated by the butterflies anyway)
  for (std::size_t len = 2; len <= n; len <<= 1) {
    double ang = static_cast<double>(sign) * 2.0 * std::numbers::pi / static_cast<double>(len);
    std::size_t half = len >> 1;
    std::vector<std::complex<double>> w(half);
    for (std::size_t k = 0; k < half; ++k)
      w[k] = {std::cos(ang * static_cast<double>(k)), std::sin(ang * static_cast<double>(k))};
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> u = a[i + k];
        std::complex<double> v = a[i + k + half] * w[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

}  // namespace wwlab
