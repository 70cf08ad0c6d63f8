#pragma once

#include <complex>
#include <vector>

namespace wwlab {

// In-place iterative radix-2 transform, power-of-two length only.
// sign = +1 computes sum_k a_k e^{+2 pi i k j / M} (no normalization),
// sign = -1 the conjugate kernel. Single-threaded and deterministic.
void fft_pow2(std::vector<std::complex<double>>& a, int sign);

std::size_t next_pow2(std::size_t n);

}  // namespace wwlab
