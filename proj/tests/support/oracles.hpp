#pragma once

// Reference implementations used only by tests. Each one recomputes a
// library quantity through a different arithmetic route (exact integers,
// literal definitions) so the production code is checked against something
// it does not share.

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "wwlab/poly.hpp"
#include "wwlab/rational.hpp"

namespace oracles {

// frac(k * t) computed exactly: t = M * 2^-e with integer M, so
// k*t mod 1 = (k*M mod 2^e) * 2^-e, all in __int128. Requires |t| < 2^10
// and |k| <= 2^62 so the product fits; any smaller t works, since once the
// shift outgrows the product the value is already below 1.
inline double frac_int_times_double(long long k, double t) {
  if (t == 0.0 || k == 0) return 0.0;
  if (!(std::abs(t) < 0x1p10))
    throw std::invalid_argument("oracle frac: |t| too large for the exact product");
  int exp = 0;
  double mant = std::frexp(t, &exp);  // t = mant * 2^exp, |mant| in [0.5, 1)
  auto M = static_cast<__int128>(std::ldexp(mant, 53));  // exact 53-bit integer
  int e = 53 - exp;                                      // t = M / 2^e, e >= 43
  __int128 prod = static_cast<__int128>(k) * M;          // < 2^115 in magnitude
  if (e > 126) {
    // |k t| < 2^115 * 2^-127 < 1: nothing to reduce, one rounding to double.
    double r = std::ldexp(static_cast<double>(prod), -e);
    return r < 0.0 ? r + 1.0 : r;
  }
  __int128 den = static_cast<__int128>(1) << e;
  __int128 r = prod % den;
  if (r < 0) r += den;
  return static_cast<double>(r) / static_cast<double>(den);
}

// frac(p(n) * t) for an integer-coefficient polynomial, via exact integer
// Horner then the exact product above.
inline double frac_poly_phase(const wwlab::PolyReal& p, double t, long long n) {
  long long v = p.eval_integer(n);
  return frac_int_times_double(v, t);
}

inline std::complex<double> unit(double turns) {
  double r = 6.28318530717958647692528676655900577 * turns;
  return {std::cos(r), std::sin(r)};
}

// Literal weighted average (1/N) sum a_n e^{2 pi i p(n) t} with plain
// complex accumulation and exact phases.
inline std::complex<double> ww_average_reference(std::span<const std::complex<double>> seq,
                                                 const wwlab::PolyReal& p, double t) {
  std::complex<double> s = 0.0;
  for (std::size_t n = 0; n < seq.size(); ++n)
    s += seq[n] * unit(frac_poly_phase(p, t, static_cast<long long>(n)));
  return s / static_cast<double>(seq.size());
}

// Dense-grid supremum of |W(t)| over [0,1), grid_points equally spaced.
struct GridSup {
  double sup = 0.0;
  double t_star = 0.0;
};

inline GridSup dense_grid_sup(std::span<const std::complex<double>> seq, const wwlab::PolyReal& p,
                              long long grid_points) {
  // Grid points are j/M, so p(n) * t mod 1 is (p(n) * j mod M) / M: exact
  // integer arithmetic at every t, including the tiny ones.
  std::vector<long long> v(seq.size());
  for (std::size_t n = 0; n < seq.size(); ++n) v[n] = p.eval_integer(static_cast<long long>(n));
  const auto M = static_cast<__int128>(grid_points);
  GridSup out;
  for (long long j = 0; j < grid_points; ++j) {
    std::complex<double> s = 0.0;
    for (std::size_t n = 0; n < seq.size(); ++n) {
      __int128 r = static_cast<__int128>(v[n]) * j % M;
      if (r < 0) r += M;
      s += seq[n] * unit(static_cast<double>(r) / static_cast<double>(grid_points));
    }
    double a = std::abs(s) / static_cast<double>(seq.size());
    if (a > out.sup) {
      out.sup = a;
      out.t_star = static_cast<double>(j) / static_cast<double>(grid_points);
    }
  }
  return out;
}

// Exact lifted skew orbit over the 1/65536 lattice: iterates the map
// literally (unreduced base numerator, fiber reduced mod 1) in integer
// arithmetic. Returns frac(z_n); completely independent of the cocycle
// algebra. mult must match the form's base-rotation multiplier.
inline double lifted_skew_fiber_exact(int degree, bool exact_form, long long alpha_num,
                                      long long y_num, long long z_num, long long n) {
  const long long L = 65536;
  long long mult = exact_form ? (degree == 1 ? 2 : 6) : 1;
  // Fiber increments are degree-powers of y (and alpha), so the fiber lives
  // over denominator L^degree.
  __int128 zden = 1;
  for (int i = 0; i < degree; ++i) zden *= L;
  __int128 z = static_cast<__int128>(z_num) * (zden / L);
  __int128 U = y_num;  // unreduced base numerator over L
  __int128 A = alpha_num;
  for (long long l = 0; l < n; ++l) {
    __int128 inc = 0;
    if (!exact_form) {
      inc = 1;
      for (int i = 0; i < degree; ++i) inc *= U;
    } else if (degree == 1) {
      inc = U + A;
    } else {
      inc = U * U - A * A;
    }
    z = (z + inc) % zden;
    if (z < 0) z += zden;
    U += mult * A;
  }
  return static_cast<double>(z) / static_cast<double>(zden);
}

// Power sum 0^q + 1^q + ... + (n-1)^q in exact integers.
inline __int128 power_sum_brute(int q, long long n) {
  __int128 s = 0;
  for (long long l = 0; l < n; ++l) {
    __int128 p = 1;
    for (int i = 0; i < q; ++i) p *= l;
    s += p;
  }
  return s;
}

// Plain-arithmetic differencing bound, no compensation, fresh code path.
inline double vdc_rhs_reference(std::span<const std::complex<double>> a, long long H) {
  const long long N = static_cast<long long>(a.size());
  double sq = 0.0;
  for (auto v : a) sq += std::norm(v);
  double corr = 0.0;
  for (long long h = 1; h <= H; ++h) {
    std::complex<double> c = 0.0;
    for (long long nn = 0; nn + h < N; ++nn) c += a[nn] * std::conj(a[nn + h]);
    corr += static_cast<double>(H + 1 - h) * c.real();
  }
  double dN = static_cast<double>(N), dH = static_cast<double>(H);
  return (dN + dH) / (dN * dN * (dH + 1.0)) * sq +
         2.0 * (dN + dH) / (dN * dN * (dH + 1.0) * (dH + 1.0)) * corr;
}

// U_2 via the Fourier side: sum_k |fhat(k)|^4 with fhat the normalized DFT,
// computed by direct O(N^2) sums.
inline double gowers_u2_fourier(std::span<const std::complex<double>> f) {
  const std::size_t N = f.size();
  double sum4 = 0.0;
  for (std::size_t k = 0; k < N; ++k) {
    std::complex<double> hat = 0.0;
    for (std::size_t x = 0; x < N; ++x)
      hat += f[x] * unit(-static_cast<double>(k * x % N) / static_cast<double>(N));
    hat /= static_cast<double>(N);
    double m2 = std::norm(hat);
    sum4 += m2 * m2;
  }
  return std::pow(sum4, 0.25);
}

}  // namespace oracles
