#include "wwlab/gowers.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "wwlab/summation.hpp"

namespace wwlab {

namespace {

// v_k over an orbit-value window; vals must hold N + (k-1)*H entries.
double seminorm_level(std::span<const std::complex<double>> vals, int k, long long N,
                      long long H) {
  if (k == 1) {
    KahanComplexSum s;
    for (long long n = 0; n < N; ++n) s.add(vals[static_cast<std::size_t>(n)]);
    return std::abs(s.value() / static_cast<double>(N));
  }
  KahanSum acc;
  std::vector<std::complex<double>> diff;
  diff.reserve(vals.size() - 1);
  for (long long h = 1; h <= H; ++h) {
    diff.resize(vals.size() - static_cast<std::size_t>(h));
    for (std::size_t n = 0; n < diff.size(); ++n)
      diff[n] = vals[n] * std::conj(vals[n + static_cast<std::size_t>(h)]);
    double v = seminorm_level(diff, k - 1, N, H);
    for (int i = 0; i < k - 1; ++i) v *= v;  // v^(2^(k-1))
    acc.add(v);
  }
  double mean = acc.value() / static_cast<double>(H);
  for (int i = 0; i < k; ++i) mean = std::sqrt(mean);
  return mean;
}

}  // namespace

SeminormEstimate ghk_estimate(const SystemSpec& sys, const Observable& f, int k, long long N,
                              long long H, int samples, std::uint64_t seed) {
  if (k < 1 || k > 4) throw std::invalid_argument("ghk_estimate: order k must be in 1..4");
  if (N < 1 || H < 1 || samples < 1)
    throw std::invalid_argument("ghk_estimate: N, H and samples must be positive");
  if (f.dimension() != dimension(sys))
    throw std::invalid_argument("ghk_estimate: observable dimension does not match the system");

  __int128 cost = samples;
  for (int i = 1; i < k; ++i) cost *= H;
  cost *= N;
  if (cost > kSeminormBudget)
    throw BudgetError("ghk_estimate: samples * H^(k-1) * N = " +
                      std::to_string(static_cast<double>(cost)) + " exceeds the budget " +
                      std::to_string(kSeminormBudget));

  const long long L = N + static_cast<long long>(k - 1) * H;
  std::vector<Point> pts = sample_points(sys, samples, seed);
  std::vector<std::complex<double>> vals(static_cast<std::size_t>(L));
  KahanSum acc;
  for (const Point& x : pts) {
    OrbitStream orbit(sys, x, 1);
    for (long long n = 0; n < L; ++n) {
      vals[static_cast<std::size_t>(n)] = f.eval(orbit.current());
      orbit.advance();
    }
    acc.add(seminorm_level(vals, k, N, H));
  }

  SeminormEstimate out;
  out.k = k;
  out.N = N;
  out.H = H;
  out.samples = samples;
  out.value = acc.value() / static_cast<double>(samples);
  return out;
}

double gowers_norm_finite(std::span<const std::complex<double>> f, int k) {
  const long long N = static_cast<long long>(f.size());
  if (N < 1) throw std::invalid_argument("gowers_norm_finite: empty input");
  auto at = [&](long long i) { return f[static_cast<std::size_t>(((i % N) + N) % N)]; };

  double power = 0.0;  // U_k^(2^k)
  if (k == 2) {
    if (N > 4096) throw std::out_of_range("gowers_norm_finite: k=2 caps N at 4096");
    // sum_{x,h1,h2} f(x) cf(x+h1) cf(x+h2) f(x+h1+h2) = sum_h1 |A(h1)|^2 with
    // A(h) = sum_x f(x) conj(f(x+h)).
    KahanSum total;
    for (long long h = 0; h < N; ++h) {
      KahanComplexSum a;
      for (long long x = 0; x < N; ++x) a.add(at(x) * std::conj(at(x + h)));
      total.add(std::norm(a.value()));
    }
    power = total.value() / (static_cast<double>(N) * static_cast<double>(N) *
                             static_cast<double>(N));
  } else if (k == 3) {
    if (N > 64) throw std::out_of_range("gowers_norm_finite: k=3 caps N at 64");
    KahanSum total;
    for (long long x = 0; x < N; ++x)
      for (long long h1 = 0; h1 < N; ++h1)
        for (long long h2 = 0; h2 < N; ++h2)
          for (long long h3 = 0; h3 < N; ++h3) {
            std::complex<double> p = at(x) * std::conj(at(x + h1)) * std::conj(at(x + h2)) *
                                     std::conj(at(x + h3)) * at(x + h1 + h2) * at(x + h1 + h3) *
                                     at(x + h2 + h3) * std::conj(at(x + h1 + h2 + h3));
            total.add(p.real());
          }
    double dN = static_cast<double>(N);
    power = total.value() / (dN * dN * dN * dN);
  } else {
    throw std::invalid_argument("gowers_norm_finite: k must be 2 or 3");
  }

  power = std::max(0.0, power);
  for (int i = 0; i < k; ++i) power = std::sqrt(power);
  return power;
}

PairBoundReport estimate_pair_bound(const AverageSpec& spec, long long N, long long H,
                                    int samples, std::uint64_t seed, int oversample,
                                    int workers) {
  spec.validate();
  int k = (spec.p.is_zero() ? 0 : spec.p.degree()) + 2;
  std::vector<std::complex<double>> seq = ww_sequence(spec, N);
  SupScanResult sup = sup_scan(seq, spec.p, oversample, workers);
  SeminormEstimate sem = ghk_estimate(spec.sys, spec.f2, k, N, H, samples, seed);

  PairBoundReport r;
  r.k = k;
  r.N = N;
  r.H = H;
  r.samples = samples;
  r.lhs = sup.sup_value;
  r.rhs = sem.value;
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace wwlab
