#include "wwlab/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "wwlab/fft.hpp"
#include "wwlab/parallel.hpp"
#include "wwlab/summation.hpp"

namespace wwlab {

namespace {

void check_checkpoints(std::span<const long long> checkpoints) {
  if (checkpoints.empty()) throw std::invalid_argument("trace: no checkpoints");
  long long prev = 0;
  for (long long n : checkpoints) {
    if (n <= prev) throw std::invalid_argument("trace: checkpoints must be strictly increasing and positive");
    prev = n;
  }
}

// Sparse trig polynomial sum_k c_k e^{2 pi i k t}; the binned form of the
// average, kept alongside its certificate ingredients.
struct BinnedSum {
  std::vector<std::pair<long long, std::complex<double>>> terms;  // ascending k
  long long max_abs_k = 0;
  double amplitude_l1 = 0.0;
};

// k*t mod 1 with the product error recovered by fma, so the phase is
// accurate to ~1 ulp of the fraction even for k near 2^22.
double frac_int_product(long long k, double t) {
  double kd = static_cast<double>(k);
  double hi = kd * t;
  double lo = std::fma(kd, t, -hi);
  double frac = hi - std::floor(hi);  // exact
  return wrap_unit(wrap_unit(frac) + lo);
}

std::complex<double> eval_binned(const BinnedSum& bs, double t) {
  KahanComplexSum s;
  for (const auto& [k, c] : bs.terms) s.add(c * unit_phase(frac_int_product(k, t)));
  return s.value();
}

// Vertex offset of the parabola through (-h,g0),(0,g1),(h,g2); clamped to
// [-h,h], zero when the data is flat or concave the wrong way.
double parabola_offset(double g0, double g1, double g2, double h) {
  double denom = g0 - 2.0 * g1 + g2;
  if (!(std::abs(denom) > 1e-300)) return 0.0;
  double delta = 0.5 * h * (g0 - g2) / denom;
  if (!std::isfinite(delta)) return 0.0;
  return std::clamp(delta, -h, h);
}

struct GridScan {
  std::size_t argmax = 0;
  double max_sq = 0.0;
};

// Deterministic argmax of |grid|^2: fixed-size chunks scanned strictly
// left-to-right, merged in chunk order, so ties resolve to the lowest index
// for any worker count.
GridScan scan_grid_max(const std::vector<std::complex<double>>& grid, int workers) {
  const std::size_t chunk = std::size_t{1} << 15;
  const std::size_t nchunks = (grid.size() + chunk - 1) / chunk;
  std::vector<double> best(nchunks, -1.0);
  std::vector<std::size_t> arg(nchunks, 0);
  parallel_for_indexed(nchunks, workers, [&](std::size_t ci) {
    std::size_t lo = ci * chunk;
    std::size_t hi = std::min(lo + chunk, grid.size());
    double b = -1.0;
    std::size_t a = lo;
    for (std::size_t j = lo; j < hi; ++j) {
      double m2 = std::norm(grid[j]);
      if (m2 > b) {
        b = m2;
        a = j;
      }
    }
    best[ci] = b;
    arg[ci] = a;
  });
  GridScan out;
  out.max_sq = -1.0;
  for (std::size_t ci = 0; ci < nchunks; ++ci) {
    if (best[ci] > out.max_sq) {
      out.max_sq = best[ci];
      out.argmax = arg[ci];
    }
  }
  return out;
}

// FFT the bins onto an M-point t-grid, locate the peak, refine it with two
// parabolic passes against direct evaluations, and attach the certificate
//   sup_t |S(t)| <= grid max + pi * K * sum|c_k| / M + fft slack.
SupScanResult scan_binned(const BinnedSum& bs, long long N, std::size_t M, int workers) {
  std::vector<std::complex<double>> grid(M, 0.0);
  for (const auto& [k, c] : bs.terms) {
    long long r = k % static_cast<long long>(M);
    if (r < 0) r += static_cast<long long>(M);
    grid[static_cast<std::size_t>(r)] += c;
  }
  fft_pow2(grid, +1);

  GridScan peak = scan_grid_max(grid, workers);
  std::size_t j = peak.argmax;
  double grid_max = std::sqrt(std::max(0.0, peak.max_sq));

  auto wrap_index = [&](std::size_t idx, long long off) {
    long long m = static_cast<long long>(M);
    long long r = (static_cast<long long>(idx) + off) % m;
    if (r < 0) r += m;
    return static_cast<std::size_t>(r);
  };

  double h1 = 1.0 / static_cast<double>(M);
  double g0 = std::norm(grid[wrap_index(j, -1)]);
  double g1 = peak.max_sq;
  double g2 = std::norm(grid[wrap_index(j, +1)]);
  double t0 = static_cast<double>(j) * h1;
  double t1 = wrap_unit(t0 + parabola_offset(g0, g1, g2, h1));

  std::complex<double> u0 = eval_binned(bs, t0);
  std::complex<double> u1 = eval_binned(bs, t1);

  double h2 = 0.25 * h1;
  double q0 = std::norm(eval_binned(bs, wrap_unit(t1 - h2)));
  double q2 = std::norm(eval_binned(bs, wrap_unit(t1 + h2)));
  double t2 = wrap_unit(t1 + parabola_offset(q0, std::norm(u1), q2, h2));
  std::complex<double> u2 = eval_binned(bs, t2);

  SupScanResult out;
  out.N = N;
  out.method = "fft-binned";
  out.t_star = t0;
  out.value_at_t_star = u0;
  out.sup_value = std::abs(u0);
  auto consider = [&](double t, std::complex<double> u) {
    double a = std::abs(u);
    if (a > out.sup_value) {
      out.sup_value = a;
      out.t_star = t;
      out.value_at_t_star = u;
    }
  };
  consider(t1, u1);
  consider(t2, u2);

  double pi = 3.14159265358979323846;
  double bernstein = pi * static_cast<double>(bs.max_abs_k) * bs.amplitude_l1 / static_cast<double>(M);
  double log2m = static_cast<double>(std::countr_zero(M));
  double slack = bs.amplitude_l1 * (log2m + 4.0) * 0x1p-50;
  double upper = grid_max + bernstein + slack;
  out.guaranteed_error = std::max(0.0, upper - out.sup_value);
  return out;
}

std::size_t binned_grid_size(long long max_abs_k, int oversample) {
  std::size_t want = static_cast<std::size_t>(oversample) * (static_cast<std::size_t>(max_abs_k) + 1);
  return next_pow2(std::max<std::size_t>(want, 64));
}

// Dense accumulator for prefix bins, shared by sup_scan and sup_trace.
struct DenseBins {
  std::vector<std::complex<double>> sums;  // index k + offset
  long long offset = 0;

  void add(long long k, std::complex<double> v) { sums[static_cast<std::size_t>(k + offset)] += v; }

  BinnedSum snapshot(long long N, long long max_abs_k_prefix) const {
    BinnedSum bs;
    bs.max_abs_k = max_abs_k_prefix;
    double inv = 1.0 / static_cast<double>(N);
    KahanSum l1;
    for (std::size_t i = 0; i < sums.size(); ++i) {
      if (sums[i] == std::complex<double>(0.0, 0.0)) continue;
      std::complex<double> c = sums[i] * inv;
      bs.terms.emplace_back(static_cast<long long>(i) - offset, c);
      l1.add(std::abs(c));
    }
    bs.amplitude_l1 = l1.value();
    return bs;
  }
};

std::vector<long long> binned_frequencies(const PolyReal& p, long long N) {
  if (!p.has_integer_coeffs())
    throw std::invalid_argument(
        "sup_scan: polynomial must have integer coefficients; use sup_scan_grid for a real-coefficient window");
  std::vector<long long> k(static_cast<std::size_t>(N));
  long long max_abs = 0;
  for (long long n = 0; n < N; ++n) {
    long long v = p.eval_integer(n);
    k[static_cast<std::size_t>(n)] = v;
    max_abs = std::max(max_abs, std::abs(v));
    if (max_abs > kMaxBinnedFrequency)
      throw std::out_of_range("sup_scan: max |p(n)| over the window exceeds 2^22 at n=" + std::to_string(n) +
                              "; use sup_scan_grid on an explicit t-window");
  }
  return k;
}

}  // namespace

void AverageSpec::validate() const {
  if (a == b) throw std::invalid_argument("AverageSpec: exponents a and b must differ");
  int d = dimension(sys);
  if (f1.dimension() != d || f2.dimension() != d)
    throw std::invalid_argument("AverageSpec: observable dimension does not match the system");
  if (start.size() != static_cast<std::size_t>(d))
    throw std::invalid_argument("AverageSpec: start point dimension does not match the system");
  if (f1.amplitude_l1() > 1.0 + 1e-12 || f2.amplitude_l1() > 1.0 + 1e-12)
    throw std::invalid_argument("AverageSpec: observables must satisfy sum|amplitude| <= 1");
}

std::vector<std::complex<double>> ww_sequence(const AverageSpec& spec, long long N) {
  spec.validate();
  if (N < 1) throw std::invalid_argument("ww_sequence: N must be positive");
  OrbitStream oa(spec.sys, spec.start, spec.a);
  OrbitStream ob(spec.sys, spec.start, spec.b);
  std::vector<std::complex<double>> seq(static_cast<std::size_t>(N));
  for (long long n = 0; n < N; ++n) {
    seq[static_cast<std::size_t>(n)] = spec.f1.eval(oa.current()) * spec.f2.eval(ob.current());
    oa.advance();
    ob.advance();
  }
  return seq;
}

AverageResult ww_average(std::span<const std::complex<double>> seq, const PolyReal& p, double t) {
  if (seq.empty()) throw std::invalid_argument("ww_average: empty sequence");
  PhaseStream phase(p, t);
  KahanComplexSum sum;
  for (const std::complex<double>& a : seq) sum.add(a * unit_phase(phase.next().value()));
  AverageResult out;
  out.N = static_cast<long long>(seq.size());
  out.t = t;
  out.value = sum.value() / static_cast<double>(seq.size());
  return out;
}

std::vector<AverageResult> trace(const AverageSpec& spec, double t,
                                 std::span<const long long> checkpoints) {
  spec.validate();
  check_checkpoints(checkpoints);
  long long maxN = checkpoints.back();
  OrbitStream oa(spec.sys, spec.start, spec.a);
  OrbitStream ob(spec.sys, spec.start, spec.b);
  PhaseStream phase(spec.p, t);
  KahanComplexSum sum;
  std::vector<AverageResult> out;
  out.reserve(checkpoints.size());
  std::size_t next_cp = 0;
  for (long long n = 0; n < maxN; ++n) {
    std::complex<double> a = spec.f1.eval(oa.current()) * spec.f2.eval(ob.current());
    sum.add(a * unit_phase(phase.next().value()));
    oa.advance();
    ob.advance();
    if (n + 1 == checkpoints[next_cp]) {
      out.push_back({n + 1, t, sum.value() / static_cast<double>(n + 1)});
      ++next_cp;
    }
  }
  return out;
}

std::vector<AverageResult> weyl_trace(const PolyReal& p, double t,
                                      std::span<const long long> checkpoints) {
  check_checkpoints(checkpoints);
  long long maxN = checkpoints.back();
  PhaseStream phase(p, t);
  KahanComplexSum sum;
  std::vector<AverageResult> out;
  out.reserve(checkpoints.size());
  std::size_t next_cp = 0;
  for (long long n = 0; n < maxN; ++n) {
    sum.add(unit_phase(phase.next().value()));
    if (n + 1 == checkpoints[next_cp]) {
      out.push_back({n + 1, t, sum.value() / static_cast<double>(n + 1)});
      ++next_cp;
    }
  }
  return out;
}

SupScanResult sup_scan(std::span<const std::complex<double>> seq, const PolyReal& p,
                       int oversample, int workers) {
  if (seq.empty()) throw std::invalid_argument("sup_scan: empty sequence");
  if (oversample < 1) throw std::invalid_argument("sup_scan: oversample must be >= 1");
  long long N = static_cast<long long>(seq.size());
  std::vector<long long> k = binned_frequencies(p, N);
  long long max_abs = 0;
  for (long long v : k) max_abs = std::max(max_abs, std::abs(v));

  DenseBins bins;
  bins.offset = max_abs;
  bins.sums.assign(static_cast<std::size_t>(2 * max_abs + 1), 0.0);
  for (long long n = 0; n < N; ++n) bins.add(k[static_cast<std::size_t>(n)], seq[static_cast<std::size_t>(n)]);

  BinnedSum bs = bins.snapshot(N, max_abs);
  return scan_binned(bs, N, binned_grid_size(max_abs, oversample), workers);
}

SupScanResult sup_scan_grid(std::span<const std::complex<double>> seq, const PolyReal& p,
                            double t_lo, double t_hi, long long grid_points, int workers) {
  if (seq.empty()) throw std::invalid_argument("sup_scan_grid: empty sequence");
  if (!(t_hi > t_lo)) throw std::invalid_argument("sup_scan_grid: window must have t_hi > t_lo");
  if (grid_points < 2) throw std::invalid_argument("sup_scan_grid: need at least 2 grid points");
  long long N = static_cast<long long>(seq.size());
  double step = (t_hi - t_lo) / static_cast<double>(grid_points - 1);

  std::vector<std::complex<double>> values(static_cast<std::size_t>(grid_points));
  parallel_for_indexed(static_cast<std::size_t>(grid_points), workers, [&](std::size_t j) {
    double t = t_lo + static_cast<double>(j) * step;
    values[j] = ww_average(seq, p, t).value;
  });

  SupScanResult out;
  out.N = N;
  out.method = "grid";
  out.guaranteed_error = std::nullopt;
  double best = -1.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    double a = std::abs(values[j]);
    if (a > best) {
      best = a;
      out.t_star = t_lo + static_cast<double>(j) * step;
      out.value_at_t_star = values[j];
    }
  }
  out.sup_value = best;
  return out;
}

std::vector<SupScanResult> sup_trace(const AverageSpec& spec,
                                     std::span<const long long> checkpoints, int oversample,
                                     int workers) {
  spec.validate();
  check_checkpoints(checkpoints);
  if (oversample < 1) throw std::invalid_argument("sup_trace: oversample must be >= 1");
  long long maxN = checkpoints.back();
  std::vector<std::complex<double>> seq = ww_sequence(spec, maxN);
  std::vector<long long> k = binned_frequencies(spec.p, maxN);
  long long global_max_abs = 0;
  for (long long v : k) global_max_abs = std::max(global_max_abs, std::abs(v));

  DenseBins bins;
  bins.offset = global_max_abs;
  bins.sums.assign(static_cast<std::size_t>(2 * global_max_abs + 1), 0.0);

  std::vector<SupScanResult> out;
  out.reserve(checkpoints.size());
  long long prefix_max_abs = 0;
  std::size_t next_cp = 0;
  for (long long n = 0; n < maxN; ++n) {
    long long kn = k[static_cast<std::size_t>(n)];
    bins.add(kn, seq[static_cast<std::size_t>(n)]);
    prefix_max_abs = std::max(prefix_max_abs, std::abs(kn));
    if (n + 1 == checkpoints[next_cp]) {
      BinnedSum bs = bins.snapshot(n + 1, prefix_max_abs);
      out.push_back(scan_binned(bs, n + 1, binned_grid_size(prefix_max_abs, oversample), workers));
      ++next_cp;
    }
  }
  return out;
}

}  // namespace wwlab
