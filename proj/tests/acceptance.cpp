// End-to-end acceptance battery: eight independent checks, one line each,
// nonzero exit if any fails. Tolerances and time budgets are part of each
// check. Everything is seeded, so reruns are bit-identical.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include <oracles.hpp>

#include "wwlab/engine.hpp"
#include "wwlab/gowers.hpp"
#include "wwlab/observable.hpp"
#include "wwlab/poly.hpp"
#include "wwlab/rational.hpp"
#include "wwlab/rng.hpp"
#include "wwlab/skew_identity.hpp"
#include "wwlab/torus.hpp"
#include "wwlab/vdc.hpp"

using namespace wwlab;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

constexpr double kGolden = 0.6180339887498949;  // (sqrt(5)-1)/2

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// 1. Streaming orbits against closed-form iterates for every skew family,
//    random parameters, horizon 1e5.
Outcome check_orbits() {
  struct Fam {
    int degree;
    SkewForm form;
  };
  const std::vector<Fam> fams{{1, SkewForm::kGeneric},
                              {1, SkewForm::kExact},
                              {2, SkewForm::kGeneric},
                              {2, SkewForm::kExact},
                              {3, SkewForm::kGeneric}};
  const std::vector<long long> cps{1000, 10000, 100000};
  double max_gap = 0.0;
  int fam_idx = 0;
  for (const Fam& fam : fams) {
    for (int draw = 0; draw < 20; ++draw) {
      SplitMix64 rng(derive_seed(0xACC1u, fam_idx * 20 + draw));
      SystemSpec sys = make_skew(fam.degree, Angle::turns(rng.next_unit()), fam.form);
      Point start = sample_points(sys, 1, rng.next())[0];
      OrbitStream orbit(sys, start);
      std::size_t next_cp = 0;
      for (long long n = 1; n <= cps.back(); ++n) {
        orbit.advance();
        if (n == cps[next_cp]) {
          Point cf = iterate_closed_form(sys, start, n);
          max_gap = std::max(max_gap, max_circular_distance(orbit.current(), cf));
          ++next_cp;
        }
      }
    }
    ++fam_idx;
  }
  return {max_gap <= 1e-8, "max coordinate gap " + fmt("%.2e", max_gap) + " (tol 1e-8)"};
}

// 2. Differencing inequality fuzz: 1000 random sequences, three window sizes,
//    plus the exact all-ones equality at H=0.
Outcome check_vdc() {
  int violations = 0;
  double min_slack = 1e300;
  for (int s = 0; s < 1000; ++s) {
    SplitMix64 rng(derive_seed(0xACC2u, s));
    std::vector<std::complex<double>> seq(256);
    for (auto& z : seq) z = rng.next_unit() * oracles::unit(rng.next_unit());
    for (long long H : {1LL, 8LL, 64LL}) {
      VdcReport r = vdc_check(seq, H);
      if (!r.holds) ++violations;
      min_slack = std::min(min_slack, r.slack);
    }
  }
  const std::vector<std::complex<double>> ones(256, {1.0, 0.0});
  const bool exact = vdc_lhs(ones) == 1.0 && vdc_rhs(ones, 0) == 1.0;
  const bool ok = violations == 0 && exact;
  return {ok, std::to_string(violations) + " violations in 3000 checks, min slack " +
                  fmt("%.2e", min_slack) + ", all-ones H=0 equality " +
                  (exact ? "exact" : "BROKEN")};
}

// 3. Frequency-binned sup scan against a 2^16 brute-force grid (the grid is a
//    lower bound for the true sup, so the scan must reach it) and certificate
//    dominance at 1000 random phases.
Outcome check_sup_scan() {
  SplitMix64 rng(0xACC3u);
  std::vector<std::complex<double>> seq(512);
  for (auto& z : seq) z = oracles::unit(rng.next_unit());
  const PolyReal p = PolyReal::monomial(2, 1.0);

  SupScanResult scan = sup_scan(seq, p, 4, 1);
  oracles::GridSup brute = oracles::dense_grid_sup(seq, p, 65536);
  const double rel_gap = std::max(0.0, brute.sup - scan.sup_value) / brute.sup;

  int dominated = 0;
  const double ceiling = scan.sup_value + scan.guaranteed_error.value_or(0.0) + 1e-12;
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.next_unit();
    if (std::abs(oracles::ww_average_reference(seq, p, t)) <= ceiling) ++dominated;
  }
  const bool ok = rel_gap <= 1e-6 && dominated == 1000;
  return {ok, "grid shortfall " + fmt("%.2e", rel_gap) + " (tol 1e-6), certificate held at " +
                  std::to_string(dominated) + "/1000 probes"};
}

// 4. Quadratic exponential-sum decay at t = sqrt(2): strictly decreasing
//    decade means, final one small, each matched by exact-phase summation.
Outcome check_weyl_decay() {
  const std::vector<long long> cps{1000, 10000, 100000, 1000000};
  const double t = std::sqrt(2.0);
  auto rows = weyl_trace(PolyReal::monomial(2, 1.0), t, cps);

  std::vector<std::complex<double>> oracle;
  std::complex<double> acc = 0.0;
  std::size_t next_cp = 0;
  for (long long n = 0; n < cps.back(); ++n) {
    acc += oracles::unit(oracles::frac_int_times_double(n * n, t));
    if (n + 1 == cps[next_cp]) {
      oracle.push_back(acc / static_cast<double>(n + 1));
      ++next_cp;
    }
  }

  double max_dev = 0.0;
  bool decreasing = true;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    max_dev = std::max(max_dev, std::abs(rows[i].value - oracle[i]));
    if (i > 0 && !(std::abs(rows[i].value) < std::abs(rows[i - 1].value))) decreasing = false;
  }
  const double last = std::abs(rows.back().value);
  const bool ok = decreasing && last <= 0.02 && max_dev <= 1e-9;
  return {ok, "oracle deviation " + fmt("%.2e", max_dev) + ", strictly decreasing " +
                  (decreasing ? "yes" : "NO") + ", |W| at 1e6 = " + fmt("%.4f", last) +
                  " (<= 0.02)"};
}

// 5. Full-mass witness: an irrational rotation with plain characters keeps
//    sup_t |W_N| pinned at 1 for every prefix.
Outcome check_kronecker_witness() {
  AverageSpec s;
  s.sys = make_rotation(Angle::turns(kGolden));
  s.f1 = Observable::character({1}, 1.0);
  s.f2 = Observable::character({1}, 1.0);
  s.p = PolyReal::monomial(1, 1.0);
  s.start = Point::from_values({0.25});
  const std::vector<long long> cps{1000, 10000, 100000};
  auto rows = sup_trace(s, cps, 4, 1);
  double lo = 1e300, hi = -1e300;
  for (const auto& r : rows) {
    lo = std::min(lo, r.sup_value);
    hi = std::max(hi, r.sup_value);
  }
  const bool ok = lo >= 0.9 && hi <= 1.0 + 1e-9;
  return {ok, "sup range [" + fmt("%.6f", lo) + ", " + fmt("%.9f", hi) +
                  "] inside [0.9, 1+1e-9]"};
}

// 6. Character-pair reduction identity: pointwise check at N = 1e4 for all
//    five fiber families, 20 lattice draws each, plus the exact degree-2
//    leading constant for the calibrated degree-1 map at strides (1,2).
Outcome check_reduction() {
  struct Fam {
    int degree;
    SkewForm form;
  };
  const std::vector<Fam> fams{{1, SkewForm::kGeneric},
                              {1, SkewForm::kExact},
                              {2, SkewForm::kGeneric},
                              {2, SkewForm::kExact},
                              {3, SkewForm::kGeneric}};
  double max_gap = 0.0;
  bool all_passed = true;
  int fam_idx = 0;
  for (const Fam& fam : fams) {
    for (int draw = 0; draw < 20; ++draw) {
      SplitMix64 rng(derive_seed(0xACC6u, fam_idx * 20 + draw));
      ReductionSetup s;
      s.degree = fam.degree;
      s.form = fam.form;
      s.alpha = Rational(rng.next_int(1, 65535), 65536);
      s.y0 = Rational(rng.next_int(0, 65535), 65536);
      s.z0 = Rational(rng.next_int(0, 65535), 65536);
      s.k_freq = rng.next_int(1, 3);
      s.k_freq_p = rng.next_int(0, 2);
      IdentityReport rep = verify_reduction(s, 10000);
      all_passed = all_passed && rep.passed;
      max_gap = std::max(max_gap, rep.max_abs_gap);
    }
    ++fam_idx;
  }

  ReductionSetup probe;
  probe.degree = 1;
  probe.form = SkewForm::kExact;
  probe.alpha = Rational(3, 8);
  const bool c2_exact = build_reduction(probe).c_top == Rational(2);
  const bool ok = all_passed && max_gap <= 1e-8 && c2_exact;
  return {ok, "max pointwise gap " + fmt("%.2e", max_gap) +
                  " (tol 1e-8) over 100 draws, degree-2 constant == 2 " +
                  (c2_exact ? "exact" : "BROKEN")};
}

// 7. Seminorm estimators: dyadic constants are reproduced exactly at every
//    order, rotation characters split an order-1 vanishing estimate from an
//    order-2 full one, and the finite box norm agrees with its spectral form.
Outcome check_seminorms() {
  auto sys = make_rotation(Angle::turns(kGolden));
  auto c = Observable::constant(0.75, 1);
  bool const_exact = true;
  for (int k = 1; k <= 4; ++k)
    const_exact = const_exact && ghk_estimate(sys, c, k, 64, 16, 3, 0xACC7u).value == 0.75;

  auto chi = Observable::character({1});
  const double v1 = ghk_estimate(sys, chi, 1, 100000, 1, 3, 0xACC7u).value;
  const double v2 = ghk_estimate(sys, chi, 2, 100000, 1000, 1, 0xACC7u).value;

  double max_dev = 0.0;
  for (int n : {8, 16, 32, 64}) {
    SplitMix64 rng(derive_seed(0xACC7u, n));
    std::vector<std::complex<double>> f(static_cast<std::size_t>(n));
    for (auto& z : f) z = oracles::unit(rng.next_unit());
    max_dev = std::max(max_dev,
                       std::abs(gowers_norm_finite(f, 2) - oracles::gowers_u2_fourier(f)));
  }
  std::vector<std::complex<double>> delta(4, {0.0, 0.0});
  delta[0] = 1.0;
  const double delta_dev = std::abs(gowers_norm_finite(delta, 2) - std::pow(4.0, -0.75));

  const bool ok = const_exact && v1 <= 1e-4 && std::abs(v2 - 1.0) <= 0.05 &&
                  max_dev <= 1e-10 && delta_dev <= 1e-10;
  return {ok, std::string("constants ") + (const_exact ? "exact" : "BROKEN") +
                  ", order-1 char " + fmt("%.2e", v1) + " (<= 1e-4), order-2 char " +
                  fmt("%.4f", v2) + " (within 0.05 of 1), box-vs-spectral dev " +
                  fmt("%.2e", std::max(max_dev, delta_dev))};
}

// 8. Pair-bound experiment battery: runs end to end and emits one
//    lhs/rhs/ratio row per configuration; report-only, no threshold.
Outcome check_pair_bound() {
  std::vector<std::pair<std::string, AverageSpec>> battery;

  AverageSpec rot;
  rot.sys = make_rotation(Angle::turns(kGolden));
  rot.f1 = Observable::character({1}, 0.5);
  rot.f2 = Observable::character({1}, 0.5);
  rot.p = PolyReal::monomial(2, 1.0);
  rot.start = Point::from_values({0.2});
  battery.emplace_back("rotation/quadratic", rot);

  AverageSpec skew1;
  skew1.sys = make_skew(1, Angle::turns(0.37482915), SkewForm::kGeneric);
  skew1.f1 = Observable::character({1, 0}, 0.5);
  // Two-term f2: single characters have seminorm == amplitude, so mixing
  // frequencies keeps the rhs column informative.
  skew1.f2 = Observable({ObservableTerm{{0, 1}, 0.5}, ObservableTerm{{1, 1}, {0.0, 0.25}}});
  skew1.p = PolyReal::monomial(1, 1.0);
  skew1.start = Point::from_values({0.1, 0.6});
  battery.emplace_back("skew-1/linear", skew1);

  AverageSpec skew2;
  skew2.sys = make_skew(2, Angle::turns(0.20710678), SkewForm::kExact);
  skew2.f1 = Observable::character({0, 1}, 0.5);
  skew2.f2 = Observable::character({0, 1}, 0.5);
  skew2.p = PolyReal{{0.0, 1.0, 1.0}};  // n^2 + n
  skew2.start = Point::from_values({0.3, 0.05});
  battery.emplace_back("skew-2/quadratic", skew2);

  bool ok = true;
  std::string rows;
  for (auto& [name, spec] : battery) {
    PairBoundReport r = estimate_pair_bound(spec, 2048, 32, 2, 0xACC8u, 2, 1);
    ok = ok && std::isfinite(r.lhs) && std::isfinite(r.rhs) && r.lhs >= 0.0 && r.rhs >= 0.0 &&
         std::isfinite(r.ratio);
    rows += "\n        " + name + ": k=" + std::to_string(r.k) + " lhs=" + fmt("%.6f", r.lhs) +
            " rhs=" + fmt("%.6f", r.rhs) + " ratio=" + fmt("%.4f", r.ratio);
  }
  return {ok, "3 configurations, all rows finite" + rows};
}

}  // namespace

int main() {
  struct Check {
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
  };
  const std::vector<Check> checks{
      {"orbit streams match closed forms", 10.0, check_orbits},
      {"differencing inequality fuzz", 5.0, check_vdc},
      {"sup scan vs brute grid + certificate", 5.0, check_sup_scan},
      {"quadratic phase-sum decay at sqrt(2)", 30.0, check_weyl_decay},
      {"rotation witness keeps full mass", 10.0, check_kronecker_witness},
      {"character-pair reduction identity", 60.0, check_reduction},
      {"seminorm estimator sanity", 60.0, check_seminorms},
      {"pair-bound battery end to end", 120.0, check_pair_bound},
  };

  int failures = 0;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = checks[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_budget = secs <= checks[i].budget_s;
    const bool pass = out.ok && in_budget;
    if (!pass) ++failures;
    std::printf("[%zu] %s  %-38s %s  [%.2fs / %.0fs]%s\n", i + 1, pass ? "PASS" : "FAIL",
                checks[i].name, out.detail.c_str(), secs, checks[i].budget_s,
                in_budget ? "" : "  OVER BUDGET");
  }
  std::printf("acceptance: %zu/%zu passed\n", checks.size() - failures, checks.size());
  return failures == 0 ? 0 : 1;
}
