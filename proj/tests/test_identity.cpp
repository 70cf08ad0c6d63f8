#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>
#include <vector>

#include <oracles.hpp>

#include "wwlab/angle.hpp"
#include "wwlab/observable.hpp"
#include "wwlab/rational.hpp"
#include "wwlab/rng.hpp"
#include "wwlab/skew_identity.hpp"
#include "wwlab/torus.hpp"

using namespace wwlab;

namespace {

constexpr long long kDen = kIdentityLatticeDen;

ReductionSetup base_setup(int degree, SkewForm form) {
  ReductionSetup s;
  s.degree = degree;
  s.form = form;
  s.alpha = Rational(19477, kDen);
  s.y0 = Rational(5120, kDen);  // 5/64
  s.z0 = Rational(16384, kDen); // 1/4
  return s;
}

ReductionSetup random_setup(int degree, SkewForm form, SplitMix64& rng) {
  ReductionSetup s;
  s.degree = degree;
  s.form = form;
  s.alpha = Rational(rng.next_int(1, kDen - 1), kDen);
  s.y0 = Rational(rng.next_int(0, kDen - 1), kDen);
  s.z0 = Rational(rng.next_int(0, kDen - 1), kDen);
  s.k_freq = rng.next_int(1, 3);
  s.k_freq_p = rng.next_int(0, 2);
  return s;
}

const std::vector<std::pair<int, SkewForm>> kFamilies{
    {1, SkewForm::kGeneric}, {1, SkewForm::kExact},   {2, SkewForm::kGeneric},
    {2, SkewForm::kExact},   {3, SkewForm::kGeneric},
};

}  // namespace

TEST_CASE("character frequencies and the constant phase are wired as documented") {
  auto s = base_setup(1, SkewForm::kGeneric);
  s.k_freq = 3;
  s.k_freq_p = 2;
  s.y0 = Rational(1, 8);
  s.z0 = Rational(1, 8);
  auto r = build_reduction(s);
  CHECK(r.q1 == -6);
  CHECK(r.q2 == 3);
  CHECK(r.p1 == -4);
  CHECK(r.p2 == 2);
  // (p1+p2) y0 + (q1+q2) z0 = -2/8 - 3/8 = -5/8, so 3/8 mod 1, exactly.
  CHECK(r.theta0 == 0.375);
}

TEST_CASE("leading constants of the five families, strides (1,2), unit frequency") {
  auto c_top = [](int degree, SkewForm form) {
    return build_reduction(base_setup(degree, form)).c_top;
  };
  CHECK(c_top(1, SkewForm::kGeneric) == Rational(1));
  CHECK(c_top(1, SkewForm::kExact) == Rational(2));
  CHECK(c_top(2, SkewForm::kGeneric) == Rational(2));
  CHECK(c_top(2, SkewForm::kExact) == Rational(72));
  CHECK(c_top(3, SkewForm::kGeneric) == Rational(7, 2));

  // Linear in the fiber frequency.
  auto s = base_setup(2, SkewForm::kGeneric);
  s.k_freq = 5;
  CHECK(build_reduction(s).c_top == Rational(10));

  // General strides: generic form scales as k a b (b^m - a^m)/(m+1).
  s = base_setup(2, SkewForm::kGeneric);
  s.a = 3;
  s.b = -4;
  CHECK(build_reduction(s).c_top == Rational(-28));
}

TEST_CASE("degree-1 reductions need no correction polynomial") {
  SplitMix64 rng(2024u);
  for (SkewForm form : {SkewForm::kGeneric, SkewForm::kExact}) {
    for (int rep = 0; rep < 10; ++rep) {
      auto r = build_reduction(random_setup(1, form, rng));
      CHECK(r.psi.is_zero());
    }
  }
}

TEST_CASE("degree-2 correction polynomials are the expected quadratics") {
  auto s = base_setup(2, SkewForm::kGeneric);
  auto r = build_reduction(s);
  const double al = s.alpha.to_double();
  const double y = s.y0.to_double();
  REQUIRE(r.psi.degree() == 2);
  CHECK(r.psi.coeffs()[0] == 0.0);
  CHECK(r.psi.coeffs()[1] == 0.0);
  // a b k (b-a) (y alpha - alpha^2/2) with a=1, b=2, k=1.
  CHECK(r.psi.coeffs()[2] == doctest::Approx(2.0 * y * al - al * al).epsilon(1e-12));

  s = base_setup(2, SkewForm::kExact);
  r = build_reduction(s);
  REQUIRE(r.psi.degree() == 2);
  // 6 a b k (b-a) (y - 3 alpha) alpha.
  CHECK(r.psi.coeffs()[2] == doctest::Approx(12.0 * (y - 3.0 * al) * al).epsilon(1e-12));
}

TEST_CASE("correction degree never exceeds the fiber exponent") {
  SplitMix64 rng(7u);
  for (auto [degree, form] : kFamilies) {
    for (int rep = 0; rep < 5; ++rep) {
      auto r = build_reduction(random_setup(degree, form, rng));
      CHECK(r.psi.degree() <= degree);
    }
  }
}

TEST_CASE("degenerate and malformed setups are rejected") {
  auto s = base_setup(1, SkewForm::kGeneric);
  s.k_freq = 0;  // kills every fiber character
  CHECK_THROWS_AS(build_reduction(s), std::domain_error);

  s = base_setup(2, SkewForm::kGeneric);
  s.a = -2;
  s.b = 2;  // b^2 - a^2 = 0
  CHECK_THROWS_AS(build_reduction(s), std::domain_error);

  CHECK_THROWS_AS(base_setup(0, SkewForm::kGeneric).validate(), std::out_of_range);
  CHECK_THROWS_AS(base_setup(4, SkewForm::kGeneric).validate(), std::out_of_range);
  CHECK_THROWS_AS(base_setup(3, SkewForm::kExact).validate(), std::domain_error);

  s = base_setup(1, SkewForm::kGeneric);
  s.b = s.a;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_setup(1, SkewForm::kGeneric);
  s.a = 65;
  CHECK_THROWS_AS(s.validate(), std::out_of_range);

  s = base_setup(1, SkewForm::kGeneric);
  s.alpha = Rational(1, 3);  // off the lattice
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_setup(1, SkewForm::kGeneric);
  s.alpha = Rational(0);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_setup(1, SkewForm::kGeneric);
  s.y0 = Rational(1);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);

  s = base_setup(1, SkewForm::kGeneric);
  s.f1 = Observable::constant(1.0, 1);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = base_setup(1, SkewForm::kGeneric);
  s.f1 = Observable::character({1, 0}, 1.25);
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);

  CHECK_THROWS_AS(verify_reduction(base_setup(1, SkewForm::kGeneric), 0),
                  std::invalid_argument);
}

TEST_CASE("pointwise reduction identity holds to roundoff across families and draws") {
  SplitMix64 rng(31337u);
  for (auto [degree, form] : kFamilies) {
    for (int rep = 0; rep < 20; ++rep) {
      auto s = random_setup(degree, form, rng);
      auto rep_out = verify_reduction(s, 2000);
      CHECK(rep_out.N == 2000);
      CHECK(rep_out.passed);
      CHECK(rep_out.max_abs_gap <= 1e-12);
      CHECK(rep_out.c_top == build_reduction(s).c_top);
    }
  }
}

TEST_CASE("reduction identity holds for other stride pairs") {
  SplitMix64 rng(4242u);
  const std::vector<std::pair<long long, long long>> strides{{1, 3}, {-1, 2}, {2, 5}};
  for (auto [degree, form] : kFamilies) {
    for (auto [a, b] : strides) {
      auto s = random_setup(degree, form, rng);
      s.a = a;
      s.b = b;
      auto rep_out = verify_reduction(s, 500);
      CHECK(rep_out.passed);
      CHECK(rep_out.max_abs_gap <= 1e-12);
    }
  }
}

TEST_CASE("reduction identity survives extra character factors") {
  SplitMix64 rng(99u);
  for (auto [degree, form] : kFamilies) {
    auto s = random_setup(degree, form, rng);
    s.f1 = Observable::character({1, 0}, 0.5);
    s.f2 = Observable::character({2, 1}, {0.0, 0.5});
    auto rep_out = verify_reduction(s, 1000);
    CHECK(rep_out.passed);
    CHECK(rep_out.max_abs_gap <= 1e-12);
  }
}

TEST_CASE("exact orbit points match a literal lifted-map iteration") {
  SplitMix64 rng(808u);
  const std::vector<std::pair<int, SkewForm>> combos{{1, SkewForm::kGeneric},
                                                     {1, SkewForm::kExact},
                                                     {2, SkewForm::kGeneric},
                                                     {2, SkewForm::kExact},
                                                     {3, SkewForm::kGeneric}};
  for (auto [degree, form] : combos) {
    const long long an = rng.next_int(1, kDen - 1);
    const long long yn = rng.next_int(0, kDen - 1);
    const long long zn = rng.next_int(0, kDen - 1);
    for (long long n : {0LL, 1LL, 13LL, 777LL, 2718LL}) {
      auto [yv, zv] = exact_skew_orbit_point(degree, form, Rational(an, kDen),
                                             Rational(yn, kDen), Rational(zn, kDen), n);
      const double fiber =
          oracles::lifted_skew_fiber_exact(degree, form == SkewForm::kExact, an, yn, zn, n);
      CHECK(circular_distance(zv, fiber) <= 1e-12);
      // Base coordinate is a plain rotation by multiplier * alpha; everything
      // sits on the 1/65536 lattice, so reduce the numerator directly.
      const long long mult = skew_cocycle(degree, form).rotation_multiplier;
      const long long ynum = (yn + mult * n % kDen * an) % kDen;
      const double expect_y = static_cast<double>(ynum) / static_cast<double>(kDen);
      CHECK(circular_distance(yv, expect_y) <= 1e-12);
    }
  }
}

TEST_CASE("lattice snapping accepts exact grid values and rejects the rest") {
  CHECK(snap_to_lattice(0.25) == Rational(1, 4));
  CHECK(snap_to_lattice(3.0 / 65536.0) == Rational(3, 65536));
  CHECK(snap_to_lattice(0.0) == Rational(0));
  CHECK_THROWS_AS(snap_to_lattice(0.1), std::invalid_argument);
  CHECK_THROWS_AS(snap_to_lattice(0.25 + 1e-12), std::invalid_argument);
}

TEST_CASE("alpha solver hits the requested fractional target on the nicest branch") {
  const double a = solve_alpha(0.3, Rational(2), 2);
  CHECK(std::abs(a - std::sqrt(0.65)) < 1e-15);
  // Round trip: c_top * alpha^2 - t is an integer.
  const double resid = 2.0 * a * a - 0.3;
  CHECK(std::abs(resid - std::llround(resid)) < 1e-12);

  CHECK_THROWS_AS(solve_alpha(0.3, Rational(0), 2), std::domain_error);
  CHECK_THROWS_AS(solve_alpha(0.3, Rational(2), 0), std::invalid_argument);
  // t = 0 with c = 1 has no branch inside (0,1).
  CHECK_THROWS_AS(solve_alpha(0.0, Rational(1), 1), std::domain_error);
}
