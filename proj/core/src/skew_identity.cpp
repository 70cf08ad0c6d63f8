#include "wwlab/skew_identity.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

namespace wwlab {

namespace {

using i128 = __int128;

// All phase polynomials share one denominator: lcm of the Faulhaber
// denominators for exponents <= 3 (12) times the worst lattice power
// (alpha^i y^j with i+j <= 3, denominator 65536^3 = 2^48). 3 * 2^50 < 2^53,
// so numerator-over-denominator converts to double exactly.
constexpr i128 kPhaseDen = static_cast<i128>(12) * (static_cast<i128>(1) << 48);

// Dense integer-numerator polynomial over kPhaseDen; evaluation only ever
// needs the value mod 1, so Horner reduces mod kPhaseDen at every step and
// nothing overflows.
struct ScaledPoly {
  std::vector<i128> num;  // constant-first

  void ensure(std::size_t size) {
    if (num.size() < size) num.resize(size, 0);
  }
};

// Adds poly(n) * mono to sp exactly. Requires den(coeff) * den(mono) to
// divide kPhaseDen, which holds for every combination produced here.
void add_scaled(ScaledPoly& sp, const PolyRat& poly, const Rational& mono) {
  if (poly.is_zero() || mono.is_zero()) return;
  sp.ensure(poly.coeffs().size());
  for (std::size_t d = 0; d < poly.coeffs().size(); ++d) {
    const Rational& c = poly.coeffs()[d];
    if (c.is_zero()) continue;
    i128 cden = static_cast<i128>(c.den) * mono.den;
    if (kPhaseDen % cden != 0)
      throw std::logic_error("reduction phase algebra: denominator escaped the common lattice");
    sp.num[d] += static_cast<i128>(c.num) * mono.num * (kPhaseDen / cden);
  }
}

double frac_eval(const ScaledPoly& sp, long long n) {
  i128 acc = 0;
  for (std::size_t i = sp.num.size(); i-- > 0;) acc = (acc * n + sp.num[i]) % kPhaseDen;
  if (acc < 0) acc += kPhaseDen;
  return static_cast<double>(static_cast<long long>(acc)) /
         static_cast<double>(static_cast<long long>(kPhaseDen));
}

void check_lattice(const Rational& v, const char* name) {
  if (kIdentityLatticeDen % v.den != 0)
    throw std::invalid_argument(std::string("reduction setup: ") + name +
                                " must have denominator dividing 65536 (exact lattice)");
}

struct ExactReduction {
  long long p1 = 0, q1 = 0, p2 = 0, q2 = 0;
  long long mult = 1;
  Rational c_top;
  ScaledPoly theta_L;  // p1 Ya + p2 Yb + q1 Za + q2 Zb as one polynomial in n
  ScaledPoly psi;
  ScaledPoly theta_R;  // theta0 + c_top alpha^m n^{m+1}
  ScaledPoly Ya, Za, Yb, Zb;
};

ExactReduction build_exact(const ReductionSetup& s) {
  s.validate();
  ExactReduction ex;
  ex.q1 = -s.b * s.k_freq;
  ex.q2 = s.a * s.k_freq;
  ex.p1 = -s.b * s.k_freq_p;
  ex.p2 = s.a * s.k_freq_p;

  SkewCocycle coc = skew_cocycle(s.degree, s.form);
  ex.mult = coc.rotation_multiplier;

  // Coordinate polynomials for both strides.
  PolyRat one = PolyRat::monomial(0, Rational(1));
  add_scaled(ex.Ya, one, s.y0);
  add_scaled(ex.Yb, one, s.y0);
  add_scaled(ex.Ya, PolyRat::monomial(1, Rational(ex.mult * s.a)), s.alpha);
  add_scaled(ex.Yb, PolyRat::monomial(1, Rational(ex.mult * s.b)), s.alpha);
  add_scaled(ex.Za, one, s.z0);
  add_scaled(ex.Zb, one, s.z0);

  PolyRat top_slice;  // combined (y^0, alpha^m) slice, carrier of the n^{m+1} term
  for (const SkewCocycleTerm& term : coc.terms) {
    Rational mono = rational_pow(s.y0, term.y_pow) * rational_pow(s.alpha, term.alpha_pow);
    PolyRat at_a = term.poly.compose_scale(s.a);
    PolyRat at_b = term.poly.compose_scale(s.b);
    add_scaled(ex.Za, at_a, mono);
    add_scaled(ex.Zb, at_b, mono);
    PolyRat weighted = at_a * Rational(ex.q1) + at_b * Rational(ex.q2);
    // theta_L fiber part and psi start as the same combination.
    add_scaled(ex.theta_L, weighted, mono);
    add_scaled(ex.psi, weighted, mono);
    if (term.y_pow == 0 && term.alpha_pow == s.degree) top_slice = top_slice + weighted;
  }

  ex.c_top = top_slice.degree() == s.degree + 1 ? top_slice.leading() : Rational(0);
  if (ex.c_top.is_zero())
    throw std::domain_error(
        "reduction setup: leading constant degenerates (c_top = 0); no n^{m+1} term to reduce to");

  // theta_L gains the base-coordinate characters and the constant phase.
  add_scaled(ex.theta_L, PolyRat::monomial(0, Rational(ex.p1 + ex.p2)), s.y0);
  add_scaled(ex.theta_L, PolyRat::monomial(0, Rational(ex.q1 + ex.q2)), s.z0);
  add_scaled(ex.theta_L,
             PolyRat::monomial(1, Rational(ex.mult) * Rational(ex.p1 * s.a + ex.p2 * s.b)),
             s.alpha);

  Rational alpha_m = rational_pow(s.alpha, s.degree);
  add_scaled(ex.psi, PolyRat::monomial(s.degree + 1, -ex.c_top), alpha_m);
  add_scaled(ex.theta_R, PolyRat::monomial(s.degree + 1, ex.c_top), alpha_m);
  add_scaled(ex.theta_R, PolyRat::monomial(0, Rational(ex.p1 + ex.p2)), s.y0);
  add_scaled(ex.theta_R, PolyRat::monomial(0, Rational(ex.q1 + ex.q2)), s.z0);
  return ex;
}

// Extends every term of f with the additional character frequencies (p, q).
Observable extend_character(const Observable& f, long long p, long long q) {
  std::vector<ObservableTerm> terms = f.terms();
  for (ObservableTerm& t : terms) {
    t.freqs[0] += static_cast<int>(p);
    t.freqs[1] += static_cast<int>(q);
  }
  return Observable(std::move(terms));
}

}  // namespace

void ReductionSetup::validate() const {
  if (degree < 1 || degree > 3)
    throw std::out_of_range("reduction setup: fiber exponent must be 1..3");
  if (form == SkewForm::kExact && degree > 2)
    throw std::domain_error("reduction setup: exact-constant form is defined for degree 1 and 2");
  if (a == 0 || b == 0 || a == b)
    throw std::invalid_argument("reduction setup: strides a, b must be nonzero and distinct");
  if (std::llabs(a) > 64 || std::llabs(b) > 64)
    throw std::out_of_range("reduction setup: |a|, |b| must be <= 64");
  if (std::llabs(k_freq) > 64 || std::llabs(k_freq_p) > 64)
    throw std::out_of_range("reduction setup: |k_freq|, |k_freq_p| must be <= 64");
  check_lattice(alpha, "alpha");
  check_lattice(y0, "y0");
  check_lattice(z0, "z0");
  if (alpha.num <= 0 || alpha.num >= alpha.den)
    throw std::invalid_argument("reduction setup: alpha must lie in (0,1)");
  if (y0.num < 0 || (y0.den > 1 && y0.num >= y0.den) || (y0.den == 1 && y0.num != 0))
    throw std::invalid_argument("reduction setup: y0 must lie in [0,1)");
  if (z0.num < 0 || (z0.den > 1 && z0.num >= z0.den) || (z0.den == 1 && z0.num != 0))
    throw std::invalid_argument("reduction setup: z0 must lie in [0,1)");
  if (f1.dimension() != 2 || f2.dimension() != 2)
    throw std::invalid_argument("reduction setup: extra observables must live on the 2-torus");
  if (f1.amplitude_l1() > 1.0 + 1e-12 || f2.amplitude_l1() > 1.0 + 1e-12)
    throw std::invalid_argument("reduction setup: extra observables must satisfy sum|amp| <= 1");
}

ReductionAlgebra build_reduction(const ReductionSetup& s) {
  ExactReduction ex = build_exact(s);
  ReductionAlgebra out;
  out.p1 = ex.p1;
  out.q1 = ex.q1;
  out.p2 = ex.p2;
  out.q2 = ex.q2;
  out.c_top = ex.c_top;
  std::vector<double> psi(ex.psi.num.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    psi[i] = static_cast<double>(static_cast<long long>(ex.psi.num[i])) /
             static_cast<double>(static_cast<long long>(kPhaseDen));
  out.psi = PolyReal(std::move(psi));
  out.theta0 = frac_eval(ex.theta_R, 0);
  return out;
}

IdentityReport verify_reduction(const ReductionSetup& s, long long N) {
  if (N < 1) throw std::invalid_argument("verify_reduction: N must be positive");
  ExactReduction ex = build_exact(s);
  Observable F1 = extend_character(s.f1, ex.p1, ex.q1);
  Observable F2 = extend_character(s.f2, ex.p2, ex.q2);

  double max_gap = 0.0;
  for (long long n = 0; n < N; ++n) {
    Point A;
    A.coords = {Angle::turns(frac_eval(ex.Ya, n)), Angle::turns(frac_eval(ex.Za, n))};
    Point B;
    B.coords = {Angle::turns(frac_eval(ex.Yb, n)), Angle::turns(frac_eval(ex.Zb, n))};
    std::complex<double> lhs =
        F1.eval(A) * F2.eval(B) * std::conj(unit_phase(frac_eval(ex.psi, n)));
    std::complex<double> rhs =
        s.f1.eval(A) * s.f2.eval(B) * unit_phase(frac_eval(ex.theta_R, n));
    max_gap = std::max(max_gap, std::abs(lhs - rhs));
  }

  IdentityReport r;
  r.N = N;
  r.max_abs_gap = max_gap;
  r.c_top = ex.c_top;
  r.passed = max_gap <= kIdentityGapTolerance;
  return r;
}

std::pair<double, double> exact_skew_orbit_point(int degree, SkewForm form, const Rational& alpha,
                                                 const Rational& y0, const Rational& z0,
                                                 long long n) {
  ReductionSetup probe;
  probe.degree = degree;
  probe.form = form;
  probe.alpha = alpha;
  probe.y0 = y0;
  probe.z0 = z0;
  probe.a = 1;
  probe.b = 2;
  probe.k_freq = 1;
  probe.validate();

  SkewCocycle coc = skew_cocycle(degree, form);
  ScaledPoly Y, Z;
  PolyRat one = PolyRat::monomial(0, Rational(1));
  add_scaled(Y, one, y0);
  add_scaled(Y, PolyRat::monomial(1, Rational(coc.rotation_multiplier)), alpha);
  add_scaled(Z, one, z0);
  for (const SkewCocycleTerm& term : coc.terms) {
    Rational mono = rational_pow(y0, term.y_pow) * rational_pow(alpha, term.alpha_pow);
    add_scaled(Z, term.poly, mono);
  }
  return {frac_eval(Y, n), frac_eval(Z, n)};
}

Rational snap_to_lattice(double v) {
  double scaled = v * static_cast<double>(kIdentityLatticeDen);
  double rounded = std::nearbyint(scaled);
  if (scaled != rounded)
    throw std::invalid_argument(
        "value is not on the 1/65536 parameter lattice required for exact phase arithmetic");
  return Rational(static_cast<long long>(rounded), kIdentityLatticeDen);
}

double solve_alpha(double t, const Rational& c_top, int degree) {
  if (degree < 1) throw std::invalid_argument("solve_alpha: degree must be >= 1");
  double c = c_top.to_double();
  if (c == 0.0) throw std::domain_error("solve_alpha: degenerate leading constant");
  // u = (t + j)/c in (0,1); j near 0.5*c - t gives u near 1/2.
  long long center = std::llround(0.5 * c - t);
  double best_u = -1.0;
  for (long long j = center - 2; j <= center + 2; ++j) {
    double u = (t + static_cast<double>(j)) / c;
    if (u > 0.0 && u < 1.0 &&
        (best_u < 0.0 || std::abs(u - 0.5) < std::abs(best_u - 0.5)))
      best_u = u;
  }
  if (best_u < 0.0) throw std::domain_error("solve_alpha: no admissible branch for this target");
  return std::pow(best_u, 1.0 / static_cast<double>(degree));
}

}  // namespace wwlab
