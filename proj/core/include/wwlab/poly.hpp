#pragma once

#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "wwlab/rational.hpp"

namespace wwlab {

// Degree reported for the zero polynomial (stands in for minus infinity).
inline constexpr int kZeroPolyDegree = std::numeric_limits<int>::min();

// Dense real polynomial, coefficients constant-first, trailing zeros trimmed.
class PolyReal {
 public:
  PolyReal() = default;
  explicit PolyReal(std::vector<double> coeffs);
  static PolyReal monomial(int degree, double coeff);

  const std::vector<double>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kZeroPolyDegree : static_cast<int>(c_.size()) - 1; }

  double eval(double x) const;  // Horner
  // Horner over long long, checked against 2^62 blowup; requires integer
  // coefficients (used by the exponential-sum binner).
  long long eval_integer(long long n) const;
  bool has_integer_coeffs() const;

  // p(x+h) - p(x), expanded exactly via binomial shift. Degree drops by one
  // for nonzero h.
  PolyReal difference(double h) const;

  PolyReal operator+(const PolyReal& o) const;
  PolyReal operator*(double s) const;

  friend bool operator==(const PolyReal& a, const PolyReal& b) { return a.c_ == b.c_; }

 private:
  std::vector<double> c_;
};

// Dense rational polynomial; exact arithmetic path used by Faulhaber sums
// and the skew-product phase algebra.
class PolyRat {
 public:
  PolyRat() = default;
  explicit PolyRat(std::vector<Rational> coeffs);
  static PolyRat monomial(int degree, Rational coeff);

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kZeroPolyDegree : static_cast<int>(c_.size()) - 1; }
  Rational leading() const;

  Rational eval(long long n) const;  // exact, throws on 64-bit overflow
  // Exact value for integer-valued polynomials at large n, via the
  // finite-difference (binomial) basis; intermediates in __int128.
  __int128 eval_integer_valued(long long n) const;

  PolyRat operator+(const PolyRat& o) const;
  PolyRat operator-(const PolyRat& o) const;
  PolyRat operator*(const Rational& s) const;
  // p(a*n) by exact binomial-free dilation: coefficient i scales by a^i.
  PolyRat compose_scale(long long a) const;
  PolyRat difference(long long h) const;  // p(n+h) - p(n)

  PolyReal to_real() const;

  friend bool operator==(const PolyRat& a, const PolyRat& b) { return a.c_ == b.c_; }

 private:
  std::vector<Rational> c_;
};

// Power sum S_q(n) = sum_{l=0}^{n-1} l^q as a polynomial in n.
// Degree q+1, leading coefficient 1/(q+1). Supported for 0 <= q <= 12.
PolyRat faulhaber_rational(int q);
PolyReal faulhaber(int q);

struct LeadingTerm {
  int degree;
  double coeff;
};

// Degree and leading coefficient; throws on the zero polynomial.
LeadingTerm leading_coeff(const PolyReal& p);

// Splits p into its leading monomial and the remainder.
std::pair<PolyReal, PolyReal> split_leading(const PolyReal& p);

}  // namespace wwlab
