#include "wwlab/poly.hpp"

#include <cmath>
#include <stdexcept>

namespace wwlab {

namespace {

void trim(std::vector<double>& c) {
  while (!c.empty() && c.back() == 0.0) c.pop_back();
}

void trim(std::vector<Rational>& c) {
  while (!c.empty() && c.back().is_zero()) c.pop_back();
}

}  // namespace

PolyReal::PolyReal(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(c_); }

PolyReal PolyReal::monomial(int degree, double coeff) {
  if (degree < 0) throw std::invalid_argument("PolyReal::monomial: negative degree");
  std::vector<double> c(static_cast<std::size_t>(degree) + 1, 0.0);
  c.back() = coeff;
  return PolyReal(std::move(c));
}

double PolyReal::eval(double x) const {
  double v = 0.0;
  for (std::size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
  return v;
}

bool PolyReal::has_integer_coeffs() const {
  for (double c : c_) {
    if (std::nearbyint(c) != c) return false;
  }
  return true;
}

long long PolyReal::eval_integer(long long n) const {
  if (!has_integer_coeffs())
    throw std::invalid_argument("PolyReal::eval_integer: coefficients must be integers");
  constexpr long long kLimit = 1LL << 62;
  constexpr double kCoeffLimit = 4.611686018427387904e18;  // 2^62, keeps the cast defined
  __int128 v = 0;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] > kCoeffLimit || c_[i] < -kCoeffLimit)
      throw std::out_of_range("PolyReal::eval_integer: coefficient exceeds 2^62");
    v = v * n + static_cast<long long>(c_[i]);
    if (v > kLimit || v < -kLimit)
      throw std::out_of_range("PolyReal::eval_integer: value exceeds 2^62");
  }
  return static_cast<long long>(v);
}

PolyReal PolyReal::difference(double h) const {
  if (c_.size() <= 1) return PolyReal();  // constants difference to zero
  // p(x+h) coefficients via binomial expansion, then subtract p.
  std::vector<double> shifted(c_.size(), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    double hp = 1.0;
    for (std::size_t j = 0; j <= i; ++j) {
      // coefficient of x^{i-j} in c_i (x+h)^i
      shifted[i - j] += c_[i] * static_cast<double>(binomial_ll(static_cast<int>(i), static_cast<int>(j))) * hp;
      hp *= h;
    }
  }
  for (std::size_t i = 0; i < c_.size(); ++i) shifted[i] -= c_[i];
  return PolyReal(std::move(shifted));
}

PolyReal PolyReal::operator+(const PolyReal& o) const {
  std::vector<double> c(std::max(c_.size(), o.c_.size()), 0.0);
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] += c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] += o.c_[i];
  return PolyReal(std::move(c));
}

PolyReal PolyReal::operator*(double s) const {
  std::vector<double> c = c_;
  for (double& v : c) v *= s;
  return PolyReal(std::move(c));
}

PolyRat::PolyRat(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(c_); }

PolyRat PolyRat::monomial(int degree, Rational coeff) {
  if (degree < 0) throw std::invalid_argument("PolyRat::monomial: negative degree");
  std::vector<Rational> c(static_cast<std::size_t>(degree) + 1, Rational(0));
  c.back() = coeff;
  return PolyRat(std::move(c));
}

Rational PolyRat::leading() const {
  if (c_.empty()) throw std::domain_error("PolyRat::leading: zero polynomial");
  return c_.back();
}

Rational PolyRat::eval(long long n) const {
  Rational v(0);
  for (std::size_t i = c_.size(); i-- > 0;) v = v * Rational(n) + c_[i];
  return v;
}

__int128 PolyRat::eval_integer_valued(long long n) const {
  if (c_.empty()) return 0;
  // Finite differences at 0: p(n) = sum_j D_j * C(n, j), D_j integer when p
  // is integer-valued on the integers.
  std::size_t k = c_.size();  // number of difference coefficients
  std::vector<Rational> row(k);
  for (std::size_t j = 0; j < k; ++j) row[j] = eval(static_cast<long long>(j));
  std::vector<__int128> diffs(k);
  for (std::size_t j = 0; j < k; ++j) {
    if (row[0].den != 1)
      throw std::domain_error("PolyRat::eval_integer_valued: polynomial is not integer-valued");
    diffs[j] = row[0].num;
    for (std::size_t i = 0; i + 1 < row.size(); ++i) row[i] = row[i + 1] - row[i];
    row.pop_back();
  }
  __int128 total = 0;
  __int128 binom = 1;  // C(n, j), built incrementally
  for (std::size_t j = 0; j < k; ++j) {
    if (j > 0) binom = binom * (n - static_cast<long long>(j) + 1) / static_cast<long long>(j);
    total += diffs[j] * binom;
  }
  return total;
}

PolyRat PolyRat::operator+(const PolyRat& o) const {
  std::vector<Rational> c(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c[i] + c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) c[i] = c[i] + o.c_[i];
  return PolyRat(std::move(c));
}

PolyRat PolyRat::operator-(const PolyRat& o) const { return *this + (o * Rational(-1)); }

PolyRat PolyRat::operator*(const Rational& s) const {
  std::vector<Rational> c = c_;
  for (Rational& v : c) v = v * s;
  return PolyRat(std::move(c));
}

PolyRat PolyRat::compose_scale(long long a) const {
  std::vector<Rational> c = c_;
  Rational ap(1);
  for (std::size_t i = 0; i < c.size(); ++i) {
    c[i] = c[i] * ap;
    ap = ap * Rational(a);
  }
  return PolyRat(std::move(c));
}

PolyRat PolyRat::difference(long long h) const {
  if (c_.size() <= 1) return PolyRat();
  std::vector<Rational> shifted(c_.size(), Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    Rational hp(1);
    for (std::size_t j = 0; j <= i; ++j) {
      shifted[i - j] = shifted[i - j] +
                       c_[i] * Rational(binomial_ll(static_cast<int>(i), static_cast<int>(j))) * hp;
      hp = hp * Rational(h);
    }
  }
  for (std::size_t i = 0; i < c_.size(); ++i) shifted[i] = shifted[i] - c_[i];
  return PolyRat(std::move(shifted));
}

PolyReal PolyRat::to_real() const {
  std::vector<double> c(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) c[i] = c_[i].to_double();
  return PolyReal(std::move(c));
}

PolyRat faulhaber_rational(int q) {
  if (q < 0 || q > 12)
    throw std::out_of_range("faulhaber: exponent must be in [0, 12]");
  // Bernoulli numbers with B_1 = -1/2, which makes
  // S_q(n) = sum_{l<n} l^q = (1/(q+1)) sum_j C(q+1, j) B_j n^{q+1-j}.
  static const Rational kBernoulli[13] = {
      {1, 1}, {-1, 2}, {1, 6},  {0, 1}, {-1, 30}, {0, 1},      {1, 42},
      {0, 1}, {-1, 30}, {0, 1}, {5, 66}, {0, 1},  {-691, 2730},
  };
  std::vector<Rational> c(static_cast<std::size_t>(q) + 2, Rational(0));
  for (int j = 0; j <= q; ++j) {
    Rational term = Rational(binomial_ll(q + 1, j)) * kBernoulli[j] / Rational(q + 1);
    c[static_cast<std::size_t>(q + 1 - j)] = term;
  }
  return PolyRat(std::move(c));
}

PolyReal faulhaber(int q) { return faulhaber_rational(q).to_real(); }

LeadingTerm leading_coeff(const PolyReal& p) {
  if (p.is_zero()) throw std::domain_error("leading_coeff: zero polynomial");
  return {p.degree(), p.coeffs().back()};
}

std::pair<PolyReal, PolyReal> split_leading(const PolyReal& p) {
  LeadingTerm lt = leading_coeff(p);
  std::vector<double> rest = p.coeffs();
  rest.pop_back();
  return {PolyReal::monomial(lt.degree, lt.coeff), PolyReal(std::move(rest))};
}

}  // namespace wwlab
