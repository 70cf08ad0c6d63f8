#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace wwlab {

// Exact rational with 64-bit numerator/denominator, normalized (den > 0,
// gcd 1). Intermediate products go through __int128 and overflow of the
// stored fields throws instead of wrapping.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n) : num(n), den(1) {}
  Rational(long long n, long long d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_zero() const { return num == 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
};

namespace detail {
inline long long narrow128(__int128 v, const char* what) {
  if (v > static_cast<__int128>(INT64_MAX) || v < static_cast<__int128>(INT64_MIN))
    throw std::overflow_error(std::string("Rational overflow in ") + what);
  return static_cast<long long>(v);
}

inline __int128 gcd128(__int128 a, __int128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    __int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}
}  // namespace detail

inline Rational operator+(const Rational& a, const Rational& b) {
  __int128 n = static_cast<__int128>(a.num) * b.den + static_cast<__int128>(b.num) * a.den;
  __int128 d = static_cast<__int128>(a.den) * b.den;
  __int128 g = detail::gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational(detail::narrow128(n, "add"), detail::narrow128(d, "add"));
}

inline Rational operator-(const Rational& a) { return Rational(-a.num, a.den); }
inline Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

inline Rational operator*(const Rational& a, const Rational& b) {
  // Cross-reduce first so the narrowed products stay small.
  long long g1 = std::gcd(a.num < 0 ? -a.num : a.num, b.den);
  long long g2 = std::gcd(b.num < 0 ? -b.num : b.num, a.den);
  __int128 n = static_cast<__int128>(a.num / g1) * (b.num / g2);
  __int128 d = static_cast<__int128>(a.den / g2) * (b.den / g1);
  return Rational(detail::narrow128(n, "mul"), detail::narrow128(d, "mul"));
}

inline Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) throw std::domain_error("Rational: division by zero");
  return a * Rational(b.den, b.num);
}

// Exact integer power with overflow checking.
inline Rational rational_pow(const Rational& base, int e) {
  if (e < 0) throw std::domain_error("rational_pow: negative exponent");
  Rational r(1);
  for (int i = 0; i < e; ++i) r = r * base;
  return r;
}

inline long long binomial_ll(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return detail::narrow128(r, "binomial");
}

}  // namespace wwlab
