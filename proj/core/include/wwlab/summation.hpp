#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace wwlab {

// Kahan compensated accumulator. Every mean in the library is formed through
// one of these so that summation order (always index order) and rounding are
// reproducible and accurate.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

class KahanComplexSum {
 public:
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  KahanSum re_, im_;
};

// Deterministic reduction of per-slot partial results: sequential Kahan in
// slot order, independent of how many workers produced the slots.
inline double reduce_slots(std::span<const double> slots) {
  KahanSum s;
  for (double v : slots) s.add(v);
  return s.value();
}

inline std::complex<double> reduce_slots(std::span<const std::complex<double>> slots) {
  KahanComplexSum s;
  for (auto v : slots) s.add(v);
  return s.value();
}

}  // namespace wwlab
