#pragma once

#include <cmath>

namespace wwlab {

// Fractional part into [0,1). Safe for any finite input, including values
// where x - floor(x) rounds up to 1.0.
inline double wrap_unit(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;
  if (r < 0.0) r += 1.0;
  return r + 0.0;  // normalizes -0.0
}

// Exact wrap for a sum of two values already in [0,1). The subtraction is
// exact (both operands in [1,2)), so no rounding beyond the initial add.
inline double wrap_sum01(double s) { return s >= 1.0 ? s - 1.0 : s; }

// Point on the unit circle, stored in turns. Invariant: value in [0,1)
// after construction and every arithmetic operation.
class Angle {
 public:
  constexpr Angle() = default;
  static Angle turns(double t) { return Angle(wrap_unit(t)); }

  double value() const { return v_; }

  Angle operator+(Angle o) const { return Angle(wrap_sum01(v_ + o.v_)); }
  Angle operator-(Angle o) const {
    double d = v_ - o.v_;
    return Angle(d < 0.0 ? d + 1.0 : d);
  }

  friend bool operator==(Angle a, Angle b) { return a.v_ == b.v_; }

 private:
  explicit constexpr Angle(double v) : v_(v) {}
  double v_ = 0.0;
};

// Shorter arc between two angles, in turns; in [0, 0.5].
inline double circular_distance(Angle a, Angle b) {
  double d = std::fabs(a.value() - b.value());
  return d > 0.5 ? 1.0 - d : d;
}

inline double circular_distance(double a, double b) {
  return circular_distance(Angle::turns(a), Angle::turns(b));
}

}  // namespace wwlab
