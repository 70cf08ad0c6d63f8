#pragma once

#include <complex>
#include <vector>

#include "wwlab/torus.hpp"

namespace wwlab {

// Trigonometric polynomial on a torus: sum of amplitude * e^{2 pi i <freq, x>}
// terms with integer frequency vectors. The averaging engine normalizes by
// requiring sum |amplitude| <= 1.
struct ObservableTerm {
  std::vector<int> freqs;
  std::complex<double> amplitude;
};

class Observable {
 public:
  Observable() = default;
  explicit Observable(std::vector<ObservableTerm> terms);

  static Observable constant(std::complex<double> c, int dim);
  static Observable character(std::vector<int> freqs, std::complex<double> amplitude = 1.0);

  const std::vector<ObservableTerm>& terms() const { return terms_; }
  int dimension() const { return dim_; }
  double amplitude_l1() const;

  std::complex<double> eval(const Point& pt) const;

 private:
  std::vector<ObservableTerm> terms_;
  int dim_ = 0;
};

// e^{2 pi i theta} for theta in turns.
inline std::complex<double> unit_phase(double turns) {
  double rad = 6.283185307179586476925286766559 * turns;
  return {std::cos(rad), std::sin(rad)};
}

}  // namespace wwlab
