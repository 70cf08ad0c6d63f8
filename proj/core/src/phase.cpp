#include "wwlab/phase.hpp"

#include <cmath>
#include <stdexcept>

namespace wwlab {

namespace {

// frac(a*b) with the product split into hi + lo via fma, so the wrap loses
// none of the low-order bits even when a*b is large.
double wrapped_product(double a, double b) {
  double hi = a * b;
  double lo = std::fma(a, b, -hi);
  return wrap_unit(wrap_unit(hi) + lo);
}

}  // namespace

PhaseAccumulator PhaseAccumulator::from_values(std::span<const double> values) {
  PhaseAccumulator acc;
  std::vector<double> row(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) row[i] = wrap_unit(values[i]);
  acc.r_.resize(values.size());
  for (std::size_t j = 0; j < acc.r_.size(); ++j) {
    acc.r_[j] = row[0];
    for (std::size_t i = 0; i + 1 < row.size(); ++i) {
      double d = row[i + 1] - row[i];
      row[i] = d < 0.0 ? d + 1.0 : d;
    }
    row.pop_back();
  }
  return acc;
}

PhaseAccumulator PhaseAccumulator::for_scaled_poly(const PolyReal& p, double scale,
                                                   long long start) {
  std::size_t k = p.is_zero() ? 0 : static_cast<std::size_t>(p.degree());
  std::vector<double> values(k + 1);
  for (std::size_t j = 0; j <= k; ++j) {
    double pj = p.eval(static_cast<double>(start + static_cast<long long>(j)));
    values[j] = wrapped_product(pj, scale);
  }
  return from_values(values);
}

void PhaseAccumulator::advance() {
  for (std::size_t j = 0; j + 1 < r_.size(); ++j) r_[j] = wrap_sum01(r_[j] + r_[j + 1]);
}

void PhaseAccumulator::retreat() {
  if (r_.size() < 2) return;
  for (std::size_t j = r_.size() - 1; j-- > 0;) {
    double d = r_[j] - r_[j + 1];
    r_[j] = d < 0.0 ? d + 1.0 : d;
  }
}

void PhaseAccumulator::advance_by(long long steps) {
  if (steps >= 0) {
    for (long long i = 0; i < steps; ++i) advance();
  } else {
    for (long long i = 0; i < -steps; ++i) retreat();
  }
}

PhaseStream::PhaseStream(PolyReal p, double scale, long long start)
    : poly_(std::move(p)),
      scale_(scale),
      position_(start),
      acc_(PhaseAccumulator::for_scaled_poly(poly_, scale_, start)) {}

Angle PhaseStream::next() {
  Angle out = Angle::turns(acc_.current());
  acc_.advance();
  ++position_;
  return out;
}

double polynomial_phase_at(const PolyReal& p, double scale, long long n) {
  PhaseAccumulator acc = PhaseAccumulator::for_scaled_poly(p, scale, 0);
  acc.advance_by(n);
  return acc.current();
}

}  // namespace wwlab
