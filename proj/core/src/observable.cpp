#include "wwlab/observable.hpp"

#include <cmath>
#include <stdexcept>

namespace wwlab {

Observable::Observable(std::vector<ObservableTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("Observable: needs at least one term");
  dim_ = static_cast<int>(terms_[0].freqs.size());
  for (const auto& t : terms_) {
    if (static_cast<int>(t.freqs.size()) != dim_)
      throw std::invalid_argument("Observable: inconsistent frequency dimensions");
  }
}

Observable Observable::constant(std::complex<double> c, int dim) {
  if (dim < 0) throw std::invalid_argument("Observable::constant: negative dimension");
  return Observable({ObservableTerm{std::vector<int>(static_cast<std::size_t>(dim), 0), c}});
}

Observable Observable::character(std::vector<int> freqs, std::complex<double> amplitude) {
  return Observable({ObservableTerm{std::move(freqs), amplitude}});
}

double Observable::amplitude_l1() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.amplitude);
  return s;
}

std::complex<double> Observable::eval(const Point& pt) const {
  if (static_cast<int>(pt.size()) != dim_)
    throw std::invalid_argument("Observable::eval: point dimension mismatch");
  std::complex<double> v = 0.0;
  for (const auto& t : terms_) {
    double theta = 0.0;
    for (std::size_t d = 0; d < t.freqs.size(); ++d)
      theta += static_cast<double>(t.freqs[d]) * pt.coords[d].value();
    v += t.amplitude * unit_phase(wrap_unit(theta));
  }
  return v;
}

}  // namespace wwlab
