#include "wwlab/torus.hpp"

#include <cmath>
#include <stdexcept>

#include "wwlab/rng.hpp"

namespace wwlab {

namespace {

void validate_skew(int degree, SkewForm form) {
  if (degree < 1) throw std::invalid_argument("skew: degree must be >= 1");
  if (form == SkewForm::kExact && degree > 2)
    throw std::domain_error("skew: exact-constant form is defined for degree 1 and 2 only");
  if (degree > 12) throw std::out_of_range("skew: degree above 12 is unsupported");
}

long long rotation_multiplier(int degree, SkewForm form) {
  if (form == SkewForm::kGeneric) return 1;
  return degree == 1 ? 2 : 6;
}

// Fiber increment from the current representative: g(y) for one step.
double fiber_increment(const SkewSpec& s, double y) {
  double a = s.alpha.value();
  if (s.form == SkewForm::kExact) {
    if (s.degree == 1) return y + a;
    return y * y - a * a;
  }
  double p = 1.0;
  for (int i = 0; i < s.degree; ++i) p *= y;
  return p;
}

template <typename Fn>
void for_each_atom(const SystemSpec& sys, Fn&& fn) {
  if (const auto* prod = std::get_if<ProductSpec>(&sys.node)) {
    for_each_atom(*prod->left, fn);
    for_each_atom(*prod->right, fn);
  } else {
    fn(sys);
  }
}

double wrapped_int_product(long long n, double a) {
  double nn = static_cast<double>(n);
  double hi = nn * a;
  double lo = std::fma(nn, a, -hi);
  return wrap_unit(wrap_unit(hi) + lo);
}

}  // namespace

SystemSpec make_rotation(Angle alpha) { return SystemSpec{RotationSpec{alpha}}; }

SystemSpec make_skew(int degree, Angle alpha, SkewForm form) {
  validate_skew(degree, form);
  return SystemSpec{SkewSpec{degree, alpha, form}};
}

SystemSpec make_product(SystemSpec left, SystemSpec right) {
  ProductSpec p;
  p.left = std::make_shared<SystemSpec>(std::move(left));
  p.right = std::make_shared<SystemSpec>(std::move(right));
  return SystemSpec{std::move(p)};
}

int dimension(const SystemSpec& sys) {
  int d = 0;
  for_each_atom(sys, [&](const SystemSpec& atom) {
    d += std::holds_alternative<SkewSpec>(atom.node) ? 2 : 1;
  });
  return d;
}

Point Point::from_values(const std::vector<double>& values) {
  Point p;
  p.coords.reserve(values.size());
  for (double v : values) p.coords.push_back(Angle::turns(v));
  return p;
}

double max_circular_distance(const Point& a, const Point& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("max_circular_distance: dimension mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, circular_distance(a.coords[i], b.coords[i]));
  return d;
}

static void check_dimension(const SystemSpec& sys, const Point& pt, const char* what) {
  if (static_cast<int>(pt.size()) != dimension(sys))
    throw std::invalid_argument(std::string(what) + ": point dimension does not match system");
}

Point step(const SystemSpec& sys, const Point& pt) {
  check_dimension(sys, pt, "step");
  Point out;
  out.coords.reserve(pt.size());
  std::size_t i = 0;
  for_each_atom(sys, [&](const SystemSpec& atom) {
    if (const auto* rot = std::get_if<RotationSpec>(&atom.node)) {
      out.coords.push_back(pt.coords[i] + rot->alpha);
      i += 1;
    } else {
      const auto& skew = std::get<SkewSpec>(atom.node);
      double y = pt.coords[i].value();
      double z = pt.coords[i + 1].value();
      long long mult = rotation_multiplier(skew.degree, skew.form);
      Angle ystep = Angle::turns(static_cast<double>(mult) * skew.alpha.value());
      out.coords.push_back(pt.coords[i] + ystep);
      out.coords.push_back(Angle::turns(z + fiber_increment(skew, y)));
      i += 2;
    }
  });
  return out;
}

Point step_inverse(const SystemSpec& sys, const Point& pt) {
  check_dimension(sys, pt, "step_inverse");
  Point out;
  out.coords.reserve(pt.size());
  std::size_t i = 0;
  for_each_atom(sys, [&](const SystemSpec& atom) {
    if (const auto* rot = std::get_if<RotationSpec>(&atom.node)) {
      out.coords.push_back(pt.coords[i] - rot->alpha);
      i += 1;
    } else {
      const auto& skew = std::get<SkewSpec>(atom.node);
      long long mult = rotation_multiplier(skew.degree, skew.form);
      Angle ystep = Angle::turns(static_cast<double>(mult) * skew.alpha.value());
      Angle yprev = pt.coords[i] - ystep;
      double z = pt.coords[i + 1].value();
      out.coords.push_back(yprev);
      out.coords.push_back(Angle::turns(z - fiber_increment(skew, yprev.value())));
      i += 2;
    }
  });
  return out;
}

SkewCocycle skew_cocycle(int degree, SkewForm form) {
  validate_skew(degree, form);
  SkewCocycle c;
  c.rotation_multiplier = rotation_multiplier(degree, form);
  // Increment at base index l is (y + mult*l*alpha)^m (+ extra constant for
  // the exact forms); summing l = 0..n-1 turns each binomial slice into a
  // Faulhaber polynomial.
  for (int q = 0; q <= degree; ++q) {
    Rational scale = Rational(binomial_ll(degree, q)) *
                     rational_pow(Rational(c.rotation_multiplier), q);
    c.terms.push_back(SkewCocycleTerm{degree - q, q, faulhaber_rational(q) * scale});
  }
  if (form == SkewForm::kExact) {
    PolyRat n = PolyRat::monomial(1, Rational(1));
    if (degree == 1) {
      c.terms.push_back(SkewCocycleTerm{0, 1, n});  // + alpha per step
    } else {
      c.terms.push_back(SkewCocycleTerm{0, 2, n * Rational(-1)});  // - alpha^2 per step
    }
  }
  return c;
}

PolyReal skew_z_polynomial(const SkewCocycle& cocycle, double y, double alpha) {
  PolyReal total;
  for (const auto& term : cocycle.terms) {
    double mono = 1.0;
    for (int i = 0; i < term.y_pow; ++i) mono *= y;
    for (int j = 0; j < term.alpha_pow; ++j) mono *= alpha;
    total = total + term.poly.to_real() * mono;
  }
  return total;
}

Point iterate_closed_form(const SystemSpec& sys, const Point& pt, long long n) {
  check_dimension(sys, pt, "iterate_closed_form");
  if (n < 0) throw std::invalid_argument("iterate_closed_form: n must be non-negative");
  if (n > kClosedFormHorizon)
    throw std::out_of_range("iterate_closed_form: n exceeds the documented horizon");
  Point out;
  out.coords.reserve(pt.size());
  std::size_t i = 0;
  for_each_atom(sys, [&](const SystemSpec& atom) {
    if (const auto* rot = std::get_if<RotationSpec>(&atom.node)) {
      out.coords.push_back(pt.coords[i] + Angle::turns(wrapped_int_product(n, rot->alpha.value())));
      i += 1;
    } else {
      const auto& skew = std::get<SkewSpec>(atom.node);
      double y = pt.coords[i].value();
      double z = pt.coords[i + 1].value();
      SkewCocycle coc = skew_cocycle(skew.degree, skew.form);
      out.coords.push_back(
          pt.coords[i] +
          Angle::turns(wrapped_int_product(n * coc.rotation_multiplier, skew.alpha.value())));
      PolyReal pz = skew_z_polynomial(coc, y, skew.alpha.value());
      // Seed registers at small indices (values are O(degree^degree)), then
      // stream; never evaluates the polynomial at large n directly.
      std::vector<double> seed(pz.is_zero() ? 1 : static_cast<std::size_t>(pz.degree()) + 1);
      for (std::size_t j = 0; j < seed.size(); ++j)
        seed[j] = z + pz.eval(static_cast<double>(j));
      PhaseAccumulator acc = PhaseAccumulator::from_values(seed);
      acc.advance_by(n);
      out.coords.push_back(Angle::turns(acc.current()));
      i += 2;
    }
  });
  return out;
}

std::vector<Point> sample_points(const SystemSpec& sys, int count, std::uint64_t seed) {
  if (count < 0) throw std::invalid_argument("sample_points: negative count");
  int d = dimension(sys);
  SplitMix64 rng(seed);
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    Point p;
    p.coords.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) p.coords.push_back(Angle::turns(rng.next_unit()));
    pts.push_back(std::move(p));
  }
  return pts;
}

OrbitStream::OrbitStream(const SystemSpec& sys, const Point& start, long long stride)
    : stride_(stride) {
  check_dimension(sys, start, "OrbitStream");
  std::size_t i = 0;
  for_each_atom(sys, [&](const SystemSpec& atom) {
    AtomState st;
    if (const auto* rot = std::get_if<RotationSpec>(&atom.node)) {
      st.is_skew = false;
      st.rot.y = start.coords[i].value();
      st.rot.delta = wrapped_int_product(stride, rot->alpha.value());
      i += 1;
    } else {
      const auto& skew = std::get<SkewSpec>(atom.node);
      st.is_skew = true;
      double y = start.coords[i].value();
      double z = start.coords[i + 1].value();
      SkewCocycle coc = skew_cocycle(skew.degree, skew.form);
      st.skew.y = y;
      st.skew.ydelta = wrapped_int_product(stride * coc.rotation_multiplier, skew.alpha.value());
      PolyReal pz = skew_z_polynomial(coc, y, skew.alpha.value());
      std::size_t regs = pz.is_zero() ? 1 : static_cast<std::size_t>(pz.degree()) + 1;
      // Seed exactly as iterate_closed_form does and take |stride| register
      // steps per element, so streamed fiber values match the closed form
      // bit for bit at every visited index.
      std::vector<double> seed(regs);
      for (std::size_t j = 0; j < regs; ++j)
        seed[j] = z + pz.eval(static_cast<double>(j));
      st.skew.zacc = PhaseAccumulator::from_values(seed);
      i += 2;
    }
    atoms_.push_back(std::move(st));
  });
  materialize();
}

void OrbitStream::advance() {
  for (AtomState& st : atoms_) {
    if (st.is_skew) {
      st.skew.y = wrap_sum01(st.skew.y + st.skew.ydelta);
      st.skew.zacc.advance_by(stride_);
    } else {
      st.rot.y = wrap_sum01(st.rot.y + st.rot.delta);
    }
  }
  index_ += stride_;
  materialize();
}

void OrbitStream::materialize() {
  current_.coords.clear();
  for (const AtomState& st : atoms_) {
    if (st.is_skew) {
      current_.coords.push_back(Angle::turns(st.skew.y));
      current_.coords.push_back(Angle::turns(st.skew.zacc.current()));
    } else {
      current_.coords.push_back(Angle::turns(st.rot.y));
    }
  }
}

}  // namespace wwlab
