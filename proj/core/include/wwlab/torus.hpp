#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wwlab/angle.hpp"
#include "wwlab/phase.hpp"
#include "wwlab/poly.hpp"

namespace wwlab {

// Iteration horizon for closed-form evaluation. Within the horizon the
// closed form and the streaming orbit share the same difference registers,
// so they agree bitwise; agreement with exact (rational) orbits depends on
// the parameters (dyadic lattices iterate exactly, generic ones accumulate
// register rounding), which is why comparisons against independent oracles
// are confined to short prefixes or exact-lattice inputs.
inline constexpr long long kClosedFormHorizon = 1'000'000;

enum class SkewForm {
  kExact,    // precalibrated constants: m=1 is (y+2a, z+y+a), m=2 is (y+6a, z+y^2-a^2)
  kGeneric,  // (y + a, z + y^m)
};

struct RotationSpec {
  Angle alpha;
};

// Skew product over a circle rotation with a monomial fiber increment.
// For degree >= 2 the increment y^m depends on the representative of y, so
// orbits are defined as the cocycle lifted from the canonical [0,1)
// representative of the starting point; see OrbitStream.
struct SkewSpec {
  int degree = 1;
  Angle alpha;
  SkewForm form = SkewForm::kGeneric;
};

struct SystemSpec;

struct ProductSpec {
  std::shared_ptr<const SystemSpec> left;
  std::shared_ptr<const SystemSpec> right;
};

struct SystemSpec {
  std::variant<RotationSpec, SkewSpec, ProductSpec> node;
};

SystemSpec make_rotation(Angle alpha);
SystemSpec make_skew(int degree, Angle alpha, SkewForm form);
SystemSpec make_product(SystemSpec left, SystemSpec right);

int dimension(const SystemSpec& sys);

struct Point {
  std::vector<Angle> coords;

  std::size_t size() const { return coords.size(); }
  static Point from_values(const std::vector<double>& values);
};

double max_circular_distance(const Point& a, const Point& b);

// One application of the transformation; all coordinates reduced to [0,1).
Point step(const SystemSpec& sys, const Point& pt);
// Preimage under one application (the maps are invertible in closed form).
Point step_inverse(const SystemSpec& sys, const Point& pt);

// n-th orbit point without stepping, via polynomial closed forms evaluated
// through mod-1 difference registers. Requires 0 <= n <= kClosedFormHorizon.
Point iterate_closed_form(const SystemSpec& sys, const Point& pt, long long n);

// Deterministic pseudo-uniform draws on the system's torus.
std::vector<Point> sample_points(const SystemSpec& sys, int count, std::uint64_t seed);

// Streaming orbit with constant memory per element. For stride s the j-th
// element is the closed-form iterate at index j*s (negative strides walk the
// inverse map); fiber coordinates reproduce iterate_closed_form bit for bit
// because both run the same registers, at O(|s|) register steps per element.
// For rotations and degree-1 skews this coincides with composing step();
// for degree >= 2 skews the fiber increments follow the lift of the
// starting representative.
class OrbitStream {
 public:
  OrbitStream(const SystemSpec& sys, const Point& start, long long stride = 1);

  const Point& current() const { return current_; }
  long long index() const { return index_; }  // base-index = element * stride
  void advance();

 private:
  struct RotationState {
    double y;
    double delta;
  };
  struct SkewState {
    double y;
    double ydelta;
    PhaseAccumulator zacc;
  };
  struct AtomState {
    bool is_skew;
    RotationState rot;    // valid when !is_skew
    SkewState skew;       // valid when is_skew
  };

  std::vector<AtomState> atoms_;
  Point current_;
  long long stride_;
  long long index_ = 0;

  void materialize();
};

// Decomposition of a skew fiber cocycle: z_n - z as a sum of terms
// rational-poly(n) * y^i * alpha^j, with the base rotation stepping by
// rotation_multiplier * alpha. Shared by the closed forms and the
// phase-reduction algebra.
struct SkewCocycleTerm {
  int y_pow;
  int alpha_pow;
  PolyRat poly;
};

struct SkewCocycle {
  std::vector<SkewCocycleTerm> terms;
  long long rotation_multiplier;
};

SkewCocycle skew_cocycle(int degree, SkewForm form);

// The cocycle with (y, alpha) substituted: z_n = z + P(n) as a real
// polynomial in n.
PolyReal skew_z_polynomial(const SkewCocycle& cocycle, double y, double alpha);

// JSON wire format:
//   {"type":"rotation","alpha":0.25}
//   {"type":"skew","m":2,"alpha":0.1,"form":"calibrated"|"generic"}
//   {"type":"product","left":{...},"right":{...}}
std::string system_to_json(const SystemSpec& sys);
SystemSpec system_from_json(std::string_view text);

}  // namespace wwlab
