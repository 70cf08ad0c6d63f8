#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "wwlab/engine.hpp"
#include "wwlab/phase.hpp"
#include "wwlab/poly.hpp"
#include "wwlab/rng.hpp"
#include "wwlab/torus.hpp"
#include "wwlab/vdc.hpp"

namespace {

using namespace wwlab;

constexpr double kGolden = 0.6180339887498949;

void bench_phase_stream(benchmark::State& state) {
  const PolyReal p({0.0, 0.0, 1.0});
  for (auto _ : state) {
    PhaseStream s(p, 1.4142135623730951);
    double acc = 0.0;
    for (long long n = 0; n < state.range(0); ++n) acc += s.next().value();
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bench_phase_stream)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);

void bench_orbit_advance(benchmark::State& state) {
  const SystemSpec sys = make_skew(2, Angle::turns(0.2507019241056416), SkewForm::kGeneric);
  const Point start = Point::from_values({0.2, 0.05});
  for (auto _ : state) {
    OrbitStream orbit(sys, start);
    for (long long n = 0; n < state.range(0); ++n) orbit.advance();
    benchmark::DoNotOptimize(orbit.current());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bench_orbit_advance)->Arg(1 << 12)->Arg(1 << 16);

std::vector<std::complex<double>> random_sequence(long long n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<std::complex<double>> seq(static_cast<std::size_t>(n));
  for (auto& z : seq) {
    const double r = 6.283185307179586 * rng.next_unit();
    z = {std::cos(r), std::sin(r)};
  }
  return seq;
}

void bench_vdc_rhs(benchmark::State& state) {
  const auto seq = random_sequence(state.range(0), 42);
  for (auto _ : state) {
    double v = vdc_rhs(seq, 64);
    benchmark::DoNotOptimize(v);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bench_vdc_rhs)->Arg(1 << 10)->Arg(1 << 14);

void bench_ww_average(benchmark::State& state) {
  AverageSpec spec;
  spec.sys = make_rotation(Angle::turns(kGolden));
  spec.f1 = Observable::character({1}, 1.0);
  spec.f2 = Observable::character({1}, 1.0);
  spec.p = PolyReal({0.0, 0.0, 1.0});
  spec.start = Point::from_values({0.15});
  const auto seq = ww_sequence(spec, state.range(0));
  for (auto _ : state) {
    auto r = ww_average(seq, spec.p, 1.4142135623730951);
    benchmark::DoNotOptimize(r.value);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(bench_ww_average)->Arg(1 << 12)->Arg(1 << 16);

void bench_sup_scan(benchmark::State& state) {
  AverageSpec spec;
  spec.sys = make_rotation(Angle::turns(kGolden));
  spec.f1 = Observable::character({1}, 1.0);
  spec.f2 = Observable::character({1}, 1.0);
  spec.p = PolyReal({0.0, 1.0});
  spec.start = Point::from_values({0.15});
  const auto seq = ww_sequence(spec, state.range(0));
  const int workers = static_cast<int>(state.range(1));
  for (auto _ : state) {
    auto r = sup_scan(seq, spec.p, 4, workers);
    benchmark::DoNotOptimize(r.sup_value);
  }
}
BENCHMARK(bench_sup_scan)->Args({1 << 12, 1})->Args({1 << 14, 1})->Args({1 << 14, 4});

}  // namespace

BENCHMARK_MAIN();
