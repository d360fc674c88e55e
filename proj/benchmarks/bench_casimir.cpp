#include <benchmark/benchmark.h>

#include "casimir/checks.hpp"
#include "casimir/quadrature.hpp"

using namespace casimir;

namespace {

SystemConfig stack_system(int layers) {
  SystemConfig sys;
  sys.plate_left = Plate::coated_half_space({}, Material::constant(2.25));
  sys.plate_right = Plate::phase_reflector(0.9, -0.8);
  sys.medium.clear();
  for (int i = 0; i < layers; ++i) {
    sys.medium.push_back(Layer{
        i % 2 == 0 ? Material::vacuum() : Material::constant(2.25 + i * 0.5),
        (1.0 + i * 0.3) * 1e-7});
  }
  return sys;
}

void BM_point_kernel(benchmark::State& state) {
  const SystemConfig sys = stack_system(static_cast<int>(state.range(0)));
  const SpectralPoint pt{1e15, 1e6, Polarization::p};
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrand_components(sys, pt));
  }
}
BENCHMARK(BM_point_kernel)->Arg(1)->Arg(3)->Arg(5)->Arg(9);

void BM_stack_coefficients(benchmark::State& state) {
  const SystemConfig sys = stack_system(static_cast<int>(state.range(0)));
  const SpectralPoint pt{1e15, 1e6, Polarization::s};
  const std::span<const Layer> inner(sys.medium);
  for (auto _ : state) {
    benchmark::DoNotOptimize(stack_coefficients(
        inner, sys.medium.front().material, sys.medium.back().material, pt));
  }
}
BENCHMARK(BM_stack_coefficients)->Arg(2)->Arg(4)->Arg(8);

void BM_casimir_forces(benchmark::State& state) {
  const SystemConfig sys = stack_system(static_cast<int>(state.range(0)));
  QuadratureSpec spec;
  spec.rel_tol = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(casimir_forces(sys, spec));
  }
}
BENCHMARK(BM_casimir_forces)->Arg(1)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_ideal_energy(benchmark::State& state) {
  const SystemConfig sys = checks::ideal_mirror_vacuum(1e-6);
  QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  for (auto _ : state) {
    benchmark::DoNotOptimize(casimir_energy(sys, spec));
  }
}
BENCHMARK(BM_ideal_energy)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
