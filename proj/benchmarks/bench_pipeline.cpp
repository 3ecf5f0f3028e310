#include <benchmark/benchmark.h>

#include "oamwalk/analysis.hpp"
#include "oamwalk/crystal_registry.hpp"
#include "oamwalk/units.hpp"

namespace {

using namespace oamwalk;

CrystalConfig bbo(double length_mm) {
  static const auto registry = CrystalRegistry::load(default_registry_path());
  CrystalConfig c;
  c.sellmeier = registry.get("BBO");
  c.theta = deg_to_rad(32.914);
  c.length_m = mm_to_m(length_mm);
  return c;
}

PumpConfig pump(double rho_deg) {
  PumpConfig p;
  p.walkoff_rho = deg_to_rad(rho_deg);
  return p;
}

void BM_PumpEnvelope(benchmark::State& state) {
  auto p = pump(3.0);
  p.oam = 2;
  p.astig_beta = 1.5;
  double q = 1e3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(pump_envelope(p, q, 0.5 * q));
    q += 1.0;
  }
}
BENCHMARK(BM_PumpEnvelope);

void BM_AzimuthalKernel(benchmark::State& state) {
  const auto c = bbo(3.0);
  const auto p = pump(3.0);
  const auto grid = make_emission_grid(c, p, {static_cast<int>(state.range(0)),
                                              static_cast<int>(state.range(1))});
  for (auto _ : state) benchmark::DoNotOptimize(azimuthal_kernel(c, p, grid).norm);
  state.SetLabel(std::to_string(state.range(0)) + "x" + std::to_string(state.range(1)));
}
BENCHMARK(BM_AzimuthalKernel)->Args({32, 128})->Args({96, 128})->Args({96, 256})
    ->Unit(benchmark::kMillisecond);

void BM_OamProjection(benchmark::State& state) {
  const auto c = bbo(3.0);
  const auto p = pump(3.0);
  const int n = static_cast<int>(state.range(0));
  const auto field = azimuthal_kernel(c, p, make_emission_grid(c, p, {16, n}));
  for (auto _ : state) benchmark::DoNotOptimize(oam_spectrum(field, 10).truncation_mass);
  state.SetComplexityN(n);
}
BENCHMARK(BM_OamProjection)->RangeMultiplier(2)->Range(64, 1024)->Unit(benchmark::kMicrosecond);

void BM_PhaseMatchAngle(benchmark::State& state) {
  const auto c = bbo(3.0);
  for (auto _ : state) benchmark::DoNotOptimize(phase_match_angle(c.sellmeier, 0.355));
}
BENCHMARK(BM_PhaseMatchAngle);

}  // namespace

BENCHMARK_MAIN();
