#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "sohp/cubic.hpp"
#include "sohp/field_presets.hpp"
#include "sohp/gci.hpp"
#include "sohp/hydro1d.hpp"
#include "sohp/hyperbolicity.hpp"
#include "sohp/kinetic.hpp"
#include "sohp/llg.hpp"
#include "sohp/sphere.hpp"

using namespace sohp;

namespace {

void BM_LangevinC1(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(langevin_c1(1.0));
}
BENCHMARK(BM_LangevinC1);

void BM_GciSolve(benchmark::State& state) {
  const ThetaGrid grid = ThetaGrid::uniform(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_gci(1.0, 1.0, grid));
}
BENCHMARK(BM_GciSolve)->Arg(501)->Arg(2001)->Arg(8001);

void BM_CubicRoots(benchmark::State& state) {
  double t = 0.1;
  for (auto _ : state) {
    t = (t < 3.0) ? t + 1e-4 : 0.1;
    benchmark::DoNotOptimize(solve_cubic(char_poly(t, 0.8, 1.2, 0.4)));
  }
}
BENCHMARK(BM_CubicRoots);

void BM_HyperbolicityScan(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(scan_hyperbolicity(1.0, 1.0, 0.5, 1001));
  }
}
BENCHMARK(BM_HyperbolicityScan);

void BM_HydroStep(benchmark::State& state) {
  HydroCoefficients hc;
  hc.c1 = 0.5;
  hc.c2 = 0.25;
  hc.delta = 0.0;
  hc.a = 0.5;
  hc.lambda = 1.2;
  HydroInitialData init;
  init.preset = "equatorial_wave";
  init.amp_theta = 0.2;
  StateField1D st = make_hydro_state(static_cast<int>(state.range(0)), 2.0 * std::numbers::pi,
                                     init);
  const double dt = 0.4 * st.dz / 2.0;
  for (auto _ : state) {
    st = step_hydro(st, hc, dt);
  }
}
BENCHMARK(BM_HydroStep)->Arg(256)->Arg(1024);

void BM_LlgStep(benchmark::State& state) {
  FieldPreset preset;
  preset.name = "random_smooth";
  preset.theta0 = 1.2;
  preset.seed = 1;
  OrientationField f = make_orientation_field(static_cast<int>(state.range(0)), 1,
                                              2.0 * std::numbers::pi / state.range(0), preset);
  const LlgCoefficients llg(1.0, 0.5);
  const double dt = 0.25 * max_stable_dt_llg(f, llg);
  for (auto _ : state) {
    f = llg_step(f, llg, dt);
  }
}
BENCHMARK(BM_LlgStep)->Arg(1024)->Arg(4096);

void BM_SdeStep(benchmark::State& state) {
  ParticleEnsemble ens = make_ensemble(state.range(0), 1, 0.0, UnitVec3{0, 0, 1});
  const UnitVec3 axis{0, 0, 1};
  for (auto _ : state) {
    sde_step_fixed(ens, axis, 1.0, 1.0, 0.004);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SdeStep)->Arg(10000)->Arg(100000);

}  // namespace

BENCHMARK_MAIN();
