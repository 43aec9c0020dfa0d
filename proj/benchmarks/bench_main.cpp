#include <benchmark/benchmark.h>

#include <cmath>

#include "wavelag/delay_line.hpp"
#include "wavelag/functionals.hpp"
#include "wavelag/spectral.hpp"
#include "wavelag/stepper.hpp"

namespace {

using namespace wavelag;

Scenario make_scenario(int N) {
  Scenario s;
  s.params = SystemParams::make(1.0, 0.25, 0.5, 1.0);
  s.N = N;
  s.cfl = 0.9;
  s.initial.y0 = [](double x) { return std::exp(-40.0 * (x - 0.4) * (x - 0.4)); };
  s.initial.z0 = [](double) { return 0.0; };
  s.initial.f = [](double) { return 0.0; };
  return s;
}

void BM_StepperAdvance(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  Scenario s = make_scenario(N);
  const Discretization d = resolve(s);
  const State init = init_state(d.grid, s.initial.y0, s.initial.z0, s.initial.f, s.params.tau);
  Stepper st(s.params, d.grid, init, d.dt, s.cfl);
  for (auto _ : state) {
    benchmark::DoNotOptimize(st.advance());
  }
  state.SetItemsProcessed(state.iterations() * (N + 1));
}
BENCHMARK(BM_StepperAdvance)->Arg(100)->Arg(400)->Arg(1600);

void BM_DelayAdvance(benchmark::State& state) {
  std::vector<double> u(state.range(0) + 1, 0.5);
  double inflow = 0.25;
  for (auto _ : state) {
    advance_delay(u, inflow);
    inflow = u.back();
    benchmark::DoNotOptimize(u.data());
  }
}
BENCHMARK(BM_DelayAdvance)->Arg(64)->Arg(1024);

void BM_LyapunovNorm(benchmark::State& state) {
  const int N = static_cast<int>(state.range(0));
  Scenario s = make_scenario(N);
  const Discretization d = resolve(s);
  const State init = init_state(d.grid, s.initial.y0, s.initial.z0, s.initial.f, s.params.tau);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lyapunov_norm_sq(init, s.params, d.grid));
  }
}
BENCHMARK(BM_LyapunovNorm)->Arg(200)->Arg(1600);

void BM_AssembleGenerator(benchmark::State& state) {
  const SystemParams p = SystemParams::make(1.0, 0.5, 1.0, 1.0);
  const Grid1D g = make_grid(1.0, static_cast<int>(state.range(0)), 16);
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_generator(p, g));
  }
}
BENCHMARK(BM_AssembleGenerator)->Arg(40)->Arg(160);

void BM_DeflatedEigenvalues(benchmark::State& state) {
  const SystemParams p = SystemParams::make(1.0, 0.5, 1.0, 1.0);
  const Grid1D g = make_grid(1.0, static_cast<int>(state.range(0)), 16);
  const GeneratorMatrix gen = assemble_generator(p, g);
  const DeflatedGenerator defl = deflate(gen, p, g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eigenvalues(defl.A));
  }
}
BENCHMARK(BM_DeflatedEigenvalues)->Arg(40)->Arg(80);

void BM_ResolventNorm(benchmark::State& state) {
  const SystemParams p = SystemParams::make(1.0, 0.5, 1.0, 1.0);
  const Grid1D g = make_grid(1.0, static_cast<int>(state.range(0)), 16);
  const GeneratorMatrix gen = assemble_generator(p, g);
  const DeflatedGenerator defl = deflate(gen, p, g);
  double gamma = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(resolvent_norm(defl.A, gamma));
    gamma += 0.5;
  }
}
BENCHMARK(BM_ResolventNorm)->Arg(40)->Arg(80);

}  // namespace

BENCHMARK_MAIN();
