#include <benchmark/benchmark.h>

#include <cmath>

#include "vctl/core/profiles.hpp"
#include "vctl/maxwell/maxwell.hpp"
#include "vctl/vlasov/transport.hpp"

using namespace vctl;

namespace {

PhaseGrid bench_grid(const benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  return PhaseGrid{4.0, 4.0, n, n, 0.05, 1};
}

Distribution bench_blob(const PhaseGrid& g) {
  BlobProfile b;
  b.sigma_x = 0.6;
  b.sigma_p = 0.6;
  b.radius_x = 1.5;
  b.radius_p = 1.5;
  b.amplitude = 0.1;
  return sample_distribution(g, b);
}

CellForces smooth_forces(int nx) {
  CellForces k(nx);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < nx; ++j) {
      k.e1(i, j) = 0.3 * std::sin(0.2 * i);
      k.e2(i, j) = -0.2 * std::cos(0.3 * j);
      k.b(i, j) = 0.5;
    }
  return k;
}

void BM_XShift(benchmark::State& state) {
  const PhaseGrid g = bench_grid(state);
  const Distribution f = bench_blob(g);
  Distribution out(g), scratch(g);
  const XShift shift(g, 0.5 * g.dt);
  for (auto _ : state) {
    shift.apply(f, out, scratch);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.values().size()));
}
BENCHMARK(BM_XShift)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_MomentumStep(benchmark::State& state) {
  const PhaseGrid g = bench_grid(state);
  const Distribution f = bench_blob(g);
  Distribution out(g);
  const MomentumStep step(g);
  const CellForces k = smooth_forces(g.nx);
  for (auto _ : state) {
    step.apply(f, k, g.dt, out);
    benchmark::DoNotOptimize(out.values().data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(f.values().size()));
}
BENCHMARK(BM_MomentumStep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_MaxwellStep(benchmark::State& state) {
  const int nx = static_cast<int>(state.range(0));
  const double dx = 8.0 / nx;
  FieldState fields(nx);
  for (int i = 0; i < nx; ++i)
    for (int j = 1; j < nx; ++j) fields.e2(i, j) = std::sin(0.1 * (i + j));
  FaceVector current(nx);
  current.fill(1e-3);
  for (auto _ : state) {
    maxwell_step_in_place(fields, current, 0.4 * dx, dx);
    benchmark::DoNotOptimize(fields.b.data());
  }
}
BENCHMARK(BM_MaxwellStep)->Arg(64)->Arg(256);

void BM_TransportStep(benchmark::State& state) {
  const PhaseGrid g = bench_grid(state);
  const Distribution f = bench_blob(g);
  const FieldState fields(g.nx);
  for (auto _ : state) benchmark::DoNotOptimize(transport_step(f, fields, g.dt));
}
BENCHMARK(BM_TransportStep)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
