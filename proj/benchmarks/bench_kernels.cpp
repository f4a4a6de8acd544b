#include <benchmark/benchmark.h>

#include "unigeo/grassmann.hpp"
#include "unigeo/lagrangian.hpp"
#include "unigeo/matcore.hpp"
#include "unigeo/rng.hpp"
#include "unigeo/samplers.hpp"
#include "unigeo/unitary_paths.hpp"

namespace {

using namespace unigeo;

void BM_ExpI(benchmark::State& state) {
  CounterRng rng(1);
  const HermitianMatrix x = sample_hermitian_ball(state.range(0), 0.9 * kPi, rng);
  for (auto _ : state) benchmark::DoNotOptimize(exp_i(x));
}
BENCHMARK(BM_ExpI)->RangeMultiplier(2)->Range(2, 64);

void BM_PrincipalLog(benchmark::State& state) {
  CounterRng rng(2);
  const UnitaryMatrix u = sample_haar_unitary(state.range(0), rng);
  for (auto _ : state) benchmark::DoNotOptimize(principal_log(u));
}
BENCHMARK(BM_PrincipalLog)->RangeMultiplier(2)->Range(2, 64);

void BM_DistancePhi(benchmark::State& state) {
  CounterRng rng(3);
  const UnitaryMatrix u = sample_haar_unitary(state.range(0), rng);
  const UnitaryMatrix v = sample_haar_unitary(state.range(0), rng);
  const GaugeFunction phi = GaugeFunction::schatten(1.0);
  for (auto _ : state) benchmark::DoNotOptimize(distance_phi(phi, u, v));
}
BENCHMARK(BM_DistancePhi)->RangeMultiplier(2)->Range(2, 64);

void BM_DirectRotation(benchmark::State& state) {
  CounterRng rng(4);
  const Index n = state.range(0);
  const Projection p = sample_projection(n, n / 2, rng);
  const Projection q = sample_projection(n, n / 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(direct_rotation(p, q));
}
BENCHMARK(BM_DirectRotation)->RangeMultiplier(2)->Range(2, 64);

}  // namespace

BENCHMARK_MAIN();
