#include "ksep/closedform.hpp"
#include "ksep/criteria.hpp"
#include "ksep/observables.hpp"
#include "ksep/ppt.hpp"
#include "ksep/qstate.hpp"

#include <benchmark/benchmark.h>

#include <vector>

namespace {

ksep::Dims uniform_dims(int n, int d) {
  return ksep::Dims(std::vector<int>(static_cast<size_t>(n), d));
}

void BM_GhzNoiseState(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ksep::ghz_noise_state(n, 3, 0.5));
  }
}
BENCHMARK(BM_GhzNoiseState)->Arg(3)->Arg(4)->Arg(5);

void BM_Criterion1(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ksep::DensityMatrix rho = ksep::ghz_noise_state(n, 3, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ksep::criterion1_evaluate(rho, 2));
  }
}
BENCHMARK(BM_Criterion1)->Arg(3)->Arg(4)->Arg(5);

void BM_Criterion2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ksep::DensityMatrix rho = ksep::w_noise_state(n, 3, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ksep::criterion2_evaluate(rho, 2));
  }
}
BENCHMARK(BM_Criterion2)->Arg(3)->Arg(4)->Arg(5);

void BM_PartialTransposeMinEig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const ksep::DensityMatrix rho = ksep::ghz_noise_state(n, 3, 0.5);
  const ksep::Bipartition cut{{1}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ksep::min_eigenvalue(ksep::partial_transpose(rho, cut)));
  }
}
BENCHMARK(BM_PartialTransposeMinEig)->Arg(3)->Arg(4);

void BM_NoiseThreshold(benchmark::State& state) {
  const ksep::NoiseFamily family{ksep::FamilyKind::GhzWhiteNoise, 3, 3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(ksep::noise_threshold(family, ksep::CriterionId::C1, 2));
  }
}
BENCHMARK(BM_NoiseThreshold);

void BM_EnumerateCriterion2Settings(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ksep::enumerate_criterion2_settings(n, 3));
  }
}
BENCHMARK(BM_EnumerateCriterion2Settings)->Arg(3)->Arg(4);

void BM_RandomDensityMatrix(benchmark::State& state) {
  const ksep::Dims dims = uniform_dims(static_cast<int>(state.range(0)), 3);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ksep::random_density_matrix(seed++, dims));
  }
}
BENCHMARK(BM_RandomDensityMatrix)->Arg(3)->Arg(4);

}  // namespace

BENCHMARK_MAIN();
