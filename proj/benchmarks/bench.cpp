#include <benchmark/benchmark.h>

#include <random>

#include "precondaor/aor.hpp"
#include "precondaor/harness.hpp"
#include "precondaor/preconditioners.hpp"
#include "precondaor/spectral.hpp"

using namespace precondaor;

namespace {

Matrix instance(int n) { return gen_l_matrix(n, 0.6, true, 99); }

void BM_PowerRadius(benchmark::State& state) {
  const Matrix t = aor_iteration_matrix(instance(static_cast<int>(state.range(0))),
                                        AorParams(0.5, 0.75));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spectral_radius(t, 1e-10).rho);
  }
}
BENCHMARK(BM_PowerRadius)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_DenseRadius(benchmark::State& state) {
  const Matrix t = aor_iteration_matrix(instance(static_cast<int>(state.range(0))),
                                        AorParams(0.5, 0.75));
  for (auto _ : state) {
    benchmark::DoNotOptimize(dense_radius(t));
  }
}
BENCHMARK(BM_DenseRadius)->Arg(4)->Arg(8)->Arg(16)->Arg(32);

void BM_IterationMatrix(benchmark::State& state) {
  const Matrix a = instance(static_cast<int>(state.range(0)));
  const AorParams p(0.5, 0.75);
  for (auto _ : state) {
    benchmark::DoNotOptimize(aor_iteration_matrix(a, p));
  }
}
BENCHMARK(BM_IterationMatrix)->Arg(8)->Arg(32);

void BM_BuildAndPrecondition(benchmark::State& state) {
  const Matrix a = instance(static_cast<int>(state.range(0)));
  const PreconditionerSpec spec{QVariant::Q13, Q13Params{1.0}};
  for (auto _ : state) {
    const Matrix q = build_q(spec, a);
    benchmark::DoNotOptimize(precondition(a, q).pa);
  }
}
BENCHMARK(BM_BuildAndPrecondition)->Arg(8)->Arg(32);

void BM_DeltaGeneric(benchmark::State& state) {
  const Matrix a = instance(static_cast<int>(state.range(0)));
  const Matrix q = build_q({QVariant::Q13, Q13Params{1.0}}, a);
  for (auto _ : state) {
    benchmark::DoNotOptimize(delta_generic(a, q, 0.5).entries);
  }
}
BENCHMARK(BM_DeltaGeneric)->Arg(8)->Arg(32);

void BM_EvaluateCell(benchmark::State& state) {
  const Matrix a = instance(static_cast<int>(state.range(0)));
  const PreconditionerSpec spec{QVariant::Q13, Q13Params{1.0}};
  const std::vector<TheoremKind> kinds{TheoremKind::A, TheoremKind::B};
  const ExperimentConfig cfg;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate_cell(a, spec, 0.5, 0.75, kinds, cfg));
  }
}
BENCHMARK(BM_EvaluateCell)->Arg(6)->Arg(10);

}  // namespace

BENCHMARK_MAIN();
