#include <benchmark/benchmark.h>

#include "latentlabel/harness.hpp"
#include "latentlabel/solver.hpp"
#include "latentlabel/views.hpp"

using namespace latentlabel;

namespace {

const std::vector<KernelSpec>& default_kernels() {
  static const std::vector<KernelSpec> kernels = {
      {KernelKind::Linear, {}, true},
      {KernelKind::Gaussian, {}, true},
      {KernelKind::Bhattacharyya, {}, true},
      {KernelKind::ChiSquare, {}, true}};
  return kernels;
}

SyntheticData planted(Eigen::Index n) {
  SyntheticSpec spec;
  spec.n_samples = n;
  spec.seed = 42;
  return generate_synthetic(spec);
}

}  // namespace

static void BM_GramMatrix(benchmark::State& state) {
  const auto data = planted(state.range(0));
  const auto concat =
      concat_features(data.view.modalities[0], data.view.modalities[1]);
  KernelSpec spec;
  spec.kind = static_cast<KernelKind>(state.range(1));
  for (auto _ : state) {
    auto gram = gram_matrix(concat, spec);
    benchmark::DoNotOptimize(gram.values.data());
  }
}
BENCHMARK(BM_GramMatrix)
    ->ArgsProduct({{136, 400}, {0, 1, 2, 3}})
    ->ArgNames({"n", "kernel"})
    ->Unit(benchmark::kMillisecond);

static void BM_AssembleView(benchmark::State& state) {
  const auto data = planted(state.range(0));
  for (auto _ : state) {
    auto assembled =
        assemble_view(data.view.modalities[0], data.view.modalities[1],
                      ScalingKind::MinMax, default_kernels());
    benchmark::DoNotOptimize(assembled.view.modalities.back().values.data());
  }
}
BENCHMARK(BM_AssembleView)
    ->Arg(136)
    ->Arg(400)
    ->ArgName("n")
    ->Unit(benchmark::kMillisecond);

static void BM_FistaSolve(benchmark::State& state) {
  const auto data = planted(136);
  const auto model = init_state(data.view, data.labels, 50, 0.3, 0.1);
  SolverConfig config;
  config.fista_max_iters = 500;
  for (auto _ : state) {
    auto result = solve_V_fista(model.P, data.labels, 0.1, model.V, config);
    benchmark::DoNotOptimize(result.V.data());
  }
}
BENCHMARK(BM_FistaSolve)->Unit(benchmark::kMillisecond);

// One full fit with the six-view representation and a fixed outer-iteration
// budget; the n sweep exposes the empirical complexity in the sample count.
static void BM_Fit(benchmark::State& state) {
  const auto data = planted(state.range(0));
  const auto assembled =
      assemble_view(data.view.modalities[0], data.view.modalities[1],
                    ScalingKind::MinMax, default_kernels(),
                    data.view.sample_ids);
  SolverConfig config;
  config.max_outer_iters = 15;
  config.outer_rel_tol = 0.0;
  for (auto _ : state) {
    auto result = fit(assembled.view, data.labels, 0.3, 0.1, 50, config);
    benchmark::DoNotOptimize(result.first.V.data());
  }
}
BENCHMARK(BM_Fit)
    ->Arg(50)
    ->Arg(100)
    ->Arg(200)
    ->Arg(400)
    ->ArgName("n")
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
