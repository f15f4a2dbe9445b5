#include <benchmark/benchmark.h>

#include <vector>

#include "coldplasma/sweep.hpp"

namespace cp = coldplasma;

namespace {

const cp::InitialDataField& field() {
  static const cp::InitialDataField f = cp::gaussian_pulse(0.4761, 0.0, 3.0);
  return f;
}

void BM_Advance(benchmark::State& state, cp::Execution exec) {
  const std::vector<double> labels = cp::symmetric_labels(13.5, 13.5 / static_cast<double>(state.range(0)));
  cp::Ensemble ens = cp::make_ensemble(field(), labels);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cp::advance(ens, 1e-3, exec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(labels.size()));
}

void BM_PhiMin(benchmark::State& state, cp::Execution exec) {
  const std::vector<double> labels = cp::symmetric_labels(13.5, 13.5 / static_cast<double>(state.range(0)));
  const cp::Ensemble ens = cp::make_ensemble(field(), labels);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cp::phi_min(ens, 2, exec));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(labels.size()));
}

void BM_FirstCrossings(benchmark::State& state, cp::Execution exec) {
  std::vector<double> labels;
  for (int i = 0; i < state.range(0); ++i) labels.push_back(0.6 + 0.001 * i);
  for (auto _ : state) {
    benchmark::DoNotOptimize(cp::first_crossings(field(), labels, 1e-3, 5.0, exec));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK_CAPTURE(BM_Advance, serial, cp::Execution::serial)->Arg(1350)->Arg(13500);
BENCHMARK_CAPTURE(BM_Advance, parallel, cp::Execution::parallel)->Arg(1350)->Arg(13500);
BENCHMARK_CAPTURE(BM_PhiMin, serial, cp::Execution::serial)->Arg(13500);
BENCHMARK_CAPTURE(BM_PhiMin, parallel, cp::Execution::parallel)->Arg(13500);
BENCHMARK_CAPTURE(BM_FirstCrossings, serial, cp::Execution::serial)->Arg(64)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_FirstCrossings, parallel, cp::Execution::parallel)->Arg(64)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
