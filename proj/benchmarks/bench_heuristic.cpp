#include <benchmark/benchmark.h>

#include "iprnpa/heuristic.hpp"
#include "iprnpa/instgen.hpp"
#include "iprnpa/oracle.hpp"

using namespace iprnpa;

namespace {

Instance preset_instance(const char* preset, int weeks, unsigned seed) {
  GenConfig cfg = preset_config(preset);
  cfg.weeks = weeks;
  return generate_instance(cfg, seed);
}

void BM_generate_tiny(benchmark::State& state) {
  GenConfig cfg = preset_config("tiny");
  for (auto _ : state) {
    Instance inst = generate_instance(cfg, 1);
    benchmark::DoNotOptimize(inst);
  }
}
BENCHMARK(BM_generate_tiny)->Unit(benchmark::kMicrosecond);

void BM_generate_30beds_week(benchmark::State& state) {
  GenConfig cfg = preset_config("30beds-var1");
  cfg.weeks = 1;
  for (auto _ : state) {
    Instance inst = generate_instance(cfg, 1);
    benchmark::DoNotOptimize(inst);
  }
}
BENCHMARK(BM_generate_30beds_week)->Unit(benchmark::kMicrosecond);

void BM_het_matrix_30beds(benchmark::State& state) {
  Instance inst = preset_instance("30beds-var1", 2, 1);
  for (auto _ : state) {
    HeterogeneityMatrix het = build_het_matrix(inst.patients);
    benchmark::DoNotOptimize(het);
  }
}
BENCHMARK(BM_het_matrix_30beds)->Unit(benchmark::kMicrosecond);

void BM_heuristic_tiny(benchmark::State& state) {
  Instance inst = preset_instance("tiny", 1, 1);
  for (auto _ : state) {
    HeuristicResult res = solve_heuristic(inst);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_heuristic_tiny)->Unit(benchmark::kMicrosecond);

void BM_heuristic_30beds(benchmark::State& state) {
  // weeks is the scaling axis the solver is sensitive to
  Instance inst = preset_instance("30beds-var1", static_cast<int>(state.range(0)), 1);
  for (auto _ : state) {
    HeuristicResult res = solve_heuristic(inst);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_heuristic_30beds)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_oracle_tiny(benchmark::State& state) {
  Instance inst = preset_instance("tiny", 1, 1);
  for (auto _ : state) {
    OracleResult res = enumerate_optimal(inst);
    benchmark::DoNotOptimize(res);
  }
}
BENCHMARK(BM_oracle_tiny)->Unit(benchmark::kMillisecond);

}  // namespace
