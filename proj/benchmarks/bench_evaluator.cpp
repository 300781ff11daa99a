#include <benchmark/benchmark.h>

#include <string>

#include "iprnpa/evaluator.hpp"
#include "iprnpa/heuristic.hpp"
#include "iprnpa/instgen.hpp"
#include "iprnpa/mip_export.hpp"
#include "iprnpa/model_file.hpp"

using namespace iprnpa;

namespace {

struct SolvedFixture {
  Instance inst;
  Solution sol;
};

SolvedFixture solved_30beds() {
  GenConfig cfg = preset_config("30beds-var1");
  cfg.weeks = 1;
  Instance inst = generate_instance(cfg, 1);
  Solution sol = solve_heuristic(inst).solution;
  return {std::move(inst), std::move(sol)};
}

void BM_eval_total_30beds(benchmark::State& state) {
  SolvedFixture f = solved_30beds();
  for (auto _ : state) {
    ObjectiveBreakdown bd = eval_total(f.inst, f.sol);
    benchmark::DoNotOptimize(bd);
  }
}
BENCHMARK(BM_eval_total_30beds)->Unit(benchmark::kMicrosecond);

void BM_export_full_mip_30beds(benchmark::State& state) {
  SolvedFixture f = solved_30beds();
  for (auto _ : state) {
    ModelFile m = export_full_mip(f.inst);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_export_full_mip_30beds)->Unit(benchmark::kMillisecond);

void BM_write_lp_30beds(benchmark::State& state) {
  SolvedFixture f = solved_30beds();
  ModelFile m = export_full_mip(f.inst);
  for (auto _ : state) {
    std::string text = write_lp(m);
    benchmark::DoNotOptimize(text);
  }
}
BENCHMARK(BM_write_lp_30beds)->Unit(benchmark::kMillisecond);

void BM_parse_lp_30beds(benchmark::State& state) {
  SolvedFixture f = solved_30beds();
  ModelFile m = export_full_mip(f.inst);
  std::string text = write_lp(m);
  for (auto _ : state) {
    ModelFile parsed = parse_lp(text);
    benchmark::DoNotOptimize(parsed);
  }
}
BENCHMARK(BM_parse_lp_30beds)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
