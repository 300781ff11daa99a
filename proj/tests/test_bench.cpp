#include <doctest.h>

#include <string>

#include "iprnpa/bench.hpp"

using namespace iprnpa;

namespace {

BenchConfig tiny_grid() {
  BenchConfig cfg;
  cfg.presets = {"tiny"};
  cfg.weeks = {1, 2};
  cfg.seeds = {1, 2, 3};
  cfg.with_timing = false;
  return cfg;
}

}  // namespace

TEST_CASE("the grid produces one run per combination and one summary row per cell") {
  BenchConfig cfg = tiny_grid();
  BenchReport rep = run_bench(cfg);
  REQUIRE(rep.runs.size() == 6);
  REQUIRE(rep.summary.size() == 2);

  // grid order: preset, then weeks, then seed
  CHECK(rep.runs[0].weeks == 1);
  CHECK(rep.runs[0].seed == 1);
  CHECK(rep.runs[2].seed == 3);
  CHECK(rep.runs[3].weeks == 2);
  CHECK(rep.summary[0].runs == 3);
  CHECK(rep.summary[1].weeks == 2);

  // tiny instances fit the exhaustive budget, so gaps are attached
  for (const BenchRun& r : rep.runs) {
    CHECK(r.has_gap);
    CHECK(r.gap >= -1e-9);
    CHECK(r.wall_ms == 0.0);  // timing disabled
  }
}

TEST_CASE("empty seed lists give an empty report") {
  BenchConfig cfg = tiny_grid();
  cfg.seeds = {};
  BenchReport rep = run_bench(cfg);
  CHECK(rep.runs.empty());
  CHECK(rep.summary.empty());
  CHECK(bench_runs_csv(rep).find("preset") == 0);  // header only
}

TEST_CASE("parallel execution does not change the bytes") {
  BenchConfig serial = tiny_grid();
  BenchReport a = run_bench(serial);

  BenchConfig parallel = tiny_grid();
  parallel.jobs = 4;
  BenchReport b = run_bench(parallel);

  CHECK(bench_runs_csv(a) == bench_runs_csv(b));
  CHECK(bench_summary_csv(a) == bench_summary_csv(b));
  CHECK(bench_to_json(serial, a) == bench_to_json(parallel, b));
}

TEST_CASE("csv outputs carry the expected columns") {
  BenchConfig cfg = tiny_grid();
  cfg.seeds = {5};
  cfg.weeks = {1};
  BenchReport rep = run_bench(cfg);

  std::string runs = bench_runs_csv(rep);
  CHECK(runs.find("preset,weeks,seed,wall_ms,transfers") == 0);
  CHECK(runs.find("weighted_total,gap") != std::string::npos);
  CHECK(runs.find("tiny,1,5,") != std::string::npos);

  std::string summary = bench_summary_csv(rep);
  CHECK(summary.find("preset,weeks,runs,") == 0);
  CHECK(summary.find("tiny,1,1,") != std::string::npos);

  std::string json = bench_to_json(cfg, rep);
  CHECK(json.find("\"runs\"") != std::string::npos);
  CHECK(json.find("\"summary\"") != std::string::npos);
}

TEST_CASE("unknown presets are refused") {
  BenchConfig cfg = tiny_grid();
  cfg.presets = {"made-up"};
  CHECK_THROWS(run_bench(cfg));
}
