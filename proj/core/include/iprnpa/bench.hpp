#ifndef IPRNPA_BENCH_HPP
#define IPRNPA_BENCH_HPP

#include <string>
#include <vector>

#include "iprnpa/evaluator.hpp"

namespace iprnpa {

struct BenchConfig {
  std::vector<std::string> presets;
  std::vector<int> weeks{2};
  std::vector<unsigned> seeds;
  int repetitions = 1;  // wall time is the median over repetitions
  int jobs = 1;         // worker threads; output is order-independent
  // false zeroes every wall-clock column so repeated runs are
  // byte-identical (the --no-timestamps contract).
  bool with_timing = true;
  // An optimality gap is attached where the exhaustive search fits this
  // node budget; everywhere else the gap column stays empty.
  double oracle_max_nodes = 1e7;
};

struct BenchRun {
  std::string preset;
  int weeks = 0;
  unsigned seed = 0;
  double wall_ms = 0.0;
  ObjectiveBreakdown breakdown;
  bool has_gap = false;
  double gap = 0.0;  // heuristic total minus exhaustive optimum
};

struct BenchSummaryRow {
  std::string preset;
  int weeks = 0;
  int runs = 0;
  double objective_mean = 0.0;
  double objective_stdev = 0.0;  // sample stdev, 0 for a single run
  double wall_ms_mean = 0.0;
  double wall_ms_stdev = 0.0;
};

struct BenchReport {
  std::vector<BenchRun> runs;        // grid order: preset, weeks, seed
  std::vector<BenchSummaryRow> summary;  // one row per (preset, weeks)
};

// Generates each (preset, weeks, seed) instance and times the heuristic on
// it. Deterministic apart from the wall-clock columns regardless of jobs.
BenchReport run_bench(const BenchConfig& cfg);

std::string bench_runs_csv(const BenchReport& rep);
std::string bench_summary_csv(const BenchReport& rep);
std::string bench_to_json(const BenchConfig& cfg, const BenchReport& rep);

}  // namespace iprnpa

#endif
