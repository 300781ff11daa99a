#include "iprnpa/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "iprnpa/errors.hpp"
#include "iprnpa/heuristic.hpp"
#include "iprnpa/instgen.hpp"
#include "iprnpa/model_file.hpp"
#include "iprnpa/oracle.hpp"

namespace iprnpa {

namespace {

using json = nlohmann::ordered_json;

void execute_run(const BenchConfig& cfg, BenchRun& run) {
  GenConfig gen = preset_config(run.preset);
  gen.weeks = run.weeks;
  Instance inst = generate_instance(gen, run.seed);

  std::vector<double> times;
  HeuristicResult res;
  for (int rep = 0; rep < std::max(1, cfg.repetitions); ++rep) {
    auto t0 = std::chrono::steady_clock::now();
    res = solve_heuristic(inst);
    auto t1 = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  std::sort(times.begin(), times.end());
  size_t mid = times.size() / 2;
  double median =
      times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
  run.wall_ms = cfg.with_timing ? median : 0.0;
  run.breakdown = res.breakdown;

  OracleLimits limits;
  limits.max_nodes = cfg.oracle_max_nodes;
  try {
    OracleResult opt = enumerate_optimal(inst, limits);
    run.has_gap = true;
    run.gap = res.breakdown.weighted_total - opt.breakdown.weighted_total;
  } catch (const BudgetExceededError&) {
    // instance too large to verify; the gap column stays empty
  }
}

struct Stats {
  double mean = 0.0, stdev = 0.0;
};

Stats mean_stdev(const std::vector<double>& xs) {
  Stats st;
  if (xs.empty()) return st;
  for (double x : xs) st.mean += x;
  st.mean /= xs.size();
  if (xs.size() < 2) return st;
  double ss = 0.0;
  for (double x : xs) ss += (x - st.mean) * (x - st.mean);
  st.stdev = std::sqrt(ss / (xs.size() - 1));
  return st;
}

void append_run_csv(std::ostringstream& out, const BenchRun& r) {
  const ObjectiveBreakdown& b = r.breakdown;
  out << r.preset << ',' << r.weeks << ',' << r.seed << ','
      << format_double(r.wall_ms) << ',' << b.transfers << ','
      << b.inconvenience << ',' << b.gender_mix << ',' << b.equipment_viol
      << ',' << b.continuity << ',' << b.skill_viol << ','
      << format_double(b.load_viol) << ',' << format_double(b.fairness_shift)
      << ',' << format_double(b.fairness_overall) << ',' << b.nurses_per_room
      << ',' << format_double(b.walking) << ','
      << format_double(b.weighted_total) << ',';
  if (r.has_gap) out << format_double(r.gap);
  out << '\n';
}

}  // namespace

BenchReport run_bench(const BenchConfig& cfg) {
  BenchReport rep;
  for (const std::string& preset : cfg.presets) {
    for (int w : cfg.weeks) {
      for (unsigned seed : cfg.seeds) {
        BenchRun run;
        run.preset = preset;
        run.weeks = w;
        run.seed = seed;
        rep.runs.push_back(run);
      }
    }
  }

  int jobs = std::clamp<int>(cfg.jobs, 1, std::max<size_t>(rep.runs.size(), 1));
  if (jobs <= 1) {
    for (BenchRun& run : rep.runs) execute_run(cfg, run);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) {
      pool.emplace_back([&] {
        for (size_t i = next++; i < rep.runs.size(); i = next++) {
          execute_run(cfg, rep.runs[i]);
        }
      });
    }
    for (std::thread& t : pool) t.join();
  }

  for (const std::string& preset : cfg.presets) {
    for (int w : cfg.weeks) {
      std::vector<double> totals, times;
      for (const BenchRun& r : rep.runs) {
        if (r.preset == preset && r.weeks == w) {
          totals.push_back(r.breakdown.weighted_total);
          times.push_back(r.wall_ms);
        }
      }
      if (totals.empty()) continue;
      BenchSummaryRow row;
      row.preset = preset;
      row.weeks = w;
      row.runs = static_cast<int>(totals.size());
      Stats ob = mean_stdev(totals), tm = mean_stdev(times);
      row.objective_mean = ob.mean;
      row.objective_stdev = ob.stdev;
      row.wall_ms_mean = tm.mean;
      row.wall_ms_stdev = tm.stdev;
      rep.summary.push_back(row);
    }
  }
  return rep;
}

std::string bench_runs_csv(const BenchReport& rep) {
  std::ostringstream out;
  out << "preset,weeks,seed,wall_ms,transfers,inconvenience,gender_mix,"
         "equipment_viol,continuity,skill_viol,load_viol,fairness_shift,"
         "fairness_overall,nurses_per_room,walking,weighted_total,gap\n";
  for (const BenchRun& r : rep.runs) append_run_csv(out, r);
  return out.str();
}

std::string bench_summary_csv(const BenchReport& rep) {
  std::ostringstream out;
  out << "preset,weeks,runs,objective_mean,objective_stdev,wall_ms_mean,"
         "wall_ms_stdev\n";
  for (const BenchSummaryRow& r : rep.summary) {
    out << r.preset << ',' << r.weeks << ',' << r.runs << ','
        << format_double(r.objective_mean) << ','
        << format_double(r.objective_stdev) << ','
        << format_double(r.wall_ms_mean) << ','
        << format_double(r.wall_ms_stdev) << '\n';
  }
  return out.str();
}

std::string bench_to_json(const BenchConfig& cfg, const BenchReport& rep) {
  json j;
  j["config"]["presets"] = cfg.presets;
  j["config"]["weeks"] = cfg.weeks;
  j["config"]["seeds"] = cfg.seeds;
  j["config"]["repetitions"] = cfg.repetitions;
  j["runs"] = json::array();
  for (const BenchRun& r : rep.runs) {
    json jr;
    jr["preset"] = r.preset;
    jr["weeks"] = r.weeks;
    jr["seed"] = r.seed;
    jr["wall_ms"] = r.wall_ms;
    const ObjectiveBreakdown& b = r.breakdown;
    jr["breakdown"]["transfers"] = b.transfers;
    jr["breakdown"]["inconvenience"] = b.inconvenience;
    jr["breakdown"]["gender_mix"] = b.gender_mix;
    jr["breakdown"]["equipment_viol"] = b.equipment_viol;
    jr["breakdown"]["continuity"] = b.continuity;
    jr["breakdown"]["skill_viol"] = b.skill_viol;
    jr["breakdown"]["load_viol"] = b.load_viol;
    jr["breakdown"]["fairness_shift"] = b.fairness_shift;
    jr["breakdown"]["fairness_overall"] = b.fairness_overall;
    jr["breakdown"]["nurses_per_room"] = b.nurses_per_room;
    jr["breakdown"]["walking"] = b.walking;
    jr["breakdown"]["weighted_total"] = b.weighted_total;
    if (r.has_gap) jr["gap"] = r.gap;
    j["runs"].push_back(jr);
  }
  j["summary"] = json::array();
  for (const BenchSummaryRow& r : rep.summary) {
    json js;
    js["preset"] = r.preset;
    js["weeks"] = r.weeks;
    js["runs"] = r.runs;
    js["objective_mean"] = r.objective_mean;
    js["objective_stdev"] = r.objective_stdev;
    js["wall_ms_mean"] = r.wall_ms_mean;
    js["wall_ms_stdev"] = r.wall_ms_stdev;
    j["summary"].push_back(js);
  }
  return j.dump(2) + "\n";
}

}  // namespace iprnpa
