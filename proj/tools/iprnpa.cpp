// Command line front end: every subcommand is a thin wrapper over the core
// library, all file I/O goes through the JSON and LP readers there.
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "iprnpa/bench.hpp"
#include "iprnpa/errors.hpp"
#include "iprnpa/evaluator.hpp"
#include "iprnpa/heuristic.hpp"
#include "iprnpa/instgen.hpp"
#include "iprnpa/json_io.hpp"
#include "iprnpa/mip_export.hpp"
#include "iprnpa/oracle.hpp"
#include "iprnpa/report.hpp"
#include "iprnpa/roster.hpp"
#include "iprnpa/validate.hpp"

namespace {

using iprnpa::StructuralError;
using json = nlohmann::ordered_json;

std::vector<unsigned> parse_seed_list(const std::string& text) {
  std::vector<unsigned> out;
  if (text.empty()) return out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    size_t dash = token.find('-', 1);  // allow plain "7" and ranges "1-10"
    try {
      if (dash == std::string::npos) {
        out.push_back(static_cast<unsigned>(std::stoul(token)));
      } else {
        unsigned lo = static_cast<unsigned>(std::stoul(token.substr(0, dash)));
        unsigned hi = static_cast<unsigned>(std::stoul(token.substr(dash + 1)));
        if (hi < lo) throw StructuralError("seed range is reversed: " + token);
        for (unsigned s = lo; s <= hi; ++s) out.push_back(s);
      }
    } catch (const std::logic_error&) {
      throw StructuralError("seeds: cannot parse '" + token + "'");
    }
  }
  return out;
}

std::array<int, 4> parse_per_shift(const std::string& text) {
  std::array<int, 4> out{};
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    size_t colon = token.find(':');
    if (colon == std::string::npos) {
      throw StructuralError("per-shift entries look like level:count, got '" +
                            token + "'");
    }
    try {
      int level = std::stoi(token.substr(0, colon));
      int count = std::stoi(token.substr(colon + 1));
      if (level < 1 || level > 3) {
        throw StructuralError("per-shift level must be 1..3, got '" + token + "'");
      }
      out[level] = count;
    } catch (const std::logic_error&) {
      throw StructuralError("per-shift: cannot parse '" + token + "'");
    }
  }
  return out;
}

std::array<double, 4> parse_skill_mix(const std::string& text) {
  std::array<double, 4> out{};
  std::string token;
  std::istringstream in(text);
  int level = 1;
  while (std::getline(in, token, ',')) {
    if (level > 3) throw StructuralError("skill mix takes at most three shares");
    try {
      out[level++] = std::stod(token);
    } catch (const std::logic_error&) {
      throw StructuralError("skill mix: cannot parse '" + token + "'");
    }
  }
  return out;
}

void write_or_print(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
  } else {
    iprnpa::write_text_file(out_path, text);
  }
}

// --- generate ---------------------------------------------------------

struct GenerateArgs {
  std::string preset, config_path, fill_path, out;
  unsigned seed = 0;
  bool seed_given = false;
  int count = 0;
};

int cmd_generate(const GenerateArgs& a) {
  if (!a.fill_path.empty()) {
    iprnpa::Instance partial = iprnpa::load_instance(a.fill_path);
    iprnpa::FillResult filled =
        iprnpa::fill_missing_real_data(partial, a.seed_given ? a.seed : 1);
    for (const std::string& issue : filled.issues) {
      std::cerr << "issue: " << issue << "\n";
    }
    iprnpa::save_instance(filled.instance, a.out);
    return 0;
  }

  iprnpa::GenConfig cfg;
  std::string stem = "instance";
  if (!a.config_path.empty()) {
    cfg = iprnpa::parse_gen_config_json(iprnpa::read_text_file(a.config_path));
    stem = std::filesystem::path(a.config_path).stem().string();
  } else if (!a.preset.empty()) {
    cfg = iprnpa::preset_config(a.preset);
    stem = a.preset;
  } else {
    throw StructuralError("generate needs --preset, --config or --fill");
  }
  if (a.seed_given) cfg.seed = a.seed;
  if (a.count > 0) cfg.num_instances = a.count;

  bool single_file = cfg.num_instances == 1 && a.out.size() > 5 &&
                     a.out.rfind(".json") == a.out.size() - 5;
  if (single_file) {
    iprnpa::save_instance(iprnpa::generate_instance(cfg, cfg.seed), a.out);
    return 0;
  }
  std::filesystem::create_directories(a.out);
  for (int i = 0; i < cfg.num_instances; ++i) {
    unsigned seed = cfg.seed + static_cast<unsigned>(i);
    std::filesystem::path file = std::filesystem::path(a.out) /
                                 (stem + "_seed" + std::to_string(seed) + ".json");
    iprnpa::save_instance(iprnpa::generate_instance(cfg, seed), file.string());
  }
  return 0;
}

// --- roster -----------------------------------------------------------

struct RosterArgs {
  int days = 0;
  std::string per_shift;
  int max_shifts = 0;
  int nurses = 0;  // 0 means automatic sizing
  std::string skill_mix = "20,60,20";
  std::string out;
};

iprnpa::RosterRequest build_roster_request(const RosterArgs& a,
                                           iprnpa::Roster* roster_out) {
  if (a.days < 1) throw StructuralError("roster needs --days >= 1");
  if (a.max_shifts < 1) throw StructuralError("roster needs --max-shifts >= 1");
  std::array<int, 4> per_shift = parse_per_shift(a.per_shift);
  std::array<double, 4> mix = parse_skill_mix(a.skill_mix);

  iprnpa::RosterRequest req;
  req.num_days = a.days;
  req.required = iprnpa::uniform_requirements(a.days, per_shift);
  req.max_shifts = a.max_shifts;
  if (a.nurses > 0) {
    std::array<int, 4> counts = iprnpa::apportion_skills(a.nurses, mix);
    for (int level = 1; level <= 3; ++level) {
      for (int k = 0; k < counts[level]; ++k) {
        req.nurses.push_back(
            {"n" + std::to_string(req.nurses.size() + 1), level});
      }
    }
    if (roster_out) *roster_out = iprnpa::solve_roster(req);
  } else {
    iprnpa::NurseCountResult found =
        iprnpa::automatic_nurse_count(a.days, req.required, a.max_shifts, mix);
    req.nurses = found.nurses;
    if (roster_out) *roster_out = found.roster;
  }
  return req;
}

int cmd_roster(const RosterArgs& a) {
  iprnpa::Roster roster;
  iprnpa::RosterRequest req = build_roster_request(a, &roster);
  std::vector<std::string> problems = iprnpa::verify_roster(req, roster);
  if (!problems.empty()) {
    throw std::logic_error("solver returned an illegal roster: " + problems[0]);
  }

  json j;
  j["num_days"] = req.num_days;
  j["max_shifts"] = req.max_shifts;
  j["nurses"] = json::array();
  for (size_t n = 0; n < req.nurses.size(); ++n) {
    json nj;
    nj["id"] = req.nurses[n].id;
    nj["skill"] = req.nurses[n].skill;
    nj["shifts"] = roster.shifts_of_nurse[n];
    json ml = json::object();
    for (int s : roster.shifts_of_nurse[n]) {
      ml[std::to_string(s)] = iprnpa::maxload_for_skill(req.nurses[n].skill);
    }
    nj["maxload"] = std::move(ml);
    j["nurses"].push_back(std::move(nj));
  }
  write_or_print(j.dump(2) + "\n", a.out);
  return 0;
}

// --- solve ------------------------------------------------------------

struct SolveArgs {
  std::string instance, method = "heuristic", out;
  unsigned seed = 0;  // reserved, the greedy is deterministic
  int max_triples = 0;
  bool no_timestamps = false;
};

int cmd_solve(const SolveArgs& a) {
  if (a.method != "heuristic") {
    throw StructuralError("unknown method '" + a.method +
                          "' (use the oracle subcommand for exhaustive search)");
  }
  iprnpa::Instance inst = iprnpa::load_instance(a.instance);
  iprnpa::HeuristicOptions opts;
  opts.max_triples_per_patient = a.max_triples;

  auto t0 = std::chrono::steady_clock::now();
  iprnpa::HeuristicResult res = iprnpa::solve_heuristic(inst, opts);
  auto t1 = std::chrono::steady_clock::now();
  double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

  res.solution.instance_ref = a.instance;
  if (!a.out.empty()) iprnpa::save_solution(res.solution, a.out);

  json j;
  j["instance"] = a.instance;
  j["method"] = a.method;
  j["wall_ms"] = a.no_timestamps ? 0.0 : ms;
  j["breakdown"] = json::parse(iprnpa::breakdown_to_json(res.breakdown));
  std::cout << j.dump(2) << "\n";
  return 0;
}

// --- evaluate / report ------------------------------------------------

struct PairArgs {
  std::string instance, solution, out;
};

int cmd_evaluate(const PairArgs& a) {
  iprnpa::Instance inst = iprnpa::load_instance(a.instance);
  iprnpa::Solution sol = iprnpa::load_solution(a.solution);
  iprnpa::require_valid(inst);
  iprnpa::FeasibilityReport rep = iprnpa::check_feasibility(inst, sol);
  if (!rep.feasible()) {
    std::cout << rep.to_string() << "\n";
    return 2;
  }
  iprnpa::ObjectiveBreakdown b = iprnpa::eval_total(inst, sol);
  std::cout << iprnpa::breakdown_to_json(b) << "\n"
            << iprnpa::render_breakdown(b, inst.weights);
  return 0;
}

int cmd_report(const PairArgs& a) {
  iprnpa::Instance inst = iprnpa::load_instance(a.instance);
  iprnpa::Solution sol = iprnpa::load_solution(a.solution);
  iprnpa::require_valid(inst);
  std::string text = iprnpa::render_plan(inst, sol);
  write_or_print(text, a.out);
  return iprnpa::check_feasibility(inst, sol).feasible() ? 0 : 2;
}

// --- export -----------------------------------------------------------

struct ExportArgs {
  std::string model, instance, rooms, out;
  RosterArgs roster;
};

int cmd_export(const ExportArgs& a) {
  iprnpa::ModelFile model;
  if (a.model == "roster") {
    iprnpa::RosterRequest req = build_roster_request(a.roster, nullptr);
    model = iprnpa::export_roster_bip(req);
  } else {
    if (a.instance.empty()) throw StructuralError("export needs --instance");
    iprnpa::Instance inst = iprnpa::load_instance(a.instance);
    if (a.model == "full") {
      model = iprnpa::export_full_mip(inst);
    } else if (a.model == "pra") {
      model = iprnpa::export_pra(inst);
    } else if (a.model == "npa") {
      if (a.rooms.empty()) throw StructuralError("npa export needs --rooms");
      model = iprnpa::export_npa(inst, iprnpa::load_solution(a.rooms));
    } else {
      throw StructuralError("unknown model '" + a.model +
                            "' (full, pra, npa or roster)");
    }
  }
  write_or_print(iprnpa::write_lp(model), a.out);
  return 0;
}

// --- oracle -----------------------------------------------------------

struct OracleArgs {
  std::string instance, out;
  double max_nodes = 1e7;
  bool no_pruning = false;
  long audit_every = 0;
};

int cmd_oracle(const OracleArgs& a) {
  iprnpa::Instance inst = iprnpa::load_instance(a.instance);
  iprnpa::OracleLimits limits;
  limits.max_nodes = a.max_nodes;
  limits.enable_pruning = !a.no_pruning;
  limits.audit_leaves_every = a.audit_every;
  iprnpa::OracleResult res = iprnpa::enumerate_optimal(inst, limits);

  res.solution.instance_ref = a.instance;
  if (!a.out.empty()) iprnpa::save_solution(res.solution, a.out);

  json j;
  j["instance"] = a.instance;
  j["estimated_leaves"] = res.estimated_leaves;
  j["leaves_visited"] = res.leaves_visited;
  j["optimum"] = res.breakdown.weighted_total;
  j["breakdown"] = json::parse(iprnpa::breakdown_to_json(res.breakdown));
  if (a.audit_every > 0) j["max_leaf_divergence"] = res.max_leaf_divergence;
  std::cout << j.dump(2) << "\n";
  return 0;
}

// --- bench ------------------------------------------------------------

struct BenchArgs {
  std::string presets, weeks = "2,4", seeds = "1-10", out;
  int reps = 1;
  int jobs = 0;
  double oracle_max_nodes = 1e7;
  bool no_timestamps = false;
};

int cmd_bench(const BenchArgs& a) {
  iprnpa::BenchConfig cfg;
  std::string token;
  std::istringstream presets(a.presets);
  while (std::getline(presets, token, ',')) cfg.presets.push_back(token);
  cfg.weeks.clear();
  std::istringstream weeks(a.weeks);
  while (std::getline(weeks, token, ',')) {
    try {
      cfg.weeks.push_back(std::stoi(token));
    } catch (const std::logic_error&) {
      throw StructuralError("weeks: cannot parse '" + token + "'");
    }
  }
  cfg.seeds = parse_seed_list(a.seeds);
  cfg.repetitions = a.reps;
  cfg.jobs = a.jobs > 0 ? a.jobs
                        : static_cast<int>(std::thread::hardware_concurrency());
  cfg.with_timing = !a.no_timestamps;
  cfg.oracle_max_nodes = a.oracle_max_nodes;

  iprnpa::BenchReport rep = iprnpa::run_bench(cfg);
  std::filesystem::create_directories(a.out);
  std::filesystem::path dir(a.out);
  iprnpa::write_text_file((dir / "runs.csv").string(), iprnpa::bench_runs_csv(rep));
  iprnpa::write_text_file((dir / "summary.csv").string(),
                          iprnpa::bench_summary_csv(rep));
  iprnpa::write_text_file((dir / "bench.json").string(),
                          iprnpa::bench_to_json(cfg, rep));
  std::cout << iprnpa::bench_summary_csv(rep);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"integrated patient-to-room and nurse-to-patient assignment tools"};
  app.require_subcommand(1);
  int rc = 0;

  GenerateArgs gen;
  CLI::App* generate = app.add_subcommand(
      "generate", "Generate instances from a preset or config, or fill a "
                  "partial real-data instance");
  generate->add_option("--preset", gen.preset, "built-in scenario name")
      ->check(CLI::IsMember(iprnpa::preset_names()));
  generate->add_option("--config", gen.config_path, "generator config JSON");
  generate->add_option("--fill", gen.fill_path,
                       "partial instance to complete instead of generating");
  CLI::Option* gen_seed = generate->add_option("--seed", gen.seed, "base seed");
  generate->add_option("--count", gen.count, "number of instances (seed, seed+1, ...)");
  generate->add_option("--out", gen.out, "output .json file or directory")
      ->required();
  generate->callback([&] {
    gen.seed_given = gen_seed->count() > 0;
    rc = cmd_generate(gen);
  });

  RosterArgs ros;
  CLI::App* roster = app.add_subcommand(
      "roster", "Build a legal nurse roster for a horizon and coverage demand");
  roster->add_option("--days", ros.days, "horizon length in days")->required();
  roster->add_option("--per-shift", ros.per_shift,
                     "coverage as level:count pairs, e.g. 1:4,2:1")
      ->required();
  roster->add_option("--max-shifts", ros.max_shifts, "shift cap per nurse")
      ->required();
  roster->add_option("--nurses", ros.nurses,
                     "nurse count (omit to search for the smallest)");
  roster->add_option("--skill-mix", ros.skill_mix,
                     "shares per skill level, default 20,60,20");
  roster->add_option("--out", ros.out, "output file (default stdout)");
  roster->callback([&] { rc = cmd_roster(ros); });

  SolveArgs solve;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Run the greedy heuristic on an instance");
  solve_cmd->add_option("--instance", solve.instance, "instance JSON")->required();
  solve_cmd->add_option("--method", solve.method, "solution method (heuristic)");
  solve_cmd->add_option("--seed", solve.seed,
                        "reserved; the heuristic is deterministic");
  solve_cmd->add_option("--max-triples", solve.max_triples,
                        "cap candidate nurse triples per patient and room");
  solve_cmd->add_option("--out", solve.out, "solution JSON to write");
  solve_cmd->add_flag("--no-timestamps", solve.no_timestamps,
                      "print wall_ms as 0 for byte-identical output");
  solve_cmd->callback([&] { rc = cmd_solve(solve); });

  PairArgs eval;
  CLI::App* evaluate =
      app.add_subcommand("evaluate", "Score a solution against an instance");
  evaluate->add_option("--instance", eval.instance, "instance JSON")->required();
  evaluate->add_option("--solution", eval.solution, "solution JSON")->required();
  evaluate->callback([&] { rc = cmd_evaluate(eval); });

  ExportArgs exp;
  CLI::App* export_cmd = app.add_subcommand(
      "export", "Write the MIP, a submodel or the roster BIP as an LP file");
  export_cmd->add_option("--model", exp.model, "full, pra, npa or roster")
      ->required();
  export_cmd->add_option("--instance", exp.instance, "instance JSON");
  export_cmd->add_option("--rooms", exp.rooms, "fixed rooms solution (npa only)");
  export_cmd->add_option("--out", exp.out, "LP file (default stdout)");
  export_cmd->add_option("--days", exp.roster.days, "roster model: horizon");
  export_cmd->add_option("--per-shift", exp.roster.per_shift,
                         "roster model: coverage per shift");
  export_cmd->add_option("--max-shifts", exp.roster.max_shifts,
                         "roster model: shift cap per nurse");
  export_cmd->add_option("--nurses", exp.roster.nurses, "roster model: nurse count");
  export_cmd->add_option("--skill-mix", exp.roster.skill_mix,
                         "roster model: shares per level");
  export_cmd->callback([&] { rc = cmd_export(exp); });

  OracleArgs ora;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Exhaustively find the optimum of a tiny instance");
  oracle->add_option("--instance", ora.instance, "instance JSON")->required();
  oracle->add_option("--max-nodes", ora.max_nodes,
                     "refuse when the search-space estimate exceeds this");
  oracle->add_flag("--no-pruning", ora.no_pruning, "disable bound pruning");
  oracle->add_option("--audit-every", ora.audit_every,
                     "re-evaluate every k-th leaf through the evaluator");
  oracle->add_option("--out", ora.out, "solution JSON to write");
  oracle->callback([&] { rc = cmd_oracle(ora); });

  BenchArgs ben;
  CLI::App* bench = app.add_subcommand(
      "bench", "Time the heuristic over a preset x weeks x seeds grid");
  bench->add_option("--presets", ben.presets, "comma-separated preset names")
      ->required();
  bench->add_option("--weeks", ben.weeks, "comma-separated horizons, default 2,4");
  bench->add_option("--seeds", ben.seeds,
                    "comma-separated seeds or ranges, default 1-10");
  bench->add_option("--reps", ben.reps, "timing repetitions per run");
  bench->add_option("--jobs", ben.jobs, "worker threads (default: hardware)");
  bench->add_option("--oracle-max-nodes", ben.oracle_max_nodes,
                    "gap is reported when the search space fits this budget");
  bench->add_option("--out", ben.out, "output directory")->required();
  bench->add_flag("--no-timestamps", ben.no_timestamps,
                  "zero the wall-clock columns for byte-identical output");
  bench->callback([&] { rc = cmd_bench(ben); });

  PairArgs rep;
  CLI::App* report =
      app.add_subcommand("report", "Render a human-readable plan for a solution");
  report->add_option("--instance", rep.instance, "instance JSON")->required();
  report->add_option("--solution", rep.solution, "solution JSON")->required();
  report->add_option("--out", rep.out, "output file (default stdout)");
  report->callback([&] { rc = cmd_report(rep); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 4;
  } catch (const iprnpa::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const iprnpa::BudgetExceededError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return rc;
}
