#ifndef IPRNPA_ORACLE_HPP
#define IPRNPA_ORACLE_HPP

#include <string>
#include <vector>

#include "iprnpa/evaluator.hpp"
#include "iprnpa/instance.hpp"
#include "iprnpa/model_file.hpp"

namespace iprnpa {

struct OracleLimits {
  // Upfront cap on |rooms|^(patient-days) x prod over patient-shifts of
  // the rostered-nurse count. Exceeding it refuses the search outright; a
  // truncated enumeration is never reported as an optimum.
  double max_nodes = 1e7;
  // Skip subtrees whose committed nonnegative cost already matches the
  // incumbent. The reported optimum is identical with or without.
  bool enable_pruning = true;
  // If > 0, every k-th leaf is re-evaluated through eval_total and the
  // largest |incremental - recomputed| difference is reported.
  long audit_leaves_every = 0;
};

struct OracleResult {
  Solution solution;
  ObjectiveBreakdown breakdown;
  double estimated_leaves = 0.0;
  long long leaves_visited = 0;
  double max_leaf_divergence = 0.0;  // only meaningful with audit_leaves_every
};

// Exhaustive minimization of weighted_total over all feasible room and
// nurse assignments (heterogeneity is guidance, not objective, and is
// excluded). Depth-first per day: room decisions in patient order, then
// nurse decisions per shift, candidates in input order; ties keep the
// first optimum found, i.e. the lexicographically smallest decision
// vector. Throws BudgetExceededError when the search-space estimate is
// over limits.max_nodes and InfeasibleError when no assignment exists.
OracleResult enumerate_optimal(const Instance& inst, const OracleLimits& limits = {});

// The unique completion of sol where every auxiliary variable sits on the
// bound its rows push it to (transfer and mixing indicators, age extremes,
// violation maxima, room-visit products, walking distances). Position i
// holds the value of model.variables()[i]. Requires the full integrated
// model of the same instance; missing or leftover names are structural
// errors.
std::vector<double> tight_point(const ModelFile& model, const Instance& inst,
                                const Solution& sol);

struct MipPointReport {
  bool feasible = true;
  double objective = 0.0;
  std::vector<std::string> violated_rows;  // names of rows off by > tol
};

// Evaluates the tight completion of sol against every row of the model and
// the objective. A feasible solution must come back feasible with the
// objective equal to eval_total's weighted_total.
MipPointReport check_mip_point(const ModelFile& model, const Instance& inst,
                               const Solution& sol, double tol = 1e-6);

}  // namespace iprnpa

#endif
