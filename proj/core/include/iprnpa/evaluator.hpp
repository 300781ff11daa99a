#ifndef IPRNPA_EVALUATOR_HPP
#define IPRNPA_EVALUATOR_HPP

#include <string>
#include <utility>
#include <vector>

#include "iprnpa/index.hpp"
#include "iprnpa/instance.hpp"

namespace iprnpa {

// Raw objective terms plus the weighted sum. weighted_total combines the
// four skill/load/fairness terms under the single skill_load_fair weight;
// heterogeneity is a heuristic-only guidance term and never shows up here.
struct ObjectiveBreakdown {
  int transfers = 0;
  int inconvenience = 0;
  int gender_mix = 0;
  int equipment_viol = 0;
  int continuity = 0;
  int skill_viol = 0;
  double load_viol = 0.0;
  double fairness_shift = 0.0;
  double fairness_overall = 0.0;
  int nurses_per_room = 0;
  double walking = 0.0;
  double weighted_total = 0.0;
};

double weighted_total(const ObjectiveBreakdown& b, const ObjectiveWeights& w);

struct FeasibilityViolation {
  std::string rule;    // room-assignment, room-capacity, nurse-assignment, nurse-roster
  std::string detail;
};

struct FeasibilityReport {
  std::vector<FeasibilityViolation> violations;
  bool feasible() const { return violations.empty(); }
  std::string to_string() const;
};

// Hard constraints only: every in-ward (patient, day) has exactly one room,
// capacities hold, every in-ward (patient, shift) has exactly one nurse who
// is rostered then, and nothing is assigned outside the stay.
FeasibilityReport check_feasibility(const Instance& inst, const Solution& sol);

// The individual objective terms. All assume a feasible solution; missing
// assignments are skipped rather than counted.
int eval_transfers(const Instance& inst, const Solution& sol);
int eval_inconvenience(const Instance& inst, const Solution& sol);
int eval_gender_mix(const Instance& inst, const Solution& sol);
int eval_equipment(const Instance& inst, const Solution& sol);
int eval_continuity(const Instance& inst, const Solution& sol);
int eval_skill_violations(const Instance& inst, const Solution& sol);
double eval_load_violations(const Instance& inst, const Solution& sol);
// Returns (per-shift, overall) fairness sums over ordered nurse pairs.
std::pair<double, double> eval_fairness(const Instance& inst, const Solution& sol);
int eval_nurses_per_room(const Instance& inst, const Solution& sol);
double eval_walking(const Instance& inst, const Solution& sol);

// Evaluates everything. Throws InfeasibleError carrying the feasibility
// report when the solution violates a hard constraint.
ObjectiveBreakdown eval_total(const Instance& inst, const Solution& sol);

namespace detail {

// Index-space implementations used by eval_total, the oracle and tests that
// already hold an index.
FeasibilityReport check_feasibility(const InstanceIndex& idx, const IndexedSolution& s);
ObjectiveBreakdown eval_breakdown(const InstanceIndex& idx, const IndexedSolution& s);
int transfers(const InstanceIndex& idx, const IndexedSolution& s);
int inconvenience(const InstanceIndex& idx, const IndexedSolution& s);
int gender_mix(const InstanceIndex& idx, const IndexedSolution& s);
int equipment(const InstanceIndex& idx, const IndexedSolution& s);
int continuity(const InstanceIndex& idx, const IndexedSolution& s);
int skill_violations(const InstanceIndex& idx, const IndexedSolution& s);
double load_violations(const InstanceIndex& idx, const IndexedSolution& s);
std::pair<double, double> fairness(const InstanceIndex& idx, const IndexedSolution& s);
int nurses_per_room(const InstanceIndex& idx, const IndexedSolution& s);
double walking(const InstanceIndex& idx, const IndexedSolution& s);

// relload of every nurse on shift s (0 when off duty or unloaded).
std::vector<double> shift_relloads(const InstanceIndex& idx, const IndexedSolution& s,
                                   int shift);

}  // namespace detail

}  // namespace iprnpa

#endif
