#ifndef IPRNPA_ROSTER_HPP
#define IPRNPA_ROSTER_HPP

#include <array>
#include <set>
#include <string>
#include <vector>

#include "iprnpa/calendar.hpp"

namespace iprnpa {

// Staffing rules, per nurse and planning horizon:
//  - at most one shift per day,
//  - after a night shift only another night shift or a day off,
//  - no early shift directly after a late shift,
//  - at most max_shifts shifts in total.
// Coverage rules, per shift: at least required[s][l] nurses of skill >= l
// for every level l, and at least sum_l required[s][l] nurses in total.

struct RosterNurse {
  std::string id;
  int skill = 1;  // 1..3
};

struct RosterRequest {
  int num_days = 0;
  std::vector<RosterNurse> nurses;
  // required[s][l], s in 1..3*num_days, l in 1..3; index 0 rows unused.
  std::vector<std::array<int, 4>> required;
  int max_shifts = 0;
  long node_budget = 2000000;  // backtracking picks before giving up
};

struct Roster {
  std::vector<std::set<int>> shifts_of_nurse;  // by nurse index
};

// Uniform requirements helper: the same per-level counts on every shift.
std::vector<std::array<int, 4>> uniform_requirements(int num_days,
                                                     const std::array<int, 4>& per_shift);

// Day-by-day greedy with backtracking, nights first since the night rule
// couples consecutive days hardest. Deterministic. Throws InfeasibleError
// when coverage is impossible, BudgetExceededError when the search exceeds
// node_budget.
Roster solve_roster(const RosterRequest& req);

// Literal check of the staffing and coverage rules above. Returns one
// message per violation, empty when the roster is legal. Independent of the
// solver on purpose.
std::vector<std::string> verify_roster(const RosterRequest& req, const Roster& roster);

// Splits count nurses over skill levels proportionally to mix (largest
// remainder, ties to the lower level). mix must sum to a positive value.
std::array<int, 4> apportion_skills(int count, const std::array<double, 4>& mix);

struct NurseCountResult {
  int count = 0;
  std::vector<RosterNurse> nurses;
  Roster roster;
};

// Smallest nurse count with a feasible roster, scanning up from the
// work-conservation bound ceil(total required slots / max_shifts). Skills
// are apportioned by mix, ids are n1..nK in skill order. Gives up (throws
// InfeasibleError) beyond 10x the lower bound.
NurseCountResult automatic_nurse_count(int num_days,
                                       const std::vector<std::array<int, 4>>& required,
                                       int max_shifts,
                                       const std::array<double, 4>& skill_mix);

}  // namespace iprnpa

#endif
