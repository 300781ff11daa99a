#include <doctest.h>

#include <set>

#include "iprnpa/errors.hpp"
#include "iprnpa/roster.hpp"

using namespace iprnpa;

namespace {

RosterRequest three_nurse_day() {
  RosterRequest req;
  req.num_days = 1;
  req.nurses = {{"a", 2}, {"b", 2}, {"c", 2}};
  req.required = uniform_requirements(1, {0, 1, 0, 0});
  req.max_shifts = 5;
  return req;
}

}  // namespace

TEST_CASE("one day, one nurse per shift: three distinct assignments") {
  RosterRequest req = three_nurse_day();
  Roster roster = solve_roster(req);
  CHECK(verify_roster(req, roster).empty());

  int total = 0;
  std::set<int> covered;
  for (const std::set<int>& shifts : roster.shifts_of_nurse) {
    CHECK(shifts.size() <= 1);
    total += static_cast<int>(shifts.size());
    covered.insert(shifts.begin(), shifts.end());
  }
  CHECK(total == 3);
  CHECK(covered == std::set<int>{1, 2, 3});
}

TEST_CASE("solver output respects the night-rest rule") {
  RosterRequest req;
  req.num_days = 3;
  req.nurses = {{"a", 2}, {"b", 2}, {"c", 2}, {"d", 2}, {"e", 2}};
  req.required = uniform_requirements(3, {0, 1, 0, 0});
  req.max_shifts = 3;
  Roster roster = solve_roster(req);
  CHECK(verify_roster(req, roster).empty());

  ShiftCalendar cal(req.num_days);
  for (const std::set<int>& shifts : roster.shifts_of_nurse) {
    for (int s : shifts) {
      if (!cal.is_night(s) || s + 2 > cal.num_shifts()) continue;
      CHECK_FALSE(shifts.count(s + 1));  // next early
      CHECK_FALSE(shifts.count(s + 2));  // next late
    }
  }
}

TEST_CASE("the literal checker flags each staffing rule") {
  RosterRequest req = three_nurse_day();
  req.num_days = 2;
  req.required = uniform_requirements(2, {0, 1, 0, 0});
  req.max_shifts = 1;

  Roster two_per_day;
  two_per_day.shifts_of_nurse = {{1, 2}, {3}, {}};
  CHECK_FALSE(verify_roster(req, two_per_day).empty());

  Roster night_then_early;
  night_then_early.shifts_of_nurse = {{3, 4}, {1}, {2}};
  CHECK_FALSE(verify_roster(req, night_then_early).empty());

  Roster early_after_late;
  early_after_late.shifts_of_nurse = {{2, 4}, {1}, {3}};
  CHECK_FALSE(verify_roster(req, early_after_late).empty());

  Roster over_quota;  // max_shifts is 1 here
  over_quota.shifts_of_nurse = {{1, 6}, {2}, {3}};
  CHECK_FALSE(verify_roster(req, over_quota).empty());

  Roster shorthanded;
  shorthanded.shifts_of_nurse = {{1}, {2}, {}};
  CHECK_FALSE(verify_roster(req, shorthanded).empty());
}

TEST_CASE("skill coverage needs qualified nurses, not just bodies") {
  RosterRequest req;
  req.num_days = 1;
  req.nurses = {{"lo1", 1}, {"lo2", 1}, {"hi", 3}};
  req.required = uniform_requirements(1, {0, 1, 1, 0});  // one of them skill >= 2

  req.max_shifts = 5;
  Roster bad;
  bad.shifts_of_nurse = {{1}, {1}, {}};  // two trainees, no senior
  CHECK_FALSE(verify_roster(req, bad).empty());

  Roster good;
  good.shifts_of_nurse = {{1}, {}, {1}};
  // shifts 2 and 3 remain uncovered in this hand roster
  CHECK_FALSE(verify_roster(req, good).empty());
  req.required = uniform_requirements(1, {0, 0, 0, 0});
  req.required[1] = {0, 1, 1, 0};
  CHECK(verify_roster(req, good).empty());
}

TEST_CASE("impossible coverage is refused, not relaxed") {
  RosterRequest req;
  req.num_days = 1;
  req.nurses = {{"a", 1}};
  req.required = uniform_requirements(1, {0, 2, 0, 0});
  req.max_shifts = 5;
  CHECK_THROWS_AS(solve_roster(req), InfeasibleError);

  // a level-3 demand with no level-3 nurse can never be met
  req.nurses = {{"a", 1}, {"b", 2}, {"c", 2}};
  req.required = uniform_requirements(1, {0, 0, 0, 1});
  CHECK_THROWS_AS(solve_roster(req), InfeasibleError);
}

TEST_CASE("the node budget stops runaway searches") {
  RosterRequest req = three_nurse_day();
  req.node_budget = 1;
  CHECK_THROWS_AS(solve_roster(req), BudgetExceededError);
}

TEST_CASE("zero requirements give an empty roster") {
  RosterRequest req;
  req.num_days = 2;
  req.nurses = {{"a", 2}};
  req.required = uniform_requirements(2, {0, 0, 0, 0});
  req.max_shifts = 5;
  Roster roster = solve_roster(req);
  CHECK(verify_roster(req, roster).empty());
  for (const std::set<int>& shifts : roster.shifts_of_nurse) CHECK(shifts.empty());

  NurseCountResult none = automatic_nurse_count(2, req.required, 5, {0, 0.2, 0.6, 0.2});
  CHECK(none.count == 0);
  CHECK(none.nurses.empty());
}

TEST_CASE("apportionment splits ten nurses as 2/6/2") {
  std::array<int, 4> split = apportion_skills(10, {0, 0.2, 0.6, 0.2});
  CHECK(split == std::array<int, 4>{0, 2, 6, 2});
  // remainders go to the lower level on ties
  CHECK(apportion_skills(3, {0, 0.5, 0.0, 0.5}) == std::array<int, 4>{0, 2, 0, 1});
  CHECK(apportion_skills(0, {0, 0.2, 0.6, 0.2}) == std::array<int, 4>{0, 0, 0, 0});
}

TEST_CASE("automatic sizing scans up from the work-conservation bound") {
  // 42 required slots at 5 shifts each bound the count at 9; the rest rules
  // push the first feasible roster to 12 (frozen deterministic value)
  auto required = uniform_requirements(7, {0, 2, 0, 0});
  NurseCountResult res = automatic_nurse_count(7, required, 5, {0, 0.2, 0.6, 0.2});
  CHECK(res.count >= 9);
  CHECK(res.count == 12);
  CHECK(static_cast<int>(res.nurses.size()) == res.count);

  RosterRequest req;
  req.num_days = 7;
  req.nurses = res.nurses;
  req.required = required;
  req.max_shifts = 5;
  CHECK(verify_roster(req, res.roster).empty());
}
