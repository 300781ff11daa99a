#include <doctest.h>

#include <set>

#include "iprnpa/errors.hpp"
#include "iprnpa/evaluator.hpp"
#include "support.hpp"

using namespace iprnpa;
using namespace testsupport;

namespace {

void put_room(Solution& sol, const std::string& p, int day, const std::string& r) {
  sol.room_of[{p, day}] = r;
}

void put_nurse(Solution& sol, const std::string& p, int shift, const std::string& n) {
  sol.nurse_of[{p, shift}] = n;
}

// Full-stay assignment into one room with the full_cover("n") nurses.
Solution cover_all(const Instance& inst, const std::string& room) {
  ShiftCalendar cal = inst.calendar();
  Solution sol;
  for (const Patient& p : inst.patients) {
    for (int d = p.first_day(cal); d <= p.last_day(cal); ++d) put_room(sol, p.id, d, room);
    for (int s = p.first_shift(); s <= p.last_shift(cal); ++s) {
      const char* slot = cal.is_early(s) ? "ne" : cal.is_late(s) ? "nl" : "nn";
      put_nurse(sol, p.id, s, slot);
    }
  }
  return sol;
}

}  // namespace

TEST_CASE("full assignment of a single patient is feasible") {
  WardBuilder b(2);
  b.room("r1", 2).full_cover("n");
  b.patient(make_patient("p1", 'F', 52, 1, 6, 2));
  Instance inst = b.build();
  Solution sol = cover_all(inst, "r1");
  CHECK(check_feasibility(inst, sol).feasible());
}

TEST_CASE("feasibility violations carry the rule that broke") {
  WardBuilder b(2);
  b.room("r1", 1).room("r2", 1).full_cover("n");
  b.patient(make_patient("p1", 'F', 52, 1, 6, 2));
  b.patient(make_patient("p2", 'M', 40, 1, 6, 2));
  Instance inst = b.build();

  Solution sol = cover_all(inst, "r1");  // both in the 1-bed room
  FeasibilityReport rep = check_feasibility(inst, sol);
  REQUIRE_FALSE(rep.feasible());
  bool capacity = false;
  for (const FeasibilityViolation& v : rep.violations) {
    if (v.rule == "room-capacity") capacity = true;
  }
  CHECK(capacity);

  Solution missing = cover_all(inst, "r1");
  for (auto it = missing.room_of.begin(); it != missing.room_of.end();) {
    it = it->first.first == "p2" ? missing.room_of.erase(it) : std::next(it);
  }
  put_room(missing, "p2", 1, "r2");
  put_room(missing, "p2", 2, "r2");
  rep = check_feasibility(inst, missing);
  CHECK(rep.feasible());

  Solution unrostered = missing;
  put_nurse(unrostered, "p1", 1, "nl");  // late nurse on an early shift
  rep = check_feasibility(inst, unrostered);
  REQUIRE_FALSE(rep.feasible());
  CHECK(rep.violations[0].rule == "nurse-roster");

  Solution outside = missing;
  put_nurse(outside, "p1", 7, "ne");  // no such shift on a 2-day horizon
  CHECK_THROWS_AS(index_solution(build_index(inst), outside), StructuralError);
}

TEST_CASE("transfers count room changes across nights") {
  WardBuilder b(2);
  b.room("ra", 2).room("rb", 2).full_cover("n");
  b.patient(make_patient("p1", 'F', 52, 1, 6, 2));
  Instance inst = b.build();

  Solution stay = cover_all(inst, "ra");
  CHECK(eval_transfers(inst, stay) == 0);

  Solution moved = stay;
  put_room(moved, "p1", 2, "rb");
  CHECK(eval_transfers(inst, moved) == 1);
}

TEST_CASE("a move away from the pre-horizon room is a transfer") {
  WardBuilder b(2);
  b.room("ra", 2).room("rb", 2).full_cover("n");
  Patient p = make_patient("p1", 'F', 52, 0, 6, 2);
  p.prev_room = "ra";
  b.patient(p);
  Instance inst = b.build();

  Solution sol = cover_all(inst, "rb");  // rb on both days
  CHECK(eval_transfers(inst, sol) == 1);

  Solution home = cover_all(inst, "ra");
  CHECK(eval_transfers(inst, home) == 0);
}

TEST_CASE("inconvenience is the agegroup spread per room and day") {
  WardBuilder b(1);
  b.room("r1", 2).full_cover("n");
  b.patient(make_patient("p1", 'F', 35, 1, 3, 1));  // agegroup 3
  b.patient(make_patient("p2", 'F', 71, 1, 3, 1));  // agegroup 7
  Instance inst = b.build();
  Solution sol = cover_all(inst, "r1");
  CHECK(eval_inconvenience(inst, sol) == 4);
}

TEST_CASE("gender mixing is counted per room-day") {
  WardBuilder b(3);
  b.room("r1", 2).full_cover("n");
  b.patient(make_patient("p1", 'F', 35, 1, 9, 3));
  b.patient(make_patient("p2", 'F', 42, 1, 9, 3));
  Instance inst = b.build();
  CHECK(eval_gender_mix(inst, cover_all(inst, "r1")) == 0);

  inst.patients[1].gender = 'M';
  CHECK(eval_gender_mix(inst, cover_all(inst, "r1")) == 3);
}

TEST_CASE("equipment mismatches accumulate per day of the stay") {
  WardBuilder b(2);
  b.room("r1", 2, {"monitor"}).room("r2", 2).full_cover("n");
  Patient p = make_patient("p1", 'F', 35, 1, 6, 2);
  p.equipment_req[1] = {"monitor"};
  p.equipment_req[4] = {"monitor"};
  b.patient(p);
  Instance inst = b.build();

  CHECK(eval_equipment(inst, cover_all(inst, "r1")) == 0);
  CHECK(eval_equipment(inst, cover_all(inst, "r2")) == 2);
}

TEST_CASE("continuity counts distinct new nurses over the stay") {
  WardBuilder b(2);
  ShiftCalendar cal(2);
  b.room("r1", 2);
  b.nurse(make_nurse("n1", 3, {1, 4}));
  b.nurse(make_nurse("n2", 3, {2, 5}));
  b.nurse(make_nurse("n3", 3, {3}));
  b.nurse(make_nurse("n4", 3, {6}));
  b.patient(make_patient("p1", 'F', 35, 1, 6, 2));
  Instance inst = b.build();

  Solution sol;
  put_room(sol, "p1", 1, "r1");
  put_room(sol, "p1", 2, "r1");
  put_nurse(sol, "p1", 1, "n1");
  put_nurse(sol, "p1", 2, "n2");
  put_nurse(sol, "p1", 3, "n3");
  put_nurse(sol, "p1", 4, "n1");
  put_nurse(sol, "p1", 5, "n2");
  put_nurse(sol, "p1", 6, "n4");
  // day sets {n1,n2,n3} and {n1,n2,n4}: four distinct nurses
  CHECK(eval_continuity(inst, sol) == 4);

  inst.patients[0].prev_nurses = {"n1", "n2"};
  CHECK(eval_continuity(inst, sol) == 2);
}

TEST_CASE("skill violations require a stated demand of 2 or higher") {
  WardBuilder b(1);
  b.room("r1", 2);
  b.nurse(make_nurse("hi", 3, {1}));
  b.nurse(make_nurse("lo", 1, {1}));
  b.nurse(make_nurse("nl", 1, {2}));
  b.nurse(make_nurse("nn", 1, {3}));
  b.patient(make_patient("p1", 'F', 35, 1, 3, 1, 1.0, 2));
  Instance inst = b.build();

  Solution sol;
  put_room(sol, "p1", 1, "r1");
  put_nurse(sol, "p1", 2, "nl");
  put_nurse(sol, "p1", 3, "nn");

  put_nurse(sol, "p1", 1, "hi");
  // the late shift also demands skill 2 and nl has skill 1
  CHECK(eval_skill_violations(inst, sol) == 1);

  put_nurse(sol, "p1", 1, "lo");
  CHECK(eval_skill_violations(inst, sol) == 2);

  // a trainee-level demand never counts, whoever serves it
  inst.patients[0].skillreq[1] = 1;
  inst.patients[0].skillreq[2] = 1;
  CHECK(eval_skill_violations(inst, sol) == 0);
}

TEST_CASE("load violations sum the per-shift excess") {
  WardBuilder b(2);
  b.room("r1", 2).full_cover("n");
  Patient p = make_patient("p1", 'F', 35, 1, 6, 2);
  p.workload[1] = 9.0;
  b.patient(p);
  Instance inst = b.build();
  Solution sol = cover_all(inst, "r1");
  CHECK(eval_load_violations(inst, sol) == 0.0);

  inst.patients[0].workload[1] = 10.5;   // excess 0.5 against maxload 10
  inst.patients[0].workload[4] = 11.25;  // excess 1.25
  CHECK(eval_load_violations(inst, sol) == doctest::Approx(1.75).epsilon(1e-12));
}

TEST_CASE("fairness compares relative loads pairwise") {
  WardBuilder b(1);
  b.room("r1", 2);
  b.nurse(make_nurse("a", 3, {1}, 10.0));
  b.nurse(make_nurse("b", 3, {1}, 10.0));
  Patient p1 = make_patient("p1", 'F', 35, 1, 3, 1);
  Patient p2 = make_patient("p2", 'F', 40, 1, 3, 1);
  p1.workload[1] = 10.0;
  p2.workload[1] = 5.0;
  b.patient(p1).patient(p2);
  Instance inst = b.build();

  Solution sol;
  put_room(sol, "p1", 1, "r1");
  put_room(sol, "p2", 1, "r1");
  put_nurse(sol, "p1", 1, "a");  // relload 1.0
  put_nurse(sol, "p2", 1, "b");  // relload 0.5
  auto [per_shift, overall] = eval_fairness(inst, sol);
  CHECK(per_shift == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(overall == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("nurses per room counts room visits per shift") {
  WardBuilder b(1);
  b.room("r1", 2);
  b.nurse(make_nurse("x", 3, {1}));
  b.nurse(make_nurse("y", 3, {1}));
  b.patient(make_patient("p1", 'F', 35, 1, 3, 1));
  b.patient(make_patient("p2", 'F', 40, 1, 3, 1));
  Instance inst = b.build();

  Solution sol;
  put_room(sol, "p1", 1, "r1");
  put_room(sol, "p2", 1, "r1");
  put_nurse(sol, "p1", 1, "x");
  put_nurse(sol, "p2", 1, "x");
  CHECK(eval_nurses_per_room(inst, sol) == 1);

  put_nurse(sol, "p2", 1, "y");
  CHECK(eval_nurses_per_room(inst, sol) == 2);
}

TEST_CASE("one nurse all day gives three room visits") {
  WardBuilder b(1);
  b.room("r1", 1);
  b.nurse(make_nurse("x", 3, {1, 2, 3}));
  b.patient(make_patient("p1", 'F', 35, 1, 3, 1));
  Instance inst = b.build();

  Solution sol;
  put_room(sol, "p1", 1, "r1");
  for (int s = 1; s <= 3; ++s) put_nurse(sol, "p1", s, "x");
  CHECK(eval_nurses_per_room(inst, sol) == 3);
}

TEST_CASE("walking combines tour pairs and station spokes") {
  WardBuilder b(1);
  b.room("r1", 1).room("r2", 1).full_cover("n");
  b.dist("r1", "r2", 10.0).star("r1", 5.0).star("r2", 7.0);
  b.patient(make_patient("p1", 'F', 35, 1, 3, 1));
  b.patient(make_patient("p2", 'F', 40, 1, 3, 1));
  Instance inst = b.build();
  // price only the early shift so the hand value stands alone
  for (int s = 1; s <= 3; ++s) {
    inst.walk_weights.circular[s] = s == 1 ? 2.0 : 0.0;
    inst.walk_weights.star[s] = s == 1 ? 1.0 : 0.0;
  }

  Solution sol;
  put_room(sol, "p1", 1, "r1");
  put_room(sol, "p2", 1, "r2");
  for (int s = 1; s <= 3; ++s) {
    const char* slot = s == 1 ? "ne" : s == 2 ? "nl" : "nn";
    put_nurse(sol, "p1", s, slot);
    put_nurse(sol, "p2", s, slot);
  }
  // ordered pairs double the 10, halved back to 10, times 2; spokes 5 + 7
  CHECK(eval_walking(inst, sol) == doctest::Approx(32.0).epsilon(1e-12));

  Solution nobody;
  put_room(nobody, "p1", 1, "r1");
  put_room(nobody, "p2", 1, "r2");
  CHECK(eval_walking(inst, nobody) == 0.0);
}

TEST_CASE("empty ward evaluates to an all-zero breakdown") {
  WardBuilder b(2);
  b.room("r1", 2).full_cover("n");
  Instance inst = b.build();
  ObjectiveBreakdown bd = eval_total(inst, Solution{});
  CHECK(bd.transfers == 0);
  CHECK(bd.inconvenience == 0);
  CHECK(bd.gender_mix == 0);
  CHECK(bd.equipment_viol == 0);
  CHECK(bd.continuity == 0);
  CHECK(bd.skill_viol == 0);
  CHECK(bd.load_viol == 0.0);
  CHECK(bd.fairness_shift == 0.0);
  CHECK(bd.fairness_overall == 0.0);
  CHECK(bd.nurses_per_room == 0);
  CHECK(bd.walking == 0.0);
  CHECK(bd.weighted_total == 0.0);
}

TEST_CASE("a lone transfer prices at weight 11") {
  WardBuilder b(2);
  b.room("ra", 1).room("rb", 1).full_cover("n");
  b.walk(0.0, 0.0);
  Patient p = make_patient("p1", 'F', 52, 1, 6, 2);
  p.prev_nurses = {"ne", "nl", "nn"};  // familiar staff, no continuity cost
  b.patient(p);
  Instance inst = b.build();

  Solution sol = cover_all(inst, "ra");
  put_room(sol, "p1", 2, "rb");
  ObjectiveBreakdown bd = eval_total(inst, sol);
  CHECK(bd.transfers == 1);
  // the room visits are the only other term a served patient can't avoid
  CHECK(bd.nurses_per_room == 6);
  CHECK(bd.weighted_total == doctest::Approx(11.0 + 2.0 * 6.0).epsilon(1e-12));

  // a breakdown holding nothing but the transfer prices at exactly 11
  ObjectiveBreakdown lone;
  lone.transfers = 1;
  CHECK(weighted_total(lone, inst.weights) == 11.0);
}

TEST_CASE("one mixed room-day plus one equipment miss price at 10") {
  WardBuilder b(1);
  b.room("r1", 2, {"monitor"}).room("r2", 2).full_cover("n");
  b.walk(0.0, 0.0);
  Patient p1 = make_patient("p1", 'F', 35, 1, 3, 1);
  Patient p2 = make_patient("p2", 'M', 38, 1, 3, 1);
  p1.equipment_req[1] = {"monitor"};
  p1.prev_nurses = {"ne", "nl", "nn"};
  p2.prev_nurses = {"ne", "nl", "nn"};
  b.patient(p1).patient(p2);
  Instance inst = b.build();

  Solution sol = cover_all(inst, "r2");  // mixed genders, monitor missing
  ObjectiveBreakdown bd = eval_total(inst, sol);
  CHECK(bd.gender_mix == 1);
  CHECK(bd.equipment_viol == 1);
  CHECK(bd.nurses_per_room == 3);  // one shared room, three shifts
  CHECK(bd.weighted_total == doctest::Approx(10.0 + 2.0 * 3.0).epsilon(1e-12));

  ObjectiveBreakdown pair;
  pair.gender_mix = 1;
  pair.equipment_viol = 1;
  CHECK(weighted_total(pair, inst.weights) == 10.0);
}

TEST_CASE("eval_total refuses infeasible solutions") {
  WardBuilder b(1);
  b.room("r1", 1).full_cover("n");
  b.patient(make_patient("p1", 'F', 35, 1, 3, 1));
  Instance inst = b.build();
  CHECK_THROWS_AS(eval_total(inst, Solution{}), InfeasibleError);
}

TEST_CASE("default objective weights match the published tuple") {
  ObjectiveWeights w;
  CHECK(w.transfers == 11.0);
  CHECK(w.inconvenience == 1.0);
  CHECK(w.gender == 5.0);
  CHECK(w.equipment == 5.0);
  CHECK(w.continuity == 1.0);
  CHECK(w.skill_load_fair == 5.0);
  CHECK(w.nurses_per_room == 2.0);
  CHECK(w.walking == 0.05);
  CHECK(w.heterogeneity == 1.0);
}

TEST_CASE("weighted total groups the four staffing terms under one weight") {
  ObjectiveBreakdown bd;
  bd.skill_viol = 2;
  bd.load_viol = 0.5;
  bd.fairness_shift = 0.25;
  bd.fairness_overall = 0.25;
  bd.transfers = 1;
  ObjectiveWeights w;
  CHECK(weighted_total(bd, w) == doctest::Approx(11.0 + 5.0 * 3.0).epsilon(1e-12));
}
