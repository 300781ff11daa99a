#include <doctest.h>

#include <string>

#include "iprnpa/report.hpp"
#include "support.hpp"

using namespace iprnpa;
using namespace testsupport;

TEST_CASE("breakdown json round-trips bytes and values") {
  ObjectiveBreakdown b;
  b.transfers = 2;
  b.inconvenience = 3;
  b.gender_mix = 1;
  b.equipment_viol = 1;
  b.continuity = 7;
  b.skill_viol = 1;
  b.load_viol = 0.75;
  b.fairness_shift = 1.25;
  b.fairness_overall = 2.5;
  b.nurses_per_room = 9;
  b.walking = 123.5;
  b.weighted_total = 99.875;

  std::string text = breakdown_to_json(b);
  ObjectiveBreakdown back = parse_breakdown_json(text);
  CHECK(breakdown_to_json(back) == text);
  CHECK(back.transfers == 2);
  CHECK(back.load_viol == 0.75);
  CHECK(back.weighted_total == 99.875);
}

TEST_CASE("breakdown table lists every objective row and the total") {
  ObjectiveBreakdown b;
  b.transfers = 1;
  b.weighted_total = 11.0;
  std::string table = render_breakdown(b, ObjectiveWeights{});
  for (const char* label :
       {"Transfers", "Inconvenience", "Gender mixing", "Equipment violation",
        "Continuity of care", "Skill & workload", "Nurses per room",
        "Walking distances", "total"}) {
    CHECK(table.find(label) != std::string::npos);
  }
  CHECK(table.find("11.0000") != std::string::npos);
}

TEST_CASE("plans chart rooms day by day") {
  WardBuilder b(1);
  b.room("ra", 2).room("rb", 1).full_cover("n");
  b.patient(make_patient("p1", 'F', 30, 1, 3, 1));
  b.patient(make_patient("p2", 'F', 35, 1, 3, 1));
  Instance inst = b.build();

  Solution sol;
  sol.room_of[{"p1", 1}] = "ra";
  sol.room_of[{"p2", 1}] = "ra";
  for (int s = 1; s <= 3; ++s) {
    const char* slot = s == 1 ? "ne" : s == 2 ? "nl" : "nn";
    sol.nurse_of[{"p1", s}] = slot;
    sol.nurse_of[{"p2", s}] = slot;
  }

  std::string plan = render_plan(inst, sol);
  CHECK(plan.find("ra: [p1, p2]") != std::string::npos);
  CHECK(plan.find("rb: []") != std::string::npos);
  CHECK(plan.find("day 1") != std::string::npos);
  CHECK(plan.find("objective") != std::string::npos);
}

TEST_CASE("overloaded nurses are flagged with the excess") {
  WardBuilder b(1);
  b.room("ra", 2).full_cover("n");
  Patient p = make_patient("p1", 'F', 30, 1, 3, 1);
  p.workload[1] = 11.2;  // maxload is 10
  b.patient(p);
  Instance inst = b.build();

  Solution sol;
  sol.room_of[{"p1", 1}] = "ra";
  sol.nurse_of[{"p1", 1}] = "ne";
  sol.nurse_of[{"p1", 2}] = "nl";
  sol.nurse_of[{"p1", 3}] = "nn";

  std::string plan = render_plan(inst, sol);
  CHECK(plan.find("11.20/10") != std::string::npos);
  CHECK(plan.find("(over by 1.20)") != std::string::npos);
}

TEST_CASE("infeasible pairs render the feasibility report") {
  WardBuilder b(1);
  b.room("ra", 1).full_cover("n");
  b.patient(make_patient("p1", 'F', 30, 1, 3, 1));
  Instance inst = b.build();

  std::string plan = render_plan(inst, Solution{});
  CHECK(plan.find("room-assignment") != std::string::npos);
}
