#include <doctest.h>

#include "iprnpa/errors.hpp"
#include "iprnpa/instance.hpp"
#include "iprnpa/json_io.hpp"
#include "iprnpa/validate.hpp"
#include "support.hpp"

using namespace iprnpa;
using namespace testsupport;

namespace {

Instance sample_ward() {
  WardBuilder b(2);
  b.room("r1", 2, {"monitor"}).room("r2", 1);
  b.full_cover("n");
  b.patient(make_patient("p1", 'F', 34, 1, 6, 2, 2.5, 2));
  Instance inst = b.build();
  inst.patients[0].equipment_req[4] = {"monitor"};
  inst.patients[0].prev_nurses = {"ne"};
  return inst;
}

}  // namespace

TEST_CASE("instance json round-trips values and bytes") {
  Instance inst = sample_ward();
  require_valid(inst);

  std::string text = instance_to_json(inst);
  Instance back = parse_instance_json(text);
  CHECK(back == inst);

  // serialization is canonical, so parse-then-write is the identity on bytes
  CHECK(instance_to_json(back) == text);
  CHECK(instance_to_json(inst) == text);
}

TEST_CASE("solution json round-trips") {
  Solution sol;
  sol.instance_ref = "ward.json";
  sol.room_of[{"p1", 1}] = "r1";
  sol.room_of[{"p1", 2}] = "r2";
  sol.nurse_of[{"p1", 1}] = "ne";
  sol.nurse_of[{"p1", 4}] = "ne";

  std::string text = solution_to_json(sol);
  Solution back = parse_solution_json(text);
  CHECK(back == sol);
  CHECK(solution_to_json(back) == text);
}

TEST_CASE("malformed instance json is refused") {
  CHECK_THROWS_AS(parse_instance_json("not json at all"), StructuralError);
  CHECK_THROWS_AS(parse_instance_json("[]"), StructuralError);
  CHECK_THROWS_AS(parse_instance_json("{}"), StructuralError);
  // wrong type on a required field
  CHECK_THROWS_AS(parse_instance_json(R"({"schema_version":1,"num_days":"two"})"),
                  StructuralError);
  CHECK_THROWS_AS(parse_solution_json(R"({"room_of":5})"), StructuralError);
  CHECK_THROWS_AS(load_instance("/nonexistent/path.json"), StructuralError);
}

TEST_CASE("identifiers must stay variable-name safe") {
  CHECK(valid_identifier("r1"));
  CHECK(valid_identifier("nurse_2.b"));
  CHECK(valid_identifier("_x"));
  CHECK_FALSE(valid_identifier(""));
  CHECK_FALSE(valid_identifier("1abc"));
  CHECK_FALSE(valid_identifier("a b"));
  CHECK_FALSE(valid_identifier("a[b]"));
}

TEST_CASE("distance matrix is symmetric and strict about missing pairs") {
  DistanceMatrix m;
  m.set_between_rooms("r2", "r1", 7.5);
  m.set_from_additional("station", "r1", 3.0);

  CHECK(m.between_rooms("r1", "r2") == 7.5);
  CHECK(m.between_rooms("r2", "r1") == 7.5);
  CHECK(m.from_additional("station", "r1") == 3.0);
  CHECK(m.has_between_rooms("r1", "r2"));
  CHECK_FALSE(m.has_between_rooms("r1", "r3"));
  CHECK_THROWS_AS(m.between_rooms("r1", "r3"), StructuralError);
  CHECK_THROWS_AS(m.from_additional("pharmacy", "r1"), StructuralError);
}

TEST_CASE("total beds sums room capacities") {
  Instance inst = sample_ward();
  CHECK(inst.total_beds() == 3);
}

TEST_CASE("patient stay helpers") {
  ShiftCalendar cal(2);
  Patient p = make_patient("p", 'M', 47, 0, 3, 2);
  p.prev_room = "r1";
  CHECK(p.first_shift() == 1);
  CHECK(p.last_shift(cal) == 3);
  CHECK(p.in_ward(0));
  CHECK(p.in_ward(3));
  CHECK_FALSE(p.in_ward(4));
  CHECK(p.agegroup() == 4);

  Patient q = make_patient("q", 'F', 60, 4, 7, 2);
  CHECK(q.first_day(cal) == 2);
  CHECK(q.last_day(cal) == 2);
  CHECK(q.last_shift(cal) == 6);  // dishift beyond the horizon clamps
}
