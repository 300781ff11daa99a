#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "iprnpa/errors.hpp"
#include "iprnpa/instgen.hpp"
#include "iprnpa/validate.hpp"
#include "support.hpp"

using namespace iprnpa;
using namespace testsupport;

TEST_CASE("presets cover the benchmark scenarios") {
  std::vector<std::string> names = preset_names();
  for (const char* expected : {"30beds-var1", "30beds-var2", "30beds-var3",
                               "60beds-var1", "60beds-var2", "60beds-var3",
                               "realward", "tiny"}) {
    CHECK(std::find(names.begin(), names.end(), expected) != names.end());
    CHECK_NOTHROW(validate_config(preset_config(expected)));
  }
  CHECK_THROWS_AS(preset_config("nonsense"), StructuralError);
}

TEST_CASE("variation 1 is thirty beds in fifteen double rooms") {
  GenConfig cfg = preset_config("30beds-var1");
  CHECK(cfg.room_mix == std::array<int, 5>{0, 0, 15, 0, 0});
  CHECK(cfg.total_beds() == 30);
  CHECK(cfg.weeks == 2);
  CHECK(cfg.occupancy == 0.85);
  CHECK(cfg.num_days() == 14);
}

TEST_CASE("the real ward preset has the documented 17 rooms") {
  GenConfig cfg = preset_config("realward");
  CHECK(cfg.room_mix == std::array<int, 5>{0, 4, 10, 2, 1});
  CHECK(cfg.total_beds() == 34);
  CHECK(cfg.days_per_week == 5);
  CHECK(cfg.skill_levels == 2);
  CHECK(cfg.occupancy == doctest::Approx(0.61));

  Instance inst = generate_instance(cfg, 4);
  CHECK(inst.rooms.size() == 17);
  CHECK(inst.total_beds() == 34);
  std::map<int, int> by_size;
  for (const Room& r : inst.rooms) ++by_size[r.num_beds];
  CHECK(by_size[1] == 4);
  CHECK(by_size[2] == 10);
  CHECK(by_size[3] == 2);
  CHECK(by_size[4] == 1);
  CHECK(inst.additional_rooms.size() == 1);
}

TEST_CASE("generated instances validate and regenerate identically") {
  for (const char* name : {"tiny", "30beds-var1", "realward"}) {
    GenConfig cfg = preset_config(name);
    if (cfg.weeks > 1) cfg.weeks = 1;  // keep the test fast
    Instance a = generate_instance(cfg, 42);
    CHECK(validate_instance(a).empty());
    Instance b = generate_instance(cfg, 42);
    CHECK(a == b);
    Instance c = generate_instance(cfg, 43);
    CHECK_FALSE(a == c);
  }
}

TEST_CASE("patient attribute marginals stay in their supports") {
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    PatientDraw d = sample_patient_attributes(rng);
    CHECK(d.agegroup >= 2);
    CHECK(d.agegroup <= 9);
    CHECK(d.age / 10 == d.agegroup);
    CHECK((d.gender == 'F' || d.gender == 'M'));
    CHECK(d.los_days >= 1);
    CHECK(d.los_days <= 5);
  }
}

TEST_CASE("workload curves decay by a tenth with floor 1 and cap 5") {
  std::mt19937 rng(11);
  int hits = 0;
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> w = sample_workload(2 + i % 8, 1 + i % 12, rng);
    CHECK(w.size() == static_cast<size_t>(1 + i % 12));
    for (double v : w) {
      CHECK(v >= 1.0);
      CHECK(v <= 5.0);
    }
    // the decay chain is exact: a 4.0 start runs 4.0, 3.6, 3.24, ...
    for (size_t k = 0; k + 1 < w.size(); ++k) {
      CHECK(w[k + 1] == std::max(1.0, w[k] * 0.9));
    }
    if (w[0] == 5.0) ++hits;  // the cap clamps high gamma draws
  }
  CHECK(hits > 0);

  std::vector<double> single = sample_workload(5, 1, rng);
  CHECK(single.size() == 1);
}

TEST_CASE("skill requirements start at a level and only step down") {
  std::mt19937 rng(13);
  for (int i = 0; i < 500; ++i) {
    std::vector<int> req = sample_skillreq(1 + i % 10, rng);
    CHECK(req.size() == static_cast<size_t>(1 + i % 10));
    CHECK(req.front() >= 0);
    CHECK(req.front() <= 2);
    for (size_t k = 0; k + 1 < req.size(); ++k) {
      CHECK(req[k + 1] <= req[k]);
      CHECK(req[k] - req[k + 1] <= 1);
    }
  }
}

TEST_CASE("nurse capacity follows the skill level") {
  CHECK(maxload_for_skill(1) == 10.0);
  CHECK(maxload_for_skill(2) == 12.5);
  CHECK(maxload_for_skill(3) == 15.0);
}

TEST_CASE("config json round-trips") {
  GenConfig cfg = preset_config("60beds-var3");
  cfg.seed = 99;
  std::string text = gen_config_to_json(cfg);
  GenConfig back = parse_gen_config_json(text);
  CHECK(gen_config_to_json(back) == text);
  CHECK(back.room_mix == cfg.room_mix);
  CHECK(back.occupancy == cfg.occupancy);
  CHECK(back.seed == 99);
}

TEST_CASE("config validation refuses out-of-range settings") {
  GenConfig cfg = preset_config("tiny");
  cfg.occupancy = 0.0;
  CHECK_THROWS_AS(validate_config(cfg), StructuralError);

  cfg = preset_config("tiny");
  cfg.room_mix = {};
  CHECK_THROWS_AS(validate_config(cfg), StructuralError);

  cfg = preset_config("realward");  // two skill levels
  cfg.required_per_shift[3] = 1;
  CHECK_THROWS_AS(validate_config(cfg), StructuralError);
}

TEST_CASE("fill leaves complete instances alone") {
  Instance inst = generate_instance(preset_config("tiny"), 8);
  FillResult res = fill_missing_real_data(inst, 1);
  CHECK(res.issues.empty());
  CHECK(res.instance == inst);
}

TEST_CASE("fill samples missing per-shift maps") {
  Instance inst = generate_instance(preset_config("tiny"), 8);
  REQUIRE_FALSE(inst.patients.empty());
  Instance partial = inst;
  partial.patients[0].workload.clear();
  partial.patients[0].skillreq.clear();

  FillResult res = fill_missing_real_data(partial, 5);
  CHECK(res.issues.empty());
  const Patient& p = res.instance.patients[0];
  CHECK(p.workload.size() == inst.patients[0].workload.size());
  for (const auto& [s, v] : p.workload) {
    CHECK(v >= 1.0);
    CHECK(v <= 5.0);
  }
  CHECK(validate_instance(res.instance).empty());
}

TEST_CASE("fill reports uncovered shifts instead of inventing nurses") {
  WardBuilder b(1);
  b.room("r1", 2);
  b.nurse(make_nurse("n1", 2, {1}));  // early only
  b.patient(make_patient("p1", 'F', 40, 1, 3, 1));
  Instance inst = b.build();

  FillResult res = fill_missing_real_data(inst, 1);
  REQUIRE(res.issues.size() == 2);  // late and night uncovered
  CHECK(res.issues[0].find("no rostered nurse") != std::string::npos);
}
