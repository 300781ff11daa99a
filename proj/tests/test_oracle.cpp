#include <doctest.h>

#include <algorithm>
#include <random>

#include "iprnpa/errors.hpp"
#include "iprnpa/mip_export.hpp"
#include "iprnpa/oracle.hpp"
#include "support.hpp"

using namespace iprnpa;
using namespace testsupport;

TEST_CASE("a one-choice instance returns its unique assignment") {
  WardBuilder b(1);
  b.room("r1", 1).full_cover("n");
  b.patient(make_patient("p1", 'F', 34, 1, 3, 1));
  Instance inst = b.build();

  OracleResult res = enumerate_optimal(inst);
  CHECK(res.estimated_leaves == 1.0);
  CHECK(res.leaves_visited == 1);
  CHECK(res.solution.room_of.at({"p1", 1}) == "r1");
  CHECK(res.solution.nurse_of.at({"p1", 1}) == "ne");
  CHECK(res.solution.nurse_of.at({"p1", 2}) == "nl");
  CHECK(res.solution.nurse_of.at({"p1", 3}) == "nn");

  ObjectiveBreakdown direct = eval_total(inst, res.solution);
  CHECK(res.breakdown.weighted_total == direct.weighted_total);
}

TEST_CASE("the optimum separates genders when beds allow it") {
  WardBuilder b(1);
  b.room("ra", 2).room("rb", 1).room("rc", 1);
  // two nurses per slot so neither patient forces an overload
  b.full_cover("m").full_cover("n");
  b.patient(make_patient("p1", 'F', 34, 1, 3, 1, 6.0));
  b.patient(make_patient("p2", 'M', 36, 1, 3, 1, 6.0));
  Instance inst = b.build();

  OracleResult res = enumerate_optimal(inst);
  CHECK(res.breakdown.gender_mix == 0);
  CHECK(res.solution.room_of.at({"p1", 1}) != res.solution.room_of.at({"p2", 1}));

  // forcing them together really would cost the gender weight
  Solution together = res.solution;
  together.room_of[{"p1", 1}] = "ra";
  together.room_of[{"p2", 1}] = "ra";
  ObjectiveBreakdown mixed = eval_total(inst, together);
  CHECK(mixed.gender_mix == 1);
  CHECK(mixed.weighted_total > res.breakdown.weighted_total);
}

TEST_CASE("pruning never changes the reported optimum") {
  for (unsigned seed : {1u, 2u, 3u}) {
    Instance inst = tiny_instance(seed);
    OracleResult pruned = enumerate_optimal(inst, {.enable_pruning = true});
    OracleResult plain = enumerate_optimal(inst, {.enable_pruning = false});
    CHECK(pruned.solution == plain.solution);
    CHECK(pruned.breakdown.weighted_total == plain.breakdown.weighted_total);
    CHECK(pruned.leaves_visited <= plain.leaves_visited);
    CHECK(static_cast<double>(plain.leaves_visited) <= plain.estimated_leaves);
  }
}

TEST_CASE("leaf audits agree with the evaluator") {
  Instance inst = tiny_instance(5);
  OracleResult res = enumerate_optimal(inst, {.audit_leaves_every = 7});
  CHECK(res.max_leaf_divergence <= 1e-9);
}

TEST_CASE("oversized searches are refused before they start") {
  Instance inst = tiny_instance(1);
  CHECK_THROWS_AS(enumerate_optimal(inst, {.max_nodes = 2.0}), BudgetExceededError);

  GenConfig cfg = preset_config("30beds-var1");
  cfg.weeks = 1;
  Instance big = generate_instance(cfg, 1);
  CHECK_THROWS_AS(enumerate_optimal(big), BudgetExceededError);
}

TEST_CASE("tight completion satisfies the full model at feasible points") {
  Instance inst = tiny_instance(2);
  ModelFile model = export_full_mip(inst);

  OracleResult opt = enumerate_optimal(inst);
  MipPointReport at_opt = check_mip_point(model, inst, opt.solution);
  CHECK(at_opt.feasible);
  CHECK(at_opt.violated_rows.empty());
  CHECK(at_opt.objective ==
        doctest::Approx(opt.breakdown.weighted_total).epsilon(1e-9));

  std::mt19937 rng(17);
  for (int i = 0; i < 5; ++i) {
    Solution sol = random_feasible_solution(inst, rng);
    MipPointReport rep = check_mip_point(model, inst, sol);
    CHECK(rep.feasible);
    ObjectiveBreakdown bd = eval_total(inst, sol);
    CHECK(std::abs(rep.objective - bd.weighted_total) <= 1e-6);
  }
}

TEST_CASE("capacity violations surface with the row name") {
  WardBuilder b(1);
  b.room("r1", 1).room("r2", 1).full_cover("n");
  b.patient(make_patient("p1", 'F', 34, 1, 3, 1));
  b.patient(make_patient("p2", 'F', 36, 1, 3, 1));
  Instance inst = b.build();
  ModelFile model = export_full_mip(inst);

  Solution overfull;
  for (const char* p : {"p1", "p2"}) {
    overfull.room_of[{p, 1}] = "r1";
    for (int s = 1; s <= 3; ++s) {
      overfull.nurse_of[{p, s}] = s == 1 ? "ne" : s == 2 ? "nl" : "nn";
    }
  }
  MipPointReport rep = check_mip_point(model, inst, overfull);
  CHECK_FALSE(rep.feasible);
  CHECK(std::find(rep.violated_rows.begin(), rep.violated_rows.end(),
                  "capacity[r1][1]") != rep.violated_rows.end());
}

TEST_CASE("the completion refuses a model of the wrong shape") {
  Instance inst = tiny_instance(2);
  ModelFile pra = export_pra(inst);
  OracleResult opt = enumerate_optimal(inst);
  CHECK_THROWS_AS(tight_point(pra, inst, opt.solution), StructuralError);
}

TEST_CASE("every tight variable lands inside its declared bounds") {
  Instance inst = tiny_instance(6);
  ModelFile model = export_full_mip(inst);
  OracleResult opt = enumerate_optimal(inst);
  std::vector<double> point = tight_point(model, inst, opt.solution);
  REQUIRE(point.size() == model.variables().size());
  for (size_t i = 0; i < point.size(); ++i) {
    const ModelVariable& v = model.variables()[i];
    CHECK(point[i] >= v.lb - 1e-9);
    CHECK(point[i] <= v.ub + 1e-9);
    if (v.kind == VarKind::binary) {
      CHECK((point[i] == 0.0 || point[i] == 1.0));
    }
  }
}
