#include <doctest.h>

#include <limits>
#include <string>

#include "iprnpa/errors.hpp"
#include "iprnpa/model_file.hpp"

using namespace iprnpa;

namespace {

ModelFile sample_model() {
  ModelFile m;
  m.comments.push_back("sample model");
  m.comments.push_back("two rows, four columns");
  int a = m.add_continuous("alpha");
  int b = m.add_continuous("beta", 1.5, 4.0);
  int c = m.add_continuous("gamma", -std::numeric_limits<double>::infinity(),
                           std::numeric_limits<double>::infinity());
  int z = m.add_binary("flag[r1][4]");
  m.add_objective_term(a, 11.0);
  m.add_objective_term(z, -0.05);
  ModelConstraint& r1 = m.add_constraint("row_one", Sense::le, 10.0);
  r1.terms.push_back({a, 1.0});
  r1.terms.push_back({b, -2.5});
  ModelConstraint& r2 = m.add_constraint("row_two[x]", Sense::eq, 0.0);
  r2.terms.push_back({c, 1.0});
  r2.terms.push_back({z, -12.0});
  ModelConstraint& r3 = m.add_constraint("row_three", Sense::ge, -1.0);
  r3.terms.push_back({b, 0.3333333333333333});
  return m;
}

}  // namespace

TEST_CASE("lp writer and parser are inverse on bytes") {
  ModelFile m = sample_model();
  std::string text = write_lp(m);
  ModelFile back = parse_lp(text);
  CHECK(write_lp(back) == text);

  CHECK(back.variables().size() == 4);
  CHECK(back.variables()[1].lb == 1.5);
  CHECK(back.variables()[1].ub == 4.0);
  CHECK(back.variables()[3].kind == VarKind::binary);
  CHECK(back.constraints().size() == 3);
  CHECK(back.constraints()[0].sense == Sense::le);
  CHECK(back.constraints()[1].sense == Sense::eq);
  CHECK(back.constraints()[2].rhs == -1.0);
  CHECK(back.constraints()[2].terms[0].coeff == 0.3333333333333333);
  CHECK(back.objective().size() == 2);
  CHECK(back.comments.size() == 2);
}

TEST_CASE("format_double is shortest round-trip text") {
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(0.05) == "0.05");
  CHECK(format_double(-2.0) == "-2");
  for (double v : {0.1, 1.0 / 3.0, 12.5, -1e-9, 3.0e300, 123456789.123456}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK_THROWS_AS(format_double(std::numeric_limits<double>::infinity()),
                  StructuralError);
}

TEST_CASE("variable bookkeeping is strict") {
  ModelFile m;
  m.add_continuous("x");
  CHECK_THROWS_AS(m.add_continuous("x"), StructuralError);
  CHECK_THROWS_AS(m.add_continuous("2bad"), StructuralError);
  CHECK_THROWS_AS(m.add_continuous("sp ace"), StructuralError);
  CHECK(m.has_variable("x"));
  CHECK_FALSE(m.has_variable("y"));
  CHECK_THROWS_AS(m.variable("y"), StructuralError);
  CHECK_THROWS_AS(m.add_objective_term(7, 1.0), StructuralError);
}

TEST_CASE("empty rows are refused at write time") {
  ModelFile m;
  m.add_continuous("x");
  m.add_constraint("hollow", Sense::le, 1.0);
  CHECK_THROWS_AS(write_lp(m), StructuralError);
}

TEST_CASE("parser rejects what the writer never emits") {
  CHECK_THROWS_AS(parse_lp(""), StructuralError);
  CHECK_THROWS_AS(parse_lp("Maximize\n obj: 0\nEnd\n"), StructuralError);
  CHECK_THROWS_AS(parse_lp("Minimize\n obj: 1 x\nSubject To\nEnd\n"), StructuralError);
  // constraint referencing an undeclared variable
  std::string text =
      "Minimize\n obj: 1 x\nSubject To\n r: 1 y <= 1\nBounds\n x >= 0\nEnd\n";
  CHECK_THROWS_AS(parse_lp(text), StructuralError);
}

TEST_CASE("an objective with no terms still writes") {
  ModelFile m;
  m.add_binary("z");
  ModelConstraint& r = m.add_constraint("r", Sense::ge, 1.0);
  r.terms.push_back({0, 1.0});
  std::string text = write_lp(m);
  CHECK(text.find("obj: 0") != std::string::npos);
  ModelFile back = parse_lp(text);
  CHECK(back.objective().empty());
  CHECK(write_lp(back) == text);
}
