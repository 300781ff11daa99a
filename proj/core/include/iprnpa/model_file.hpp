#ifndef IPRNPA_MODEL_FILE_HPP
#define IPRNPA_MODEL_FILE_HPP

#include <limits>
#include <map>
#include <string>
#include <vector>

namespace iprnpa {

// A linear mixed-integer model in LP text form. The writer is canonical:
// every variable is declared (continuous ones in Bounds, binaries in
// Binaries, both in creation order), coefficients are always printed, and
// doubles use shortest round-trip formatting. parse_lp accepts exactly what
// write_lp produces, so parse then write reproduces the bytes.

enum class VarKind { continuous, binary };
enum class Sense { le, ge, eq };

struct ModelVariable {
  std::string name;
  VarKind kind = VarKind::continuous;
  double lb = 0.0;
  double ub = std::numeric_limits<double>::infinity();
};

struct LinearTerm {
  int var = -1;
  double coeff = 0.0;
};

struct ModelConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::le;
  double rhs = 0.0;
};

class ModelFile {
 public:
  std::vector<std::string> comments;  // header lines, written as "\ <line>"

  int add_continuous(const std::string& name, double lb = 0.0,
                     double ub = std::numeric_limits<double>::infinity());
  int add_binary(const std::string& name);

  void add_objective_term(int var, double coeff);
  ModelConstraint& add_constraint(const std::string& name, Sense sense, double rhs);

  bool has_variable(const std::string& name) const;
  int variable(const std::string& name) const;  // throws StructuralError

  const std::vector<ModelVariable>& variables() const { return variables_; }
  const std::vector<LinearTerm>& objective() const { return objective_; }
  const std::vector<ModelConstraint>& constraints() const { return constraints_; }

 private:
  int add_variable(const std::string& name, VarKind kind, double lb, double ub);

  std::vector<ModelVariable> variables_;
  std::vector<LinearTerm> objective_;
  std::vector<ModelConstraint> constraints_;
  std::map<std::string, int> index_;
};

// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);

std::string write_lp(const ModelFile& model);
ModelFile parse_lp(const std::string& text);  // throws StructuralError

}  // namespace iprnpa

#endif
