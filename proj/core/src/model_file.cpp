#include "iprnpa/model_file.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "iprnpa/errors.hpp"

namespace iprnpa {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool valid_var_name(const std::string& name) {
  if (name.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_') {
    return false;
  }
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' &&
        c != '[' && c != ']') {
      return false;
    }
  }
  return true;
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) throw StructuralError("cannot format non-finite number");
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int ModelFile::add_variable(const std::string& name, VarKind kind, double lb,
                            double ub) {
  if (!valid_var_name(name)) {
    throw StructuralError("invalid variable name '" + name + "'");
  }
  if (index_.count(name)) {
    throw StructuralError("duplicate variable '" + name + "'");
  }
  int id = static_cast<int>(variables_.size());
  variables_.push_back({name, kind, lb, ub});
  index_[name] = id;
  return id;
}

int ModelFile::add_continuous(const std::string& name, double lb, double ub) {
  return add_variable(name, VarKind::continuous, lb, ub);
}

int ModelFile::add_binary(const std::string& name) {
  return add_variable(name, VarKind::binary, 0.0, 1.0);
}

void ModelFile::add_objective_term(int var, double coeff) {
  if (var < 0 || var >= static_cast<int>(variables_.size())) {
    throw StructuralError("objective term references unknown variable");
  }
  if (coeff != 0.0) objective_.push_back({var, coeff});
}

ModelConstraint& ModelFile::add_constraint(const std::string& name, Sense sense,
                                           double rhs) {
  if (!valid_var_name(name)) {
    throw StructuralError("invalid constraint name '" + name + "'");
  }
  constraints_.push_back({name, {}, sense, rhs});
  return constraints_.back();
}

bool ModelFile::has_variable(const std::string& name) const {
  return index_.count(name) != 0;
}

int ModelFile::variable(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw StructuralError("unknown variable '" + name + "'");
  return it->second;
}

namespace {

void write_terms(std::ostream& out, const ModelFile& model,
                 const std::vector<LinearTerm>& terms) {
  bool first = true;
  for (const LinearTerm& t : terms) {
    double c = t.coeff;
    if (first) {
      if (c < 0) {
        out << "- ";
        c = -c;
      }
      first = false;
    } else {
      out << (c < 0 ? " - " : " + ");
      c = std::abs(c);
    }
    out << format_double(c) << ' ' << model.variables()[t.var].name;
  }
  if (first) out << '0';  // empty expression
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::le: return "<=";
    case Sense::ge: return ">=";
    default: return "=";
  }
}

}  // namespace

std::string write_lp(const ModelFile& model) {
  std::ostringstream out;
  for (const std::string& line : model.comments) out << "\\ " << line << '\n';
  out << "Minimize\n obj: ";
  write_terms(out, model, model.objective());
  out << "\nSubject To\n";
  for (const ModelConstraint& c : model.constraints()) {
    if (c.terms.empty()) {
      throw StructuralError("constraint '" + c.name + "' has no terms");
    }
    out << ' ' << c.name << ": ";
    write_terms(out, model, c.terms);
    out << ' ' << sense_text(c.sense) << ' ' << format_double(c.rhs) << '\n';
  }

  bool any_continuous = false, any_binary = false;
  for (const ModelVariable& v : model.variables()) {
    (v.kind == VarKind::binary ? any_binary : any_continuous) = true;
  }
  if (any_continuous) {
    out << "Bounds\n";
    for (const ModelVariable& v : model.variables()) {
      if (v.kind != VarKind::continuous) continue;
      out << ' ';
      if (std::isinf(v.lb) && std::isinf(v.ub)) {
        out << v.name << " free";
      } else if (v.lb == v.ub) {
        out << v.name << " = " << format_double(v.lb);
      } else if (std::isinf(v.ub)) {
        out << v.name << " >= " << format_double(v.lb);
      } else if (v.lb == 0.0) {
        out << v.name << " <= " << format_double(v.ub);
      } else {
        out << format_double(v.lb) << " <= " << v.name << " <= "
            << format_double(v.ub);
      }
      out << '\n';
    }
  }
  if (any_binary) {
    out << "Binaries\n";
    for (const ModelVariable& v : model.variables()) {
      if (v.kind == VarKind::binary) out << ' ' << v.name << '\n';
    }
  }
  out << "End\n";
  return out.str();
}

namespace {

// Line-splitting tokenizer for the strict grammar write_lp emits.
struct LpParser {
  std::vector<std::string> lines;
  size_t pos = 0;

  explicit LpParser(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }

  bool done() const { return pos >= lines.size(); }
  const std::string& peek() const {
    if (done()) throw StructuralError("LP file: unexpected end of file");
    return lines[pos];
  }
  std::string next() {
    std::string line = peek();
    ++pos;
    return line;
  }
};

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

double parse_number(const std::string& tok) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + tok.size()) {
    throw StructuralError("LP file: bad number '" + tok + "'");
  }
  return v;
}

// Parses "coeff name [+|- coeff name]*" from tokens[i..]; stops at a sense
// token or the end. Creates placeholder indices via lookup.
std::vector<LinearTerm> parse_terms(const std::vector<std::string>& tokens, size_t& i,
                                    const std::map<std::string, int>& vars,
                                    const std::string& where) {
  std::vector<LinearTerm> terms;
  bool expect_sign = false;
  double sign = 1.0;
  while (i < tokens.size()) {
    const std::string& tok = tokens[i];
    if (tok == "<=" || tok == ">=" || tok == "=") break;
    if (expect_sign) {
      if (tok == "+") {
        sign = 1.0;
      } else if (tok == "-") {
        sign = -1.0;
      } else {
        throw StructuralError("LP file: expected +/- in " + where + ", got '" + tok +
                              "'");
      }
      ++i;
      expect_sign = false;
      continue;
    }
    if (tok == "-") {  // leading minus on the first term
      sign = -1.0;
      ++i;
      continue;
    }
    if (tok == "0" && terms.empty() &&
        (i + 1 >= tokens.size() || tokens[i + 1] == "<=" || tokens[i + 1] == ">=" ||
         tokens[i + 1] == "=")) {
      ++i;  // canonical empty expression
      break;
    }
    double coeff = sign * parse_number(tok);
    ++i;
    if (i >= tokens.size()) {
      throw StructuralError("LP file: dangling coefficient in " + where);
    }
    auto it = vars.find(tokens[i]);
    if (it == vars.end()) {
      throw StructuralError("LP file: undeclared variable '" + tokens[i] + "' in " +
                            where);
    }
    terms.push_back({it->second, coeff});
    ++i;
    sign = 1.0;
    expect_sign = true;
  }
  return terms;
}

}  // namespace

ModelFile parse_lp(const std::string& text) {
  LpParser in(text);
  ModelFile model;

  while (!in.done() && in.peek().rfind("\\", 0) == 0) {
    std::string line = in.next();
    size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
    model.comments.push_back(line.substr(start));
  }
  if (in.done() || in.next() != "Minimize") {
    throw StructuralError("LP file: expected 'Minimize'");
  }

  // Variables are declared in Bounds and Binaries; scan ahead so terms can
  // resolve names, then restore position.
  std::map<std::string, int> var_ids;
  {
    size_t saved = in.pos;
    std::string section;
    while (!in.done()) {
      std::string line = in.next();
      if (line == "Bounds" || line == "Binaries") {
        section = line;
        continue;
      }
      if (line == "End" || line == "Subject To" || line == "Minimize") {
        section.clear();
        continue;
      }
      if (section.empty()) continue;
      std::vector<std::string> tokens = tokenize(line);
      if (tokens.empty()) continue;
      if (section == "Binaries") {
        if (tokens.size() != 1) throw StructuralError("LP file: bad Binaries line");
        if (!model.has_variable(tokens[0])) {
          var_ids[tokens[0]] = model.add_binary(tokens[0]);
        }
      } else {
        // Bounds forms: "x free" | "x = v" | "x >= v" | "x <= v" | "l <= x <= u"
        std::string name;
        double lb = 0.0, ub = kInf;
        if (tokens.size() == 2 && tokens[1] == "free") {
          name = tokens[0];
          lb = -kInf;
        } else if (tokens.size() == 3 && tokens[1] == "=") {
          name = tokens[0];
          lb = ub = parse_number(tokens[2]);
        } else if (tokens.size() == 3 && tokens[1] == ">=") {
          name = tokens[0];
          lb = parse_number(tokens[2]);
        } else if (tokens.size() == 3 && tokens[1] == "<=") {
          name = tokens[0];
          ub = parse_number(tokens[2]);
        } else if (tokens.size() == 5 && tokens[1] == "<=" && tokens[3] == "<=") {
          lb = parse_number(tokens[0]);
          name = tokens[2];
          ub = parse_number(tokens[4]);
        } else {
          throw StructuralError("LP file: bad Bounds line '" + line + "'");
        }
        if (model.has_variable(name)) {
          throw StructuralError("LP file: duplicate bounds for '" + name + "'");
        }
        var_ids[name] = model.add_continuous(name, lb, ub);
      }
    }
    in.pos = saved;
  }

  // Objective line.
  {
    std::vector<std::string> tokens = tokenize(in.next());
    if (tokens.empty() || tokens[0] != "obj:") {
      throw StructuralError("LP file: expected objective line ' obj: ...'");
    }
    size_t i = 1;
    std::vector<LinearTerm> terms = parse_terms(tokens, i, var_ids, "objective");
    if (i != tokens.size()) throw StructuralError("LP file: trailing objective tokens");
    for (const LinearTerm& t : terms) model.add_objective_term(t.var, t.coeff);
  }

  if (in.done() || in.next() != "Subject To") {
    throw StructuralError("LP file: expected 'Subject To'");
  }
  while (!in.done() && in.peek() != "Bounds" && in.peek() != "Binaries" &&
         in.peek() != "End") {
    std::vector<std::string> tokens = tokenize(in.next());
    if (tokens.empty()) continue;
    std::string name = tokens[0];
    if (name.empty() || name.back() != ':') {
      throw StructuralError("LP file: constraint line missing name: '" + name + "'");
    }
    name.pop_back();
    size_t i = 1;
    std::vector<LinearTerm> terms = parse_terms(tokens, i, var_ids, "row " + name);
    if (i + 2 != tokens.size()) {
      throw StructuralError("LP file: malformed row '" + name + "'");
    }
    Sense sense;
    if (tokens[i] == "<=") {
      sense = Sense::le;
    } else if (tokens[i] == ">=") {
      sense = Sense::ge;
    } else if (tokens[i] == "=") {
      sense = Sense::eq;
    } else {
      throw StructuralError("LP file: bad sense in row '" + name + "'");
    }
    double rhs = parse_number(tokens[i + 1]);
    ModelConstraint& row = model.add_constraint(name, sense, rhs);
    row.terms = std::move(terms);
  }

  // Skip the declaration sections (already consumed by the scan) and check
  // the file ends with End.
  bool saw_end = false;
  while (!in.done()) {
    if (in.next() == "End") {
      saw_end = true;
      break;
    }
  }
  if (!saw_end) throw StructuralError("LP file: missing 'End'");
  return model;
}

}  // namespace iprnpa
