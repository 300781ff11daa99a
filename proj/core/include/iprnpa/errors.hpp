#ifndef IPRNPA_ERRORS_HPP
#define IPRNPA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace iprnpa {

// Malformed or inconsistent input: bad JSON, dangling references,
// out-of-range calendar values. Maps to CLI exit code 4.
class StructuralError : public std::runtime_error {
 public:
  explicit StructuralError(const std::string& what) : std::runtime_error(what) {}
};

// A well-formed problem that provably has no feasible assignment.
// Maps to CLI exit code 2.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

// A computation refused because it would exceed its node or time budget.
// Never a truncated answer. Maps to CLI exit code 3.
class BudgetExceededError : public std::runtime_error {
 public:
  explicit BudgetExceededError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace iprnpa

#endif
