#ifndef IPRNPA_VALIDATE_HPP
#define IPRNPA_VALIDATE_HPP

#include <string>
#include <vector>

#include "iprnpa/instance.hpp"

namespace iprnpa {

struct ValidationIssue {
  std::string where;    // e.g. "patient p3" or "room r1"
  std::string message;  // human readable rule violation

  bool operator==(const ValidationIssue&) const = default;
};

// Checks every structural invariant of an instance: the calendar, unique and
// model-safe identifiers, reference integrity, stay windows, per-shift data
// defined exactly where the stay demands it, complete symmetric distances,
// and that beds and rostered nurses suffice on every shift. An empty result
// means the instance is valid.
std::vector<ValidationIssue> validate_instance(const Instance& inst);

// Throws StructuralError listing the first few issues when invalid.
void require_valid(const Instance& inst);

// Identifiers end up as parts of MIP variable names, so they must start with
// a letter or underscore and contain only letters, digits, '_' or '.'.
bool valid_identifier(const std::string& id);

}  // namespace iprnpa

#endif
