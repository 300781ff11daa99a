#ifndef IPRNPA_MIP_EXPORT_HPP
#define IPRNPA_MIP_EXPORT_HPP

#include <string>

#include "iprnpa/instance.hpp"
#include "iprnpa/model_file.hpp"
#include "iprnpa/roster.hpp"

namespace iprnpa {

struct ExportOptions {
  // Emit the redundant ordering rows agemin <= agemax. They tighten nothing
  // but help LP-file readers sanity-check the age variables.
  bool age_order_rows = true;
};

// Canonical variable names. The exporters and the oracle's point checker
// must agree on these, so they live in one place.
namespace varname {
std::string y(const std::string& p, const std::string& r, int s);
std::string x(const std::string& p, const std::string& n, int s);
std::string trans(const std::string& p, int s);
std::string f_in_room(const std::string& r, int s);
std::string m_in_room(const std::string& r, int s);
std::string vio_gender(const std::string& r, int s);
std::string agemax(const std::string& r, int s);
std::string agemin(const std::string& r, int s);
std::string vio_skill(const std::string& p, int s);
std::string ever(const std::string& p, const std::string& n);
std::string vio_load(const std::string& n, int s);
std::string vio_fair_shift(const std::string& n1, const std::string& n2, int s);
std::string vio_fair_total(const std::string& n1, const std::string& n2);
std::string inroom(const std::string& n, const std::string& r, int s);
std::string both(const std::string& n, const std::string& r1, const std::string& r2,
                 int s);
std::string dist(const std::string& n, int s);
std::string assign(const std::string& n, int s);  // roster BIP
}  // namespace varname

// The complete integrated model: room assignment, transfers, age bounds,
// nurse assignment, workload and fairness, same-room linking and walking
// distances, weighted by the instance's objective weights.
ModelFile export_full_mip(const Instance& inst, const ExportOptions& opts = {});

// Room half only: room assignment, capacity, gender, transfer and age
// families. No nurse symbol appears anywhere.
ModelFile export_pra(const Instance& inst, const ExportOptions& opts = {});

// Nurse half only: fixed_rooms supplies the 0/1 values of every room
// variable, which are folded into the rows as constants. Throws
// InfeasibleError when fixed_rooms is not a legal room assignment.
ModelFile export_npa(const Instance& inst, const Solution& fixed_rooms,
                     const ExportOptions& opts = {});

// The staffing BIP behind solve_roster: minimize total assigned shifts
// subject to the one-shift-per-day, rest and coverage rules.
ModelFile export_roster_bip(const RosterRequest& req);

}  // namespace iprnpa

#endif
