#include "iprnpa/validate.hpp"

#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "iprnpa/errors.hpp"

namespace iprnpa {

namespace {

void issue(std::vector<ValidationIssue>& out, const std::string& where,
           const std::string& message) {
  out.push_back({where, message});
}

bool finite_nonneg(double v) { return std::isfinite(v) && v >= 0.0; }

// Per-shift maps (workload, skillreq, ...) must carry exactly the expected
// key set; anything missing or extra is reported.
template <typename Map>
void check_keys(std::vector<ValidationIssue>& out, const std::string& where,
                const std::string& field, const Map& map,
                const std::set<int>& expected) {
  for (int s : expected) {
    if (map.find(s) == map.end()) {
      issue(out, where, field + " missing for shift " + std::to_string(s));
    }
  }
  for (const auto& [s, _] : map) {
    if (expected.find(s) == expected.end()) {
      issue(out, where, field + " defined for shift " + std::to_string(s) +
                            " outside the stay");
    }
  }
}

}  // namespace

bool valid_identifier(const std::string& id) {
  if (id.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(id[0])) && id[0] != '_') return false;
  for (char c : id) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.') {
      return false;
    }
  }
  return true;
}

std::vector<ValidationIssue> validate_instance(const Instance& inst) {
  std::vector<ValidationIssue> out;

  if (inst.num_days < 1) {
    issue(out, "instance", "num_days must be at least 1");
    return out;  // nothing else is checkable without a calendar
  }
  ShiftCalendar cal(inst.num_days);
  const int S = cal.num_shifts();

  std::set<std::string> equipment(inst.equipment_types.begin(),
                                  inst.equipment_types.end());
  if (equipment.size() != inst.equipment_types.size()) {
    issue(out, "instance", "duplicate equipment type");
  }

  std::set<std::string> room_ids;
  for (const Room& r : inst.rooms) {
    std::string where = "room " + r.id;
    if (!valid_identifier(r.id)) issue(out, where, "invalid identifier");
    if (!room_ids.insert(r.id).second) issue(out, where, "duplicate room id");
    if (r.num_beds < 1) issue(out, where, "num_beds must be at least 1");
    for (const std::string& e : r.equipment) {
      if (equipment.find(e) == equipment.end()) {
        issue(out, where, "unknown equipment type " + e);
      }
    }
  }
  if (inst.rooms.empty()) issue(out, "instance", "no rooms");

  std::set<std::string> add_ids;
  for (const std::string& a : inst.additional_rooms) {
    std::string where = "additional room " + a;
    if (!valid_identifier(a)) issue(out, where, "invalid identifier");
    if (!add_ids.insert(a).second) issue(out, where, "duplicate additional room id");
    if (room_ids.count(a)) issue(out, where, "id collides with a patient room");
  }

  // Distances must cover every unordered room pair and every
  // (additional room, room) pair with finite nonnegative values.
  for (size_t i = 0; i < inst.rooms.size(); ++i) {
    for (size_t j = i + 1; j < inst.rooms.size(); ++j) {
      const std::string& a = inst.rooms[i].id;
      const std::string& b = inst.rooms[j].id;
      if (!inst.distances.has_between_rooms(a, b)) {
        issue(out, "distances", "missing distance between " + a + " and " + b);
      } else if (!finite_nonneg(inst.distances.between_rooms(a, b))) {
        issue(out, "distances", "distance between " + a + " and " + b +
                                    " must be finite and nonnegative");
      }
    }
  }
  for (const std::string& a : inst.additional_rooms) {
    for (const Room& r : inst.rooms) {
      if (!inst.distances.has_from_additional(a, r.id)) {
        issue(out, "distances", "missing distance from " + a + " to " + r.id);
      } else if (!finite_nonneg(inst.distances.from_additional(a, r.id))) {
        issue(out, "distances", "distance from " + a + " to " + r.id +
                                    " must be finite and nonnegative");
      }
    }
  }

  std::set<std::string> nurse_ids;
  for (const Nurse& n : inst.nurses) {
    std::string where = "nurse " + n.id;
    if (!valid_identifier(n.id)) issue(out, where, "invalid identifier");
    if (!nurse_ids.insert(n.id).second) issue(out, where, "duplicate nurse id");
    if (n.skill < 1 || n.skill > 3) issue(out, where, "skill outside 1..3");
    std::set<int> days_worked;
    for (int s : n.shifts) {
      if (s < 1 || s > S) {
        issue(out, where, "rostered shift " + std::to_string(s) + " outside 1.." +
                              std::to_string(S));
      } else if (!days_worked.insert(cal.day_of(s)).second) {
        issue(out, where, "more than one shift on day " +
                              std::to_string(cal.day_of(s)));
      }
    }
    check_keys(out, where, "maxload", n.maxload, n.shifts);
    for (const auto& [s, v] : n.maxload) {
      if (!std::isfinite(v) || v <= 0.0) {
        issue(out, where, "maxload for shift " + std::to_string(s) +
                              " must be finite and positive");
      }
    }
  }

  std::set<std::string> patient_ids;
  for (const Patient& p : inst.patients) {
    std::string where = "patient " + p.id;
    if (!valid_identifier(p.id)) issue(out, where, "invalid identifier");
    if (!patient_ids.insert(p.id).second) issue(out, where, "duplicate patient id");
    if (p.gender != 'F' && p.gender != 'M') issue(out, where, "gender must be F or M");
    if (p.age < 0 || p.age >= 130) issue(out, where, "age outside 0..129");

    bool window_ok = true;
    if (p.adshift != 0 && !(p.adshift >= 1 && p.adshift <= S &&
                            cal.is_early(p.adshift))) {
      issue(out, where, "adshift must be 0 or an early shift");
      window_ok = false;
    }
    if (p.dishift != S + 1 && !(p.dishift >= 1 && p.dishift <= S &&
                                cal.is_night(p.dishift))) {
      issue(out, where, "dishift must be a night shift or num_shifts+1");
      window_ok = false;
    }
    if (window_ok && p.adshift >= p.dishift) {
      issue(out, where, "adshift must precede dishift");
      window_ok = false;
    }

    if (p.adshift == 0) {
      if (!p.prev_room) {
        issue(out, where, "prev_room required when adshift is 0");
      } else if (room_ids.find(*p.prev_room) == room_ids.end()) {
        issue(out, where, "prev_room " + *p.prev_room + " is not a room");
      }
    } else if (p.prev_room) {
      issue(out, where, "prev_room only allowed when adshift is 0");
    }
    for (const std::string& n : p.prev_nurses) {
      if (nurse_ids.find(n) == nurse_ids.end()) {
        issue(out, where, "prev_nurse " + n + " is not a nurse");
      }
    }

    if (!window_ok) continue;

    std::set<int> stay_shifts, stay_day_shifts, stay_early_shifts;
    for (int s = p.first_shift(); s <= p.last_shift(cal); ++s) {
      stay_shifts.insert(s);
      if (!cal.is_night(s)) stay_day_shifts.insert(s);
      if (cal.is_early(s)) stay_early_shifts.insert(s);
    }
    check_keys(out, where, "workload", p.workload, stay_shifts);
    check_keys(out, where, "skillreq", p.skillreq, stay_day_shifts);
    check_keys(out, where, "equipment_req", p.equipment_req, stay_early_shifts);
    for (const auto& [s, v] : p.workload) {
      if (!finite_nonneg(v)) {
        issue(out, where, "workload for shift " + std::to_string(s) +
                              " must be finite and nonnegative");
      }
    }
    for (const auto& [s, v] : p.skillreq) {
      if (v < 0 || v > 2) {
        issue(out, where, "skillreq for shift " + std::to_string(s) +
                              " outside 0..2");
      }
    }
    for (const auto& [s, req] : p.equipment_req) {
      for (const std::string& e : req) {
        if (equipment.find(e) == equipment.end()) {
          issue(out, where, "unknown equipment type " + e + " required on shift " +
                                std::to_string(s));
        }
      }
    }
  }

  for (const auto& [s, v] : inst.walk_weights.circular) {
    if (s < 1 || s > S) issue(out, "walk_weights", "circular weight for bad shift");
  }
  for (const auto& [s, v] : inst.walk_weights.star) {
    if (s < 1 || s > S) issue(out, "walk_weights", "star weight for bad shift");
  }
  for (int s = 1; s <= S; ++s) {
    auto c = inst.walk_weights.circular.find(s);
    auto t = inst.walk_weights.star.find(s);
    if (c == inst.walk_weights.circular.end() || !finite_nonneg(c->second)) {
      issue(out, "walk_weights", "circular weight missing or invalid for shift " +
                                     std::to_string(s));
    }
    if (t == inst.walk_weights.star.end() || !finite_nonneg(t->second)) {
      issue(out, "walk_weights", "star weight missing or invalid for shift " +
                                     std::to_string(s));
    }
  }

  const ObjectiveWeights& w = inst.weights;
  for (double v : {w.transfers, w.inconvenience, w.gender, w.equipment, w.continuity,
                   w.skill_load_fair, w.nurses_per_room, w.walking, w.heterogeneity}) {
    if (!finite_nonneg(v)) {
      issue(out, "objective_weights", "weights must be finite and nonnegative");
      break;
    }
  }

  // Aggregate feasibility preconditions: enough beds every day, at least one
  // nurse on duty whenever a patient is on the ward.
  if (out.empty()) {
    std::vector<int> patients_on_day(inst.num_days + 1, 0);
    for (const Patient& p : inst.patients) {
      for (int d = p.first_day(cal); d <= p.last_day(cal); ++d) ++patients_on_day[d];
    }
    int beds = inst.total_beds();
    for (int d = 1; d <= inst.num_days; ++d) {
      if (patients_on_day[d] > beds) {
        issue(out, "instance", "day " + std::to_string(d) + " has " +
                                   std::to_string(patients_on_day[d]) +
                                   " patients but only " + std::to_string(beds) +
                                   " beds");
      }
    }
    std::vector<int> nurses_on_shift(S + 1, 0);
    for (const Nurse& n : inst.nurses) {
      for (int s : n.shifts) ++nurses_on_shift[s];
    }
    for (const Patient& p : inst.patients) {
      for (int s = p.first_shift(); s <= p.last_shift(cal); ++s) {
        if (nurses_on_shift[s] == 0) {
          issue(out, "instance", "shift " + std::to_string(s) +
                                     " has patients but no rostered nurse");
          nurses_on_shift[s] = -1;  // report each shift once
        }
      }
    }
    for (int s = 1; s <= S; ++s) {
      if (nurses_on_shift[s] == -1) nurses_on_shift[s] = 0;
    }
  }

  return out;
}

void require_valid(const Instance& inst) {
  std::vector<ValidationIssue> issues = validate_instance(inst);
  if (issues.empty()) return;
  std::ostringstream msg;
  msg << "invalid instance (" << issues.size() << " issues):";
  size_t shown = std::min<size_t>(issues.size(), 5);
  for (size_t i = 0; i < shown; ++i) {
    msg << "\n  " << issues[i].where << ": " << issues[i].message;
  }
  if (issues.size() > shown) msg << "\n  ...";
  throw StructuralError(msg.str());
}

}  // namespace iprnpa
