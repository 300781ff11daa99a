#ifndef IPRNPA_INDEX_HPP
#define IPRNPA_INDEX_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "iprnpa/instance.hpp"

namespace iprnpa {

// Dense, integer-indexed view of an instance. Built once, shared by the
// evaluator, the heuristic and the oracle so they agree on entity order:
// input order for iteration, ids only for tie-breaking.
struct InstanceIndex {
  const Instance* inst = nullptr;
  int num_days = 0;
  int num_shifts = 0;

  std::map<std::string, int> patient_by_id;
  std::map<std::string, int> room_by_id;
  std::map<std::string, int> nurse_by_id;

  std::vector<std::vector<int>> nurses_on_shift;  // [shift] -> nurse indices

  std::vector<std::vector<double>> room_dist;  // [room][room]
  std::vector<std::vector<double>> add_dist;   // [additional][room]
  std::vector<double> star_dist;               // [room] = sum over additional rooms

  std::vector<double> wcirc;  // [shift]
  std::vector<double> wstar;  // [shift]

  // Per patient, all 1-based like the calendar.
  std::vector<int> first_day, last_day, first_shift, last_shift;
  std::vector<int> prev_room;               // room index or -1
  std::vector<std::set<int>> prev_nurses;   // nurse indices

  std::vector<std::vector<double>> workload;  // [patient][shift], 0 outside stay
  std::vector<std::vector<int>> skillreq;     // [patient][shift], 0 where undefined

  // equipment_ok[patient][day][room]: the room covers the patient's
  // requirement on that day's early shift.
  std::vector<std::vector<std::vector<bool>>> equipment_ok;

  std::vector<std::vector<double>> nurse_maxload;  // [nurse][shift], 0 off duty

  const Patient& patient(int p) const { return inst->patients[p]; }
  const Room& room(int r) const { return inst->rooms[r]; }
  const Nurse& nurse(int n) const { return inst->nurses[n]; }
  int num_patients() const { return static_cast<int>(inst->patients.size()); }
  int num_rooms() const { return static_cast<int>(inst->rooms.size()); }
  int num_nurses() const { return static_cast<int>(inst->nurses.size()); }

  bool patient_on_day(int p, int d) const {
    return first_day[p] <= d && d <= last_day[p];
  }
  bool patient_on_shift(int p, int s) const {
    return first_shift[p] <= s && s <= last_shift[p];
  }
};

// Throws StructuralError on dangling references. Callers wanting full
// validation should run validate_instance first; this only needs ids to
// resolve.
InstanceIndex build_index(const Instance& inst);

// Solution in index space. -1 marks a missing assignment; entries for
// unknown patients, rooms, nurses or out-of-calendar days are structural
// errors, entries outside the stay are kept for the feasibility check to
// report.
struct IndexedSolution {
  std::vector<std::vector<int>> room;   // [patient][day], -1 if unassigned
  std::vector<std::vector<int>> nurse;  // [patient][shift], -1 if unassigned
};

IndexedSolution index_solution(const InstanceIndex& idx, const Solution& sol);

}  // namespace iprnpa

#endif
