#ifndef IPRNPA_INSTANCE_HPP
#define IPRNPA_INSTANCE_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "iprnpa/calendar.hpp"

namespace iprnpa {

struct Room {
  std::string id;
  int num_beds = 0;
  std::set<std::string> equipment;  // subset of Instance::equipment_types

  bool operator==(const Room&) const = default;
};

// Pairwise distances between patient rooms and from additional rooms
// (nursing station, medication room, ...) to patient rooms. Symmetric,
// zero diagonal. Stored once per unordered pair.
class DistanceMatrix {
 public:
  void set_between_rooms(const std::string& a, const std::string& b, double d);
  void set_from_additional(const std::string& add, const std::string& room, double d);

  // Both throw StructuralError when the pair was never set.
  double between_rooms(const std::string& a, const std::string& b) const;
  double from_additional(const std::string& add, const std::string& room) const;

  bool has_between_rooms(const std::string& a, const std::string& b) const;
  bool has_from_additional(const std::string& add, const std::string& room) const;

  const std::map<std::pair<std::string, std::string>, double>& room_pairs() const {
    return room_room_;
  }
  const std::map<std::pair<std::string, std::string>, double>& additional_pairs() const {
    return add_room_;
  }

  bool operator==(const DistanceMatrix&) const = default;

 private:
  // room_room_ keys are sorted pairs, add_room_ keys are (additional, room).
  std::map<std::pair<std::string, std::string>, double> room_room_;
  std::map<std::pair<std::string, std::string>, double> add_room_;
};

struct Patient {
  std::string id;
  char gender = 'F';  // 'F' or 'M'
  int age = 0;

  // adshift is 0 (already on the ward when the horizon starts) or the early
  // shift of the admission day. dishift is the night shift of the discharge
  // day, or num_shifts+1 when the patient stays beyond the horizon.
  int adshift = 0;
  int dishift = 0;

  std::map<int, int> skillreq;                       // day shifts of the stay
  std::map<int, double> workload;                    // every in-ward shift
  std::map<int, std::set<std::string>> equipment_req;  // early shifts of the stay

  std::optional<std::string> prev_room;   // required iff adshift == 0
  std::set<std::string> prev_nurses;      // nurses seen before the horizon

  int agegroup() const { return age / 10; }

  bool in_ward(int shift) const { return adshift <= shift && shift <= dishift; }

  int first_shift() const { return adshift == 0 ? 1 : adshift; }
  int last_shift(const ShiftCalendar& cal) const {
    int s = cal.num_shifts();
    return dishift > s ? s : dishift;
  }
  int first_day(const ShiftCalendar& cal) const { return cal.day_of(first_shift()); }
  int last_day(const ShiftCalendar& cal) const { return cal.day_of(last_shift(cal)); }

  bool operator==(const Patient&) const = default;
};

struct Nurse {
  std::string id;
  int skill = 1;                   // 1 = trainee .. 3 = head nurse
  std::set<int> shifts;            // rostered shifts, at most one per day
  std::map<int, double> maxload;   // defined exactly on the rostered shifts

  bool works(int shift) const { return shifts.count(shift) != 0; }

  bool operator==(const Nurse&) const = default;
};

// Weights of the two walking terms per shift: circular scales the
// room-to-room tour part, star the additional-room spokes.
struct WalkWeights {
  std::map<int, double> circular;
  std::map<int, double> star;

  bool operator==(const WalkWeights&) const = default;
};

struct ObjectiveWeights {
  double transfers = 11.0;
  double inconvenience = 1.0;
  double gender = 5.0;
  double equipment = 5.0;
  double continuity = 1.0;
  double skill_load_fair = 5.0;
  double nurses_per_room = 2.0;
  double walking = 0.05;
  // Only the greedy heuristic prices heterogeneity; the objective above
  // never includes it.
  double heterogeneity = 1.0;

  bool operator==(const ObjectiveWeights&) const = default;
};

struct Instance {
  int schema_version = 1;
  int num_days = 0;
  std::vector<std::string> equipment_types;
  std::vector<Room> rooms;
  std::vector<std::string> additional_rooms;
  DistanceMatrix distances;
  std::vector<Patient> patients;
  std::vector<Nurse> nurses;
  WalkWeights walk_weights;
  ObjectiveWeights weights;

  ShiftCalendar calendar() const { return ShiftCalendar(num_days); }
  int total_beds() const;

  bool operator==(const Instance&) const = default;
};

// room_of maps (patient id, day) to a room id for every in-ward day,
// nurse_of maps (patient id, shift) to a nurse id for every in-ward shift.
struct Solution {
  std::string instance_ref;
  std::map<std::pair<std::string, int>, std::string> room_of;
  std::map<std::pair<std::string, int>, std::string> nurse_of;

  bool operator==(const Solution&) const = default;
};

}  // namespace iprnpa

#endif
