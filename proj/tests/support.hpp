#ifndef IPRNPA_TESTS_SUPPORT_HPP
#define IPRNPA_TESTS_SUPPORT_HPP

// Shared fixtures: a compact hand-built ward builder and a uniform random
// feasible-solution sampler. Both are used by the unit tests and the
// acceptance checks, so changes here affect frozen expectations.

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "iprnpa/index.hpp"
#include "iprnpa/instance.hpp"
#include "iprnpa/instgen.hpp"

namespace testsupport {

using namespace iprnpa;

// Patient with complete per-shift maps: `load` on every stay shift,
// skill requirement `req` on day shifts, empty equipment demands.
inline Patient make_patient(const std::string& id, char gender, int age, int adshift,
                            int dishift, int num_days, double load = 1.0, int req = 0) {
  ShiftCalendar cal(num_days);
  Patient p;
  p.id = id;
  p.gender = gender;
  p.age = age;
  p.adshift = adshift;
  p.dishift = dishift;
  for (int s = p.first_shift(); s <= p.last_shift(cal); ++s) {
    p.workload[s] = load;
    if (!cal.is_night(s)) p.skillreq[s] = req;
    if (cal.is_early(s)) p.equipment_req[s] = {};
  }
  return p;
}

inline Nurse make_nurse(const std::string& id, int skill, const std::set<int>& shifts,
                        double maxload = 10.0) {
  Nurse n;
  n.id = id;
  n.skill = skill;
  n.shifts = shifts;
  for (int s : shifts) n.maxload[s] = maxload;
  return n;
}

// Hand-ward builder. Distances default to 1 between every pair and from the
// station to every room; override them before build(). Walk weights default
// to 1/1 on every shift.
class WardBuilder {
 public:
  explicit WardBuilder(int num_days) {
    inst_.num_days = num_days;
    inst_.additional_rooms = {"station"};
  }

  WardBuilder& room(const std::string& id, int beds,
                    const std::set<std::string>& equipment = {}) {
    inst_.rooms.push_back({id, beds, equipment});
    for (const std::string& e : equipment) equipment_types_.insert(e);
    return *this;
  }

  WardBuilder& nurse(const Nurse& n) {
    inst_.nurses.push_back(n);
    return *this;
  }

  // One nurse per shift slot over the whole horizon: <prefix>e, <prefix>l,
  // <prefix>n rostered on all early / late / night shifts.
  WardBuilder& full_cover(const std::string& prefix, int skill = 3,
                          double maxload = 10.0) {
    ShiftCalendar cal(inst_.num_days);
    std::set<int> es, ls, ns;
    for (int d = 1; d <= inst_.num_days; ++d) {
      es.insert(cal.early_shift(d));
      ls.insert(cal.late_shift(d));
      ns.insert(cal.night_shift(d));
    }
    inst_.nurses.push_back(make_nurse(prefix + "e", skill, es, maxload));
    inst_.nurses.push_back(make_nurse(prefix + "l", skill, ls, maxload));
    inst_.nurses.push_back(make_nurse(prefix + "n", skill, ns, maxload));
    return *this;
  }

  WardBuilder& patient(const Patient& p) {
    inst_.patients.push_back(p);
    return *this;
  }

  WardBuilder& dist(const std::string& a, const std::string& b, double d) {
    dist_override_[{a, b}] = d;
    return *this;
  }

  WardBuilder& star(const std::string& room, double d) {
    star_override_[room] = d;
    return *this;
  }

  WardBuilder& walk(double circ, double star) {
    circ_ = circ;
    star_ = star;
    return *this;
  }

  Instance build() const {
    Instance inst = inst_;
    inst.equipment_types.assign(equipment_types_.begin(), equipment_types_.end());
    for (size_t i = 0; i < inst.rooms.size(); ++i) {
      for (size_t j = i + 1; j < inst.rooms.size(); ++j) {
        inst.distances.set_between_rooms(inst.rooms[i].id, inst.rooms[j].id,
                                         pair_dist(inst.rooms[i].id, inst.rooms[j].id));
      }
      auto it = star_override_.find(inst.rooms[i].id);
      inst.distances.set_from_additional("station", inst.rooms[i].id,
                                         it == star_override_.end() ? 1.0 : it->second);
    }
    for (int s = 1; s <= 3 * inst.num_days; ++s) {
      inst.walk_weights.circular[s] = circ_;
      inst.walk_weights.star[s] = star_;
    }
    return inst;
  }

 private:
  double pair_dist(const std::string& a, const std::string& b) const {
    auto it = dist_override_.find({a, b});
    if (it != dist_override_.end()) return it->second;
    it = dist_override_.find({b, a});
    if (it != dist_override_.end()) return it->second;
    return 1.0;
  }

  Instance inst_;
  std::set<std::string> equipment_types_;
  std::map<std::pair<std::string, std::string>, double> dist_override_;
  std::map<std::string, double> star_override_;
  double circ_ = 1.0;
  double star_ = 1.0;
};

// Uniform feasible solution: every in-ward (patient, day) gets a uniformly
// random room among those with a free bed, every in-ward (patient, shift) a
// uniformly random rostered nurse. Valid instances always admit one.
inline Solution random_feasible_solution(const Instance& inst, std::mt19937& rng) {
  InstanceIndex idx = build_index(inst);
  Solution sol;
  for (int d = 1; d <= idx.num_days; ++d) {
    std::vector<int> free_beds(idx.num_rooms());
    for (int r = 0; r < idx.num_rooms(); ++r) free_beds[r] = idx.room(r).num_beds;
    for (int p = 0; p < idx.num_patients(); ++p) {
      if (!idx.patient_on_day(p, d)) continue;
      std::vector<int> options;
      for (int r = 0; r < idx.num_rooms(); ++r) {
        if (free_beds[r] > 0) options.push_back(r);
      }
      int r = options[std::uniform_int_distribution<size_t>(0, options.size() - 1)(rng)];
      --free_beds[r];
      sol.room_of[{idx.patient(p).id, d}] = idx.room(r).id;
    }
  }
  for (int p = 0; p < idx.num_patients(); ++p) {
    for (int s = idx.first_shift[p]; s <= idx.last_shift[p]; ++s) {
      const std::vector<int>& cands = idx.nurses_on_shift[s];
      int n = cands[std::uniform_int_distribution<size_t>(0, cands.size() - 1)(rng)];
      sol.nurse_of[{idx.patient(p).id, s}] = idx.nurse(n).id;
    }
  }
  return sol;
}

inline Instance tiny_instance(unsigned seed) {
  return generate_instance(preset_config("tiny"), seed);
}

}  // namespace testsupport

#endif
