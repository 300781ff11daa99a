#include "iprnpa/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "iprnpa/errors.hpp"

namespace iprnpa {

double weighted_total(const ObjectiveBreakdown& b, const ObjectiveWeights& w) {
  return w.transfers * b.transfers + w.inconvenience * b.inconvenience +
         w.gender * b.gender_mix + w.equipment * b.equipment_viol +
         w.continuity * b.continuity +
         w.skill_load_fair *
             (b.skill_viol + b.load_viol + b.fairness_shift + b.fairness_overall) +
         w.nurses_per_room * b.nurses_per_room + w.walking * b.walking;
}

std::string FeasibilityReport::to_string() const {
  if (feasible()) return "feasible";
  std::ostringstream out;
  out << violations.size() << " feasibility violations:";
  for (const FeasibilityViolation& v : violations) {
    out << "\n  [" << v.rule << "] " << v.detail;
  }
  return out.str();
}

namespace detail {

FeasibilityReport check_feasibility(const InstanceIndex& idx,
                                    const IndexedSolution& s) {
  FeasibilityReport rep;

  for (int p = 0; p < idx.num_patients(); ++p) {
    const std::string& pid = idx.patient(p).id;
    for (int d = 1; d <= idx.num_days; ++d) {
      bool in = idx.patient_on_day(p, d);
      int r = s.room[p][d];
      if (in && r < 0) {
        rep.violations.push_back({"room-assignment", "patient " + pid + " has no room on day " +
                                                         std::to_string(d)});
      } else if (!in && r >= 0) {
        rep.violations.push_back({"room-assignment", "patient " + pid +
                                                         " assigned room " +
                                                         idx.room(r).id + " on day " +
                                                         std::to_string(d) +
                                                         " outside the stay"});
      }
    }
    for (int sh = 1; sh <= idx.num_shifts; ++sh) {
      bool in = idx.patient_on_shift(p, sh);
      int n = s.nurse[p][sh];
      if (in && n < 0) {
        rep.violations.push_back({"nurse-assignment", "patient " + pid + " has no nurse on shift " +
                                                          std::to_string(sh)});
      } else if (!in && n >= 0) {
        rep.violations.push_back({"nurse-assignment", "patient " + pid +
                                                          " assigned nurse " +
                                                          idx.nurse(n).id + " on shift " +
                                                          std::to_string(sh) +
                                                          " outside the stay"});
      } else if (in && n >= 0 && !idx.nurse(n).works(sh)) {
        rep.violations.push_back({"nurse-roster", "nurse " + idx.nurse(n).id +
                                                      " is not rostered on shift " +
                                                      std::to_string(sh) +
                                                      " but assigned patient " + pid});
      }
    }
  }

  for (int d = 1; d <= idx.num_days; ++d) {
    std::vector<int> occupants(idx.num_rooms(), 0);
    for (int p = 0; p < idx.num_patients(); ++p) {
      int r = s.room[p][d];
      if (r >= 0 && idx.patient_on_day(p, d)) ++occupants[r];
    }
    for (int r = 0; r < idx.num_rooms(); ++r) {
      if (occupants[r] > idx.room(r).num_beds) {
        rep.violations.push_back({"room-capacity", "room " + idx.room(r).id + " holds " +
                                                       std::to_string(occupants[r]) +
                                                       " patients on day " +
                                                       std::to_string(d) + " but has " +
                                                       std::to_string(idx.room(r).num_beds) +
                                                       " beds"});
      }
    }
  }
  return rep;
}

int transfers(const InstanceIndex& idx, const IndexedSolution& s) {
  int count = 0;
  for (int p = 0; p < idx.num_patients(); ++p) {
    if (idx.patient(p).adshift == 0 && idx.prev_room[p] >= 0) {
      int r = s.room[p][idx.first_day[p]];
      if (r >= 0 && r != idx.prev_room[p]) ++count;
    }
    for (int d = idx.first_day[p] + 1; d <= idx.last_day[p]; ++d) {
      int prev = s.room[p][d - 1];
      int cur = s.room[p][d];
      if (prev >= 0 && cur >= 0 && prev != cur) ++count;
    }
  }
  return count;
}

namespace {

// Agegroup extremes and gender presence per (room, day).
struct RoomDayStats {
  std::vector<std::vector<int>> agemin, agemax;  // [room][day], -1 when empty
  std::vector<std::vector<bool>> has_f, has_m;
};

RoomDayStats room_day_stats(const InstanceIndex& idx, const IndexedSolution& s) {
  RoomDayStats st;
  const int R = idx.num_rooms();
  const int D = idx.num_days;
  st.agemin.assign(R, std::vector<int>(D + 1, -1));
  st.agemax.assign(R, std::vector<int>(D + 1, -1));
  st.has_f.assign(R, std::vector<bool>(D + 1, false));
  st.has_m.assign(R, std::vector<bool>(D + 1, false));
  for (int p = 0; p < idx.num_patients(); ++p) {
    int ag = idx.patient(p).agegroup();
    bool female = idx.patient(p).gender == 'F';
    for (int d = idx.first_day[p]; d <= idx.last_day[p]; ++d) {
      int r = s.room[p][d];
      if (r < 0) continue;
      int& lo = st.agemin[r][d];
      int& hi = st.agemax[r][d];
      lo = lo < 0 ? ag : std::min(lo, ag);
      hi = hi < 0 ? ag : std::max(hi, ag);
      (female ? st.has_f : st.has_m)[r][d] = true;
    }
  }
  return st;
}

}  // namespace

int inconvenience(const InstanceIndex& idx, const IndexedSolution& s) {
  RoomDayStats st = room_day_stats(idx, s);
  int sum = 0;
  for (int r = 0; r < idx.num_rooms(); ++r) {
    for (int d = 1; d <= idx.num_days; ++d) {
      if (st.agemax[r][d] >= 0) sum += st.agemax[r][d] - st.agemin[r][d];
    }
  }
  return sum;
}

int gender_mix(const InstanceIndex& idx, const IndexedSolution& s) {
  RoomDayStats st = room_day_stats(idx, s);
  int count = 0;
  for (int r = 0; r < idx.num_rooms(); ++r) {
    for (int d = 1; d <= idx.num_days; ++d) {
      if (st.has_f[r][d] && st.has_m[r][d]) ++count;
    }
  }
  return count;
}

int equipment(const InstanceIndex& idx, const IndexedSolution& s) {
  int count = 0;
  for (int p = 0; p < idx.num_patients(); ++p) {
    for (int d = idx.first_day[p]; d <= idx.last_day[p]; ++d) {
      int r = s.room[p][d];
      if (r >= 0 && !idx.equipment_ok[p][d][r]) ++count;
    }
  }
  return count;
}

int continuity(const InstanceIndex& idx, const IndexedSolution& s) {
  int count = 0;
  for (int p = 0; p < idx.num_patients(); ++p) {
    std::set<int> seen;
    for (int sh = idx.first_shift[p]; sh <= idx.last_shift[p]; ++sh) {
      int n = s.nurse[p][sh];
      if (n >= 0) seen.insert(n);
    }
    for (int n : seen) {
      if (!idx.prev_nurses[p].count(n)) ++count;
    }
  }
  return count;
}

int skill_violations(const InstanceIndex& idx, const IndexedSolution& s) {
  ShiftCalendar cal = idx.inst->calendar();
  int count = 0;
  for (int p = 0; p < idx.num_patients(); ++p) {
    for (int sh = idx.first_shift[p]; sh <= idx.last_shift[p]; ++sh) {
      if (cal.is_night(sh)) continue;
      int req = idx.skillreq[p][sh];
      if (req < 2) continue;  // only the highest requirement can be violated
      int n = s.nurse[p][sh];
      if (n >= 0 && idx.nurse(n).skill < req) ++count;
    }
  }
  return count;
}

std::vector<double> shift_relloads(const InstanceIndex& idx, const IndexedSolution& s,
                                   int shift) {
  std::vector<double> rel(idx.num_nurses(), 0.0);
  for (int p = 0; p < idx.num_patients(); ++p) {
    int n = s.nurse[p][shift];
    if (n >= 0) rel[n] += idx.workload[p][shift];
  }
  for (int n : idx.nurses_on_shift[shift]) {
    double cap = idx.nurse_maxload[n][shift];
    rel[n] = cap > 0.0 ? rel[n] / cap : 0.0;
  }
  return rel;
}

double load_violations(const InstanceIndex& idx, const IndexedSolution& s) {
  double sum = 0.0;
  for (int sh = 1; sh <= idx.num_shifts; ++sh) {
    std::vector<double> load(idx.num_nurses(), 0.0);
    for (int p = 0; p < idx.num_patients(); ++p) {
      int n = s.nurse[p][sh];
      if (n >= 0) load[n] += idx.workload[p][sh];
    }
    for (int n : idx.nurses_on_shift[sh]) {
      sum += std::max(0.0, load[n] - idx.nurse_maxload[n][sh]);
    }
  }
  return sum;
}

std::pair<double, double> fairness(const InstanceIndex& idx, const IndexedSolution& s) {
  double per_shift = 0.0;
  std::vector<double> total(idx.num_nurses(), 0.0);
  for (int sh = 1; sh <= idx.num_shifts; ++sh) {
    std::vector<double> rel = shift_relloads(idx, s, sh);
    const std::vector<int>& on = idx.nurses_on_shift[sh];
    for (int a : on) {
      total[a] += rel[a];
      for (int b : on) {
        if (a != b) per_shift += std::max(0.0, rel[a] - rel[b]);
      }
    }
  }
  double overall = 0.0;
  for (int a = 0; a < idx.num_nurses(); ++a) {
    for (int b = 0; b < idx.num_nurses(); ++b) {
      if (a != b) overall += std::max(0.0, total[a] - total[b]);
    }
  }
  return {per_shift, overall};
}

namespace {

// Rooms a nurse serves on a shift; patients are housed per day, so the
// shift's room is the room of that shift's day.
std::vector<std::set<int>> rooms_visited_on_shift(const InstanceIndex& idx,
                                                  const IndexedSolution& s, int shift) {
  ShiftCalendar cal = idx.inst->calendar();
  int day = cal.day_of(shift);
  std::vector<std::set<int>> visited(idx.num_nurses());
  for (int p = 0; p < idx.num_patients(); ++p) {
    int n = s.nurse[p][shift];
    if (n < 0) continue;
    int r = s.room[p][day];
    if (r >= 0) visited[n].insert(r);
  }
  return visited;
}

}  // namespace

int nurses_per_room(const InstanceIndex& idx, const IndexedSolution& s) {
  int count = 0;
  for (int sh = 1; sh <= idx.num_shifts; ++sh) {
    for (const std::set<int>& rooms : rooms_visited_on_shift(idx, s, sh)) {
      count += static_cast<int>(rooms.size());
    }
  }
  return count;
}

double walking(const InstanceIndex& idx, const IndexedSolution& s) {
  double sum = 0.0;
  for (int sh = 1; sh <= idx.num_shifts; ++sh) {
    std::vector<std::set<int>> visited = rooms_visited_on_shift(idx, s, sh);
    for (int n : idx.nurses_on_shift[sh]) {
      const std::set<int>& rooms = visited[n];
      double circ = 0.0, star = 0.0;
      for (auto it = rooms.begin(); it != rooms.end(); ++it) {
        for (auto jt = std::next(it); jt != rooms.end(); ++jt) {
          circ += idx.room_dist[*it][*jt];
        }
        star += idx.star_dist[*it];
      }
      sum += idx.wcirc[sh] * circ + idx.wstar[sh] * star;
    }
  }
  return sum;
}

ObjectiveBreakdown eval_breakdown(const InstanceIndex& idx, const IndexedSolution& s) {
  ObjectiveBreakdown b;
  b.transfers = transfers(idx, s);
  b.inconvenience = inconvenience(idx, s);
  b.gender_mix = gender_mix(idx, s);
  b.equipment_viol = equipment(idx, s);
  b.continuity = continuity(idx, s);
  b.skill_viol = skill_violations(idx, s);
  b.load_viol = load_violations(idx, s);
  std::tie(b.fairness_shift, b.fairness_overall) = fairness(idx, s);
  b.nurses_per_room = nurses_per_room(idx, s);
  b.walking = walking(idx, s);
  b.weighted_total = weighted_total(b, idx.inst->weights);
  return b;
}

}  // namespace detail

FeasibilityReport check_feasibility(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  return detail::check_feasibility(idx, index_solution(idx, sol));
}

int eval_transfers(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  return detail::transfers(idx, index_solution(idx, sol));
}
int eval_inconvenience(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  return detail::inconvenience(idx, index_solution(idx, sol));
}
int eval_gender_mix(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  return detail::gender_mix(idx, index_solution(idx, sol));
}
int eval_equipment(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  return detail::equipment(idx, index_solution(idx, sol));
}
int eval_continuity(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  return detail::continuity(idx, index_solution(idx, sol));
}
int eval_skill_violations(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  return detail::skill_violations(idx, index_solution(idx, sol));
}
double eval_load_violations(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  return detail::load_violations(idx, index_solution(idx, sol));
}
std::pair<double, double> eval_fairness(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  return detail::fairness(idx, index_solution(idx, sol));
}
int eval_nurses_per_room(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  return detail::nurses_per_room(idx, index_solution(idx, sol));
}
double eval_walking(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  return detail::walking(idx, index_solution(idx, sol));
}

ObjectiveBreakdown eval_total(const Instance& inst, const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  IndexedSolution s = index_solution(idx, sol);
  FeasibilityReport rep = detail::check_feasibility(idx, s);
  if (!rep.feasible()) {
    throw InfeasibleError("solution is infeasible: " + rep.to_string());
  }
  return detail::eval_breakdown(idx, s);
}

}  // namespace iprnpa
