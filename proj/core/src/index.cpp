#include "iprnpa/index.hpp"

#include <algorithm>

#include "iprnpa/errors.hpp"

namespace iprnpa {

InstanceIndex build_index(const Instance& inst) {
  InstanceIndex idx;
  idx.inst = &inst;
  ShiftCalendar cal = inst.calendar();
  idx.num_days = cal.num_days();
  idx.num_shifts = cal.num_shifts();
  const int S = idx.num_shifts;

  for (size_t i = 0; i < inst.patients.size(); ++i) {
    idx.patient_by_id[inst.patients[i].id] = static_cast<int>(i);
  }
  for (size_t i = 0; i < inst.rooms.size(); ++i) {
    idx.room_by_id[inst.rooms[i].id] = static_cast<int>(i);
  }
  for (size_t i = 0; i < inst.nurses.size(); ++i) {
    idx.nurse_by_id[inst.nurses[i].id] = static_cast<int>(i);
  }

  idx.nurses_on_shift.assign(S + 1, {});
  idx.nurse_maxload.assign(inst.nurses.size(), std::vector<double>(S + 1, 0.0));
  for (size_t n = 0; n < inst.nurses.size(); ++n) {
    for (int s : inst.nurses[n].shifts) {
      idx.nurses_on_shift[s].push_back(static_cast<int>(n));
      auto it = inst.nurses[n].maxload.find(s);
      if (it != inst.nurses[n].maxload.end()) idx.nurse_maxload[n][s] = it->second;
    }
  }

  const int R = idx.num_rooms();
  idx.room_dist.assign(R, std::vector<double>(R, 0.0));
  for (int a = 0; a < R; ++a) {
    for (int b = a + 1; b < R; ++b) {
      double d = inst.distances.between_rooms(inst.rooms[a].id, inst.rooms[b].id);
      idx.room_dist[a][b] = d;
      idx.room_dist[b][a] = d;
    }
  }
  const int A = static_cast<int>(inst.additional_rooms.size());
  idx.add_dist.assign(A, std::vector<double>(R, 0.0));
  idx.star_dist.assign(R, 0.0);
  for (int a = 0; a < A; ++a) {
    for (int r = 0; r < R; ++r) {
      double d = inst.distances.from_additional(inst.additional_rooms[a],
                                                inst.rooms[r].id);
      idx.add_dist[a][r] = d;
      idx.star_dist[r] += d;
    }
  }

  idx.wcirc.assign(S + 1, 0.0);
  idx.wstar.assign(S + 1, 0.0);
  for (int s = 1; s <= S; ++s) {
    auto c = inst.walk_weights.circular.find(s);
    if (c != inst.walk_weights.circular.end()) idx.wcirc[s] = c->second;
    auto t = inst.walk_weights.star.find(s);
    if (t != inst.walk_weights.star.end()) idx.wstar[s] = t->second;
  }

  const int P = idx.num_patients();
  idx.first_day.resize(P);
  idx.last_day.resize(P);
  idx.first_shift.resize(P);
  idx.last_shift.resize(P);
  idx.prev_room.assign(P, -1);
  idx.prev_nurses.resize(P);
  idx.workload.assign(P, std::vector<double>(S + 1, 0.0));
  idx.skillreq.assign(P, std::vector<int>(S + 1, 0));
  idx.equipment_ok.resize(P);

  for (int p = 0; p < P; ++p) {
    const Patient& pat = inst.patients[p];
    idx.first_shift[p] = pat.first_shift();
    idx.last_shift[p] = pat.last_shift(cal);
    idx.first_day[p] = cal.day_of(idx.first_shift[p]);
    idx.last_day[p] = cal.day_of(idx.last_shift[p]);

    if (pat.prev_room) {
      auto it = idx.room_by_id.find(*pat.prev_room);
      if (it == idx.room_by_id.end()) {
        throw StructuralError("patient " + pat.id + ": prev_room " + *pat.prev_room +
                              " is not a room");
      }
      idx.prev_room[p] = it->second;
    }
    for (const std::string& n : pat.prev_nurses) {
      auto it = idx.nurse_by_id.find(n);
      if (it == idx.nurse_by_id.end()) {
        throw StructuralError("patient " + pat.id + ": prev_nurse " + n +
                              " is not a nurse");
      }
      idx.prev_nurses[p].insert(it->second);
    }

    for (const auto& [s, v] : pat.workload) {
      if (s >= 1 && s <= S) idx.workload[p][s] = v;
    }
    for (const auto& [s, v] : pat.skillreq) {
      if (s >= 1 && s <= S) idx.skillreq[p][s] = v;
    }

    idx.equipment_ok[p].assign(idx.num_days + 1, std::vector<bool>(R, true));
    for (int d = idx.first_day[p]; d <= idx.last_day[p]; ++d) {
      auto it = pat.equipment_req.find(cal.early_shift(d));
      if (it == pat.equipment_req.end() || it->second.empty()) continue;
      for (int r = 0; r < R; ++r) {
        bool ok = std::includes(inst.rooms[r].equipment.begin(),
                                inst.rooms[r].equipment.end(), it->second.begin(),
                                it->second.end());
        idx.equipment_ok[p][d][r] = ok;
      }
    }
  }

  return idx;
}

IndexedSolution index_solution(const InstanceIndex& idx, const Solution& sol) {
  IndexedSolution out;
  out.room.assign(idx.num_patients(), std::vector<int>(idx.num_days + 1, -1));
  out.nurse.assign(idx.num_patients(), std::vector<int>(idx.num_shifts + 1, -1));

  for (const auto& [key, room] : sol.room_of) {
    auto pit = idx.patient_by_id.find(key.first);
    if (pit == idx.patient_by_id.end()) {
      throw StructuralError("solution: unknown patient " + key.first);
    }
    if (key.second < 1 || key.second > idx.num_days) {
      throw StructuralError("solution: day " + std::to_string(key.second) +
                            " outside the calendar for patient " + key.first);
    }
    auto rit = idx.room_by_id.find(room);
    if (rit == idx.room_by_id.end()) {
      throw StructuralError("solution: unknown room " + room);
    }
    out.room[pit->second][key.second] = rit->second;
  }

  for (const auto& [key, nurse] : sol.nurse_of) {
    auto pit = idx.patient_by_id.find(key.first);
    if (pit == idx.patient_by_id.end()) {
      throw StructuralError("solution: unknown patient " + key.first);
    }
    if (key.second < 1 || key.second > idx.num_shifts) {
      throw StructuralError("solution: shift " + std::to_string(key.second) +
                            " outside the calendar for patient " + key.first);
    }
    auto nit = idx.nurse_by_id.find(nurse);
    if (nit == idx.nurse_by_id.end()) {
      throw StructuralError("solution: unknown nurse " + nurse);
    }
    out.nurse[pit->second][key.second] = nit->second;
  }

  return out;
}

}  // namespace iprnpa
