#include "iprnpa/heuristic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "iprnpa/errors.hpp"
#include "iprnpa/validate.hpp"

namespace iprnpa {

HeterogeneityMatrix::HeterogeneityMatrix(int num_patients) : n_(num_patients) {
  upper_.assign(static_cast<size_t>(n_) * (n_ - 1) / 2, 0.0);
}

double HeterogeneityMatrix::het(int p1, int p2) const {
  if (p1 == p2) return 0.0;
  if (p1 > p2) std::swap(p1, p2);
  return upper_[static_cast<size_t>(p1) * n_ - static_cast<size_t>(p1) * (p1 + 1) / 2 +
                (p2 - p1 - 1)];
}

void HeterogeneityMatrix::set(int p1, int p2, double value) {
  if (p1 == p2) throw StructuralError("heterogeneity is only defined for pairs");
  if (p1 > p2) std::swap(p1, p2);
  upper_[static_cast<size_t>(p1) * n_ - static_cast<size_t>(p1) * (p1 + 1) / 2 +
         (p2 - p1 - 1)] = value;
}

HeterogeneityMatrix build_het_matrix(const std::vector<Patient>& patients) {
  int n = static_cast<int>(patients.size());
  HeterogeneityMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int diff = std::abs(patients[i].dishift - patients[j].dishift);
      // ln 1 is zero as well, so only equal discharges need the special case
      out.set(i, j, diff == 0 ? 0.0 : std::log(static_cast<double>(diff)));
    }
  }
  return out;
}

PartialState::PartialState(const InstanceIndex& index) : idx(&index) {
  int P = idx->num_patients(), N = idx->num_nurses(), R = idx->num_rooms();
  sol.room.assign(P, std::vector<int>(idx->num_days + 1, -1));
  sol.nurse.assign(P, std::vector<int>(idx->num_shifts + 1, -1));
  load.assign(N, std::vector<double>(idx->num_shifts + 1, 0.0));
  total_rel.assign(N, 0.0);
  ever.resize(P);
  for (int p = 0; p < P; ++p) ever[p] = idx->prev_nurses[p];
  occupants.assign(idx->num_days + 1, std::vector<std::vector<int>>(R));
  visited.assign(N, std::vector<std::set<int>>(idx->num_shifts + 1));
}

void PartialState::fix(int patient, int day, const NurseTriple& nc, int room) {
  if (sol.room[patient][day] >= 0) {
    throw std::logic_error("patient already placed on this day");
  }
  sol.room[patient][day] = room;
  occupants[day][room].push_back(patient);
  for (int slot = 0; slot < 3; ++slot) {
    int s = 3 * day - 2 + slot;
    int n = nc[slot];
    sol.nurse[patient][s] = n;
    double w = idx->workload[patient][s];
    load[n][s] += w;
    total_rel[n] += w / idx->nurse_maxload[n][s];
    visited[n][s].insert(room);
    ever[patient].insert(n);
  }
}

namespace {

// Room-coupled terms: transfer, age inconvenience, gender mixing, equipment
// and the heterogeneity guidance value, all weighted.
double room_part(const PartialState& st, const HeterogeneityMatrix& het, int day,
                 int p, int r) {
  const InstanceIndex& idx = *st.idx;
  const ObjectiveWeights& w = idx.inst->weights;
  double out = 0.0;
  if (day > idx.first_day[p]) {
    int prev = st.sol.room[p][day - 1];
    if (prev >= 0 && prev != r) out += w.transfers;
  } else if (idx.patient(p).adshift == 0 && idx.prev_room[p] != r) {
    out += w.transfers;
  }
  if (!idx.equipment_ok[p][day][r]) out += w.equipment;
  const std::vector<int>& occ = st.occupants[day][r];
  if (!occ.empty()) {
    int ag = idx.patient(p).agegroup();
    int cmin = idx.patient(occ[0]).agegroup(), cmax = cmin;
    bool f = false, m = false;
    double h = 0.0;
    for (int o : occ) {
      int a = idx.patient(o).agegroup();
      cmin = std::min(cmin, a);
      cmax = std::max(cmax, a);
      (idx.patient(o).gender == 'F' ? f : m) = true;
      h = std::max(h, het.het(p, o));
    }
    out += w.inconvenience *
           ((std::max(cmax, ag) - std::min(cmin, ag)) - (cmax - cmin));
    bool pf = idx.patient(p).gender == 'F';
    if (!(f && m) && ((f || pf) && (m || !pf))) out += w.gender;
    out += w.heterogeneity * h;
  }
  return out;
}

// Nurse-coupled terms that involve only one (nurse, shift): continuity,
// skill and workload overflow, weighted.
double slot_part(const PartialState& st, int p, int s, int n) {
  const InstanceIndex& idx = *st.idx;
  const ObjectiveWeights& w = idx.inst->weights;
  double out = 0.0;
  if (!st.ever[p].count(n)) out += w.continuity;
  int req = idx.skillreq[p][s];  // zero on night shifts
  if (req >= 2 && idx.nurse(n).skill < req) out += w.skill_load_fair;
  double delta = idx.workload[p][s];
  double l = st.load[n][s], ml = idx.nurse_maxload[n][s];
  out += w.skill_load_fair * (std::max(0.0, l + delta - ml) - std::max(0.0, l - ml));
  return out;
}

// Room-and-nurse terms: one more visited room costs a nurses-per-room unit
// plus circular distances to the rooms already visited and the star spoke.
double visit_part(const PartialState& st, int n, int s, int r) {
  const InstanceIndex& idx = *st.idx;
  const std::set<int>& v = st.visited[n][s];
  if (v.count(r)) return 0.0;
  double walk = idx.wstar[s] * idx.star_dist[r];
  for (int o : v) walk += idx.wcirc[s] * idx.room_dist[o][r];
  return idx.inst->weights.nurses_per_room + idx.inst->weights.walking * walk;
}

// Change of the per-shift fairness sum when nurse n alone takes p's load on
// shift s. Only pairs involving n move.
double f1_shift_term(const PartialState& st, int p, int s, int n) {
  const InstanceIndex& idx = *st.idx;
  double ml = idx.nurse_maxload[n][s];
  double rel = st.load[n][s] / ml;
  double bumped = (st.load[n][s] + idx.workload[p][s]) / ml;
  double out = 0.0;
  for (int b : idx.nurses_on_shift[s]) {
    if (b == n) continue;
    double rb = st.load[b][s] / idx.nurse_maxload[b][s];
    out += std::max(0.0, bumped - rb) - std::max(0.0, rel - rb);
    out += std::max(0.0, rb - bumped) - std::max(0.0, rb - rel);
  }
  return out;
}

// Same for the overall fairness sum, with every partner's total held fixed.
double f1_overall_term(const PartialState& st, int p, int s, int n) {
  const InstanceIndex& idx = *st.idx;
  double t = st.total_rel[n];
  double bumped = t + idx.workload[p][s] / idx.nurse_maxload[n][s];
  double out = 0.0;
  for (int b = 0; b < idx.num_nurses(); ++b) {
    if (b == n) continue;
    double tb = st.total_rel[b];
    out += std::max(0.0, bumped - tb) - std::max(0.0, t - tb);
    out += std::max(0.0, tb - bumped) - std::max(0.0, tb - t);
  }
  return out;
}

// The three nurses of a triple are bumped together; the per-nurse f1 sums
// treat the other two as unloaded partners, so the six ordered pairs inside
// the triple need their joint value restored.
double fair_correction(const PartialState& st, int p, const std::array<int, 3>& shifts,
                       const NurseTriple& nc) {
  const InstanceIndex& idx = *st.idx;
  double t[3], d[3];
  for (int slot = 0; slot < 3; ++slot) {
    int n = nc[slot], s = shifts[slot];
    t[slot] = st.total_rel[n];
    d[slot] = idx.workload[p][s] / idx.nurse_maxload[n][s];
  }
  double out = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      double base = std::max(0.0, t[a] - t[b]);
      double joint = std::max(0.0, t[a] + d[a] - t[b] - d[b]) - base;
      double stale = (std::max(0.0, t[a] + d[a] - t[b]) - base) +
                     (std::max(0.0, t[a] - t[b] - d[b]) - base);
      out += joint - stale;
    }
  }
  return out;
}

double fair_part(const PartialState& st, int p, const std::array<int, 3>& shifts,
                 const NurseTriple& nc) {
  double out = fair_correction(st, p, shifts, nc);
  for (int slot = 0; slot < 3; ++slot) {
    out += f1_shift_term(st, p, shifts[slot], nc[slot]);
    out += f1_overall_term(st, p, shifts[slot], nc[slot]);
  }
  return st.idx->inst->weights.skill_load_fair * out;
}

bool id_less(const InstanceIndex& idx, const TableEntry& a, const TableEntry& b) {
  if (a.patient != b.patient) {
    return idx.patient(a.patient).id < idx.patient(b.patient).id;
  }
  if (a.room != b.room) return idx.room(a.room).id < idx.room(b.room).id;
  for (int slot = 0; slot < 3; ++slot) {
    if (a.nurses[slot] != b.nurses[slot]) {
      return idx.nurse(a.nurses[slot]).id < idx.nurse(b.nurses[slot]).id;
    }
  }
  return false;
}

}  // namespace

double calc_contribution(int patient, const NurseTriple& nc, int room, int day,
                         const PartialState& st, const HeterogeneityMatrix& het) {
  std::array<int, 3> shifts{3 * day - 2, 3 * day - 1, 3 * day};
  double out = room_part(st, het, day, patient, room);
  for (int slot = 0; slot < 3; ++slot) {
    out += slot_part(st, patient, shifts[slot], nc[slot]);
    out += visit_part(st, nc[slot], shifts[slot], room);
  }
  return out + fair_part(st, patient, shifts, nc);
}

void ContributionTable::rebuild_fair_memos(const PartialState& st) {
  int N = idx_->num_nurses();
  for (int slot = 0; slot < 3; ++slot) {
    int s = shifts_[slot];
    for (int p = 0; p < idx_->num_patients(); ++p) {
      int row = memo_row_[p];
      if (row < 0) continue;
      for (int n : idx_->nurses_on_shift[s]) {
        f1_shift_[slot][static_cast<size_t>(row) * N + n] = f1_shift_term(st, p, s, n);
        f1_over_[slot][static_cast<size_t>(row) * N + n] = f1_overall_term(st, p, s, n);
      }
    }
  }
}

double ContributionTable::fair_of(int patient, const NurseTriple& nc,
                                  const PartialState& st) const {
  int N = idx_->num_nurses();
  size_t row = static_cast<size_t>(memo_row_[patient]) * N;
  double out = fair_correction(st, patient, shifts_, nc);
  for (int slot = 0; slot < 3; ++slot) {
    out += f1_shift_[slot][row + nc[slot]] + f1_over_[slot][row + nc[slot]];
  }
  return idx_->inst->weights.skill_load_fair * out;
}

double ContributionTable::nonfair_of(const TableEntry& e, const PartialState& st) const {
  double out = room_part(st, *het_, day_, e.patient, e.room);
  for (int slot = 0; slot < 3; ++slot) {
    out += slot_part(st, e.patient, shifts_[slot], e.nurses[slot]);
    out += visit_part(st, e.nurses[slot], shifts_[slot], e.room);
  }
  return out;
}

void ContributionTable::build(const PartialState& st, const HeterogeneityMatrix& het,
                              int day, int max_triples_per_patient) {
  idx_ = st.idx;
  het_ = &het;
  day_ = day;
  shifts_ = {3 * day - 2, 3 * day - 1, 3 * day};
  entries_.clear();
  memo_row_.assign(idx_->num_patients(), -1);

  std::vector<int> patients;
  for (int p = 0; p < idx_->num_patients(); ++p) {
    if (idx_->patient_on_day(p, day) && st.sol.room[p][day] < 0) {
      memo_row_[p] = static_cast<int>(patients.size());
      patients.push_back(p);
    }
  }
  int N = idx_->num_nurses();
  for (int slot = 0; slot < 3; ++slot) {
    f1_shift_[slot].assign(patients.size() * N, 0.0);
    f1_over_[slot].assign(patients.size() * N, 0.0);
  }
  rebuild_fair_memos(st);

  std::vector<TableEntry> candidates;
  for (int p : patients) {
    for (int r = 0; r < idx_->num_rooms(); ++r) {
      if (static_cast<int>(st.occupants[day][r].size()) >= idx_->room(r).num_beds) {
        continue;
      }
      candidates.clear();
      for (int ne : idx_->nurses_on_shift[shifts_[0]]) {
        for (int nl : idx_->nurses_on_shift[shifts_[1]]) {
          for (int nn : idx_->nurses_on_shift[shifts_[2]]) {
            TableEntry e;
            e.patient = p;
            e.room = r;
            e.nurses.nurse = {ne, nl, nn};
            e.nonfair = nonfair_of(e, st);
            e.fair = fair_of(p, e.nurses, st);
            e.value = e.nonfair + e.fair;
            candidates.push_back(e);
          }
        }
      }
      if (max_triples_per_patient > 0 &&
          static_cast<int>(candidates.size()) > max_triples_per_patient) {
        std::sort(candidates.begin(), candidates.end(),
                  [this](const TableEntry& a, const TableEntry& b) {
                    if (a.value != b.value) return a.value < b.value;
                    return id_less(*idx_, a, b);
                  });
        candidates.resize(max_triples_per_patient);
      }
      entries_.insert(entries_.end(), candidates.begin(), candidates.end());
    }
  }
}

const TableEntry& ContributionTable::argmin() const {
  if (entries_.empty()) throw std::logic_error("argmin on an empty table");
  const TableEntry* best = &entries_[0];
  for (const TableEntry& e : entries_) {
    if (e.value < best->value ||
        (e.value == best->value && id_less(*idx_, e, *best))) {
      best = &e;
    }
  }
  return *best;
}

void ContributionTable::update_after_fix(const TableEntry& chosen,
                                         const PartialState& st) {
  bool room_full = static_cast<int>(st.occupants[day_][chosen.room].size()) >=
                   idx_->room(chosen.room).num_beds;
  std::erase_if(entries_, [&](const TableEntry& e) {
    return e.patient == chosen.patient || (room_full && e.room == chosen.room);
  });
  memo_row_[chosen.patient] = -1;
  rebuild_fair_memos(st);
  for (TableEntry& e : entries_) {
    bool shares = e.room == chosen.room;
    for (int slot = 0; slot < 3 && !shares; ++slot) {
      shares = e.nurses[slot] == chosen.nurses[slot];
    }
    if (shares) e.nonfair = nonfair_of(e, st);
    e.fair = fair_of(e.patient, e.nurses, st);
    e.value = e.nonfair + e.fair;
  }
}

double ContributionTable::max_divergence(const PartialState& st) const {
  double worst = 0.0;
  for (const TableEntry& e : entries_) {
    double fresh = calc_contribution(e.patient, e.nurses, e.room, day_, st, *het_);
    worst = std::max(worst, std::abs(e.value - fresh));
  }
  return worst;
}

HeuristicResult solve_heuristic(const Instance& inst, const HeuristicOptions& opts) {
  require_valid(inst);
  InstanceIndex idx = build_index(inst);
  HeterogeneityMatrix het = build_het_matrix(inst.patients);
  PartialState st(idx);
  double max_div = 0.0;

  static const char* kShiftName[3] = {"early", "late", "night"};
  for (int day = 1; day <= idx.num_days; ++day) {
    std::vector<int> todays;
    for (int p = 0; p < idx.num_patients(); ++p) {
      if (idx.patient_on_day(p, day)) todays.push_back(p);
    }
    if (todays.empty()) continue;
    for (int slot = 0; slot < 3; ++slot) {
      if (idx.nurses_on_shift[3 * day - 2 + slot].empty()) {
        throw InfeasibleError("day " + std::to_string(day) + ": " +
                              std::to_string(todays.size()) +
                              " patients in ward but no nurse rostered for the " +
                              kShiftName[slot] + " shift");
      }
    }
    if (static_cast<int>(todays.size()) > inst.total_beds()) {
      throw InfeasibleError("day " + std::to_string(day) + ": " +
                            std::to_string(todays.size()) + " patients exceed the " +
                            std::to_string(inst.total_beds()) + " beds");
    }

    ContributionTable table;
    table.build(st, het, day, opts.max_triples_per_patient);
    while (!table.empty()) {
      TableEntry chosen = table.argmin();
      st.fix(chosen.patient, day, chosen.nurses, chosen.room);
      table.update_after_fix(chosen, st);
      if (opts.audit_table) {
        max_div = std::max(max_div, table.max_divergence(st));
      }
    }
    for (int p : todays) {
      if (st.sol.room[p][day] < 0) {
        throw std::logic_error("day loop finished with an unplaced patient");
      }
    }
  }

  HeuristicResult result;
  for (int p = 0; p < idx.num_patients(); ++p) {
    const std::string& pid = inst.patients[p].id;
    for (int d = idx.first_day[p]; d <= idx.last_day[p]; ++d) {
      result.solution.room_of[{pid, d}] = inst.rooms[st.sol.room[p][d]].id;
    }
    for (int s = idx.first_shift[p]; s <= idx.last_shift[p]; ++s) {
      result.solution.nurse_of[{pid, s}] = inst.nurses[st.sol.nurse[p][s]].id;
    }
  }
  result.breakdown = eval_total(inst, result.solution);
  result.max_table_divergence = max_div;
  return result;
}

}  // namespace iprnpa
