#include "iprnpa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "iprnpa/errors.hpp"
#include "iprnpa/index.hpp"
#include "iprnpa/mip_export.hpp"
#include "iprnpa/validate.hpp"

namespace iprnpa {

namespace {

struct Decision {
  bool is_room = false;
  int patient = -1;
  int day = 0;    // room decisions
  int shift = 0;  // nurse decisions
};

// Exhaustive DFS over the decision list. Cost is carried incrementally:
// nonfair_ sums the nonnegative marginals and doubles as the pruning
// bound, fair_ the exact fairness deltas (possibly negative, excluded
// from the bound). Undo restores snapshots instead of subtracting, so
// the running values depend only on the current prefix.
class Search {
 public:
  Search(const InstanceIndex& idx, const OracleLimits& limits)
      : idx_(idx), limits_(limits) {
    int P = idx.num_patients(), N = idx.num_nurses(), R = idx.num_rooms();
    room_.assign(P, std::vector<int>(idx.num_days + 1, -1));
    nurse_.assign(P, std::vector<int>(idx.num_shifts + 1, -1));
    occupants_.assign(idx.num_days + 1, std::vector<std::vector<int>>(R));
    load_.assign(N, std::vector<double>(idx.num_shifts + 1, 0.0));
    total_rel_.assign(N, 0.0);
    ever_.resize(P);
    for (int p = 0; p < P; ++p) ever_[p] = idx.prev_nurses[p];
    visited_.assign(N, std::vector<std::set<int>>(idx.num_shifts + 1));

    for (int d = 1; d <= idx.num_days; ++d) {
      for (int p = 0; p < P; ++p) {
        if (idx.patient_on_day(p, d)) {
          decisions_.push_back({true, p, d, 0});
        }
      }
      for (int p = 0; p < P; ++p) {
        if (!idx.patient_on_day(p, d)) continue;
        for (int s = 3 * d - 2; s <= 3 * d; ++s) {
          decisions_.push_back({false, p, 0, s});
        }
      }
    }
  }

  void run() { dfs(0); }

  bool found() const { return best_total_ < std::numeric_limits<double>::infinity(); }
  const std::vector<std::vector<int>>& best_room() const { return best_room_; }
  const std::vector<std::vector<int>>& best_nurse() const { return best_nurse_; }
  long long leaves() const { return leaves_; }
  double max_divergence() const { return max_div_; }

 private:
  void dfs(size_t k) {
    if (limits_.enable_pruning && nonfair_ >= best_total_) return;
    if (k == decisions_.size()) {
      leaf();
      return;
    }
    const Decision& dec = decisions_[k];
    if (dec.is_room) {
      for (int r = 0; r < idx_.num_rooms(); ++r) {
        std::vector<int>& occ = occupants_[dec.day][r];
        if (static_cast<int>(occ.size()) >= idx_.room(r).num_beds) continue;
        double saved = nonfair_;
        nonfair_ += room_marginal(dec.patient, dec.day, r);
        room_[dec.patient][dec.day] = r;
        occ.push_back(dec.patient);
        dfs(k + 1);
        occ.pop_back();
        room_[dec.patient][dec.day] = -1;
        nonfair_ = saved;
      }
    } else {
      int p = dec.patient, s = dec.shift;
      for (int n : idx_.nurses_on_shift[s]) {
        double saved_nonfair = nonfair_, saved_fair = fair_;
        double saved_load = load_[n][s], saved_rel = total_rel_[n];
        nonfair_ += nurse_marginal(p, s, n);
        fair_ += fair_delta(p, s, n);
        bool new_ever = ever_[p].insert(n).second;
        bool new_room = visited_[n][s].insert(room_[p][(s + 2) / 3]).second;
        load_[n][s] += idx_.workload[p][s];
        total_rel_[n] += idx_.workload[p][s] / idx_.nurse_maxload[n][s];
        nurse_[p][s] = n;
        dfs(k + 1);
        nurse_[p][s] = -1;
        total_rel_[n] = saved_rel;
        load_[n][s] = saved_load;
        if (new_room) visited_[n][s].erase(room_[p][(s + 2) / 3]);
        if (new_ever) ever_[p].erase(n);
        fair_ = saved_fair;
        nonfair_ = saved_nonfair;
      }
    }
  }

  void leaf() {
    ++leaves_;
    // accumulated fairness can dip a hair below zero where the true value
    // is zero; clamping keeps the bound admissible bit-for-bit
    double total = nonfair_ + std::max(0.0, fair_);
    if (limits_.audit_leaves_every > 0 &&
        leaves_ % limits_.audit_leaves_every == 0) {
      IndexedSolution s;
      s.room = room_;
      s.nurse = nurse_;
      ObjectiveBreakdown b = detail::eval_breakdown(idx_, s);
      max_div_ = std::max(max_div_, std::abs(total - b.weighted_total));
    }
    if (total < best_total_) {
      best_total_ = total;
      best_room_ = room_;
      best_nurse_ = nurse_;
    }
  }

  double room_marginal(int p, int d, int r) const {
    const ObjectiveWeights& w = idx_.inst->weights;
    double out = 0.0;
    if (d > idx_.first_day[p]) {
      if (room_[p][d - 1] != r) out += w.transfers;
    } else if (idx_.patient(p).adshift == 0 && idx_.prev_room[p] != r) {
      out += w.transfers;
    }
    if (!idx_.equipment_ok[p][d][r]) out += w.equipment;
    const std::vector<int>& occ = occupants_[d][r];
    if (!occ.empty()) {
      int ag = idx_.patient(p).agegroup();
      int cmin = idx_.patient(occ[0]).agegroup(), cmax = cmin;
      bool f = false, m = false;
      for (int o : occ) {
        int a = idx_.patient(o).agegroup();
        cmin = std::min(cmin, a);
        cmax = std::max(cmax, a);
        (idx_.patient(o).gender == 'F' ? f : m) = true;
      }
      out += w.inconvenience *
             ((std::max(cmax, ag) - std::min(cmin, ag)) - (cmax - cmin));
      bool pf = idx_.patient(p).gender == 'F';
      if (!(f && m) && ((f || pf) && (m || !pf))) out += w.gender;
    }
    return out;
  }

  double nurse_marginal(int p, int s, int n) const {
    const ObjectiveWeights& w = idx_.inst->weights;
    double out = 0.0;
    if (!ever_[p].count(n)) out += w.continuity;
    int req = idx_.skillreq[p][s];
    if (req >= 2 && idx_.nurse(n).skill < req) out += w.skill_load_fair;
    double delta = idx_.workload[p][s];
    double l = load_[n][s], ml = idx_.nurse_maxload[n][s];
    out += w.skill_load_fair *
           (std::max(0.0, l + delta - ml) - std::max(0.0, l - ml));
    int r = room_[p][(s + 2) / 3];
    if (!visited_[n][s].count(r)) {
      double walk = idx_.wstar[s] * idx_.star_dist[r];
      for (int o : visited_[n][s]) walk += idx_.wcirc[s] * idx_.room_dist[o][r];
      out += w.nurses_per_room + w.walking * walk;
    }
    return out;
  }

  // exact change of both fairness sums when n alone absorbs p's load on s
  double fair_delta(int p, int s, int n) const {
    double ml = idx_.nurse_maxload[n][s];
    double rel = load_[n][s] / ml;
    double bumped = (load_[n][s] + idx_.workload[p][s]) / ml;
    double out = 0.0;
    for (int b : idx_.nurses_on_shift[s]) {
      if (b == n) continue;
      double rb = load_[b][s] / idx_.nurse_maxload[b][s];
      out += std::max(0.0, bumped - rb) - std::max(0.0, rel - rb);
      out += std::max(0.0, rb - bumped) - std::max(0.0, rb - rel);
    }
    double t = total_rel_[n];
    double tb_bumped = t + idx_.workload[p][s] / ml;
    for (int b = 0; b < idx_.num_nurses(); ++b) {
      if (b == n) continue;
      double tb = total_rel_[b];
      out += std::max(0.0, tb_bumped - tb) - std::max(0.0, t - tb);
      out += std::max(0.0, tb - tb_bumped) - std::max(0.0, tb - t);
    }
    return idx_.inst->weights.skill_load_fair * out;
  }

  const InstanceIndex& idx_;
  const OracleLimits& limits_;
  std::vector<Decision> decisions_;

  std::vector<std::vector<int>> room_, nurse_;
  std::vector<std::vector<std::vector<int>>> occupants_;
  std::vector<std::vector<double>> load_;
  std::vector<double> total_rel_;
  std::vector<std::set<int>> ever_;
  std::vector<std::vector<std::set<int>>> visited_;
  double nonfair_ = 0.0, fair_ = 0.0;

  double best_total_ = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> best_room_, best_nurse_;
  long long leaves_ = 0;
  double max_div_ = 0.0;
};

}  // namespace

OracleResult enumerate_optimal(const Instance& inst, const OracleLimits& limits) {
  require_valid(inst);
  InstanceIndex idx = build_index(inst);

  double estimate = 1.0;
  for (int p = 0; p < idx.num_patients(); ++p) {
    for (int d = idx.first_day[p]; d <= idx.last_day[p]; ++d) {
      estimate *= idx.num_rooms();
    }
    for (int s = idx.first_shift[p]; s <= idx.last_shift[p]; ++s) {
      estimate *= static_cast<double>(idx.nurses_on_shift[s].size());
    }
    if (estimate > limits.max_nodes) {
      throw BudgetExceededError(
          "search space exceeds " + format_double(limits.max_nodes) +
          " assignments; refusing a truncated enumeration");
    }
  }

  Search search(idx, limits);
  search.run();
  if (!search.found()) {
    throw InfeasibleError(
        "no feasible assignment: every branch runs out of room capacity or "
        "rostered nurses");
  }

  OracleResult out;
  out.estimated_leaves = estimate;
  out.leaves_visited = search.leaves();
  out.max_leaf_divergence = search.max_divergence();
  for (int p = 0; p < idx.num_patients(); ++p) {
    const std::string& pid = inst.patients[p].id;
    for (int d = idx.first_day[p]; d <= idx.last_day[p]; ++d) {
      out.solution.room_of[{pid, d}] = inst.rooms[search.best_room()[p][d]].id;
    }
    for (int s = idx.first_shift[p]; s <= idx.last_shift[p]; ++s) {
      out.solution.nurse_of[{pid, s}] = inst.nurses[search.best_nurse()[p][s]].id;
    }
  }
  out.breakdown = eval_total(inst, out.solution);
  return out;
}

std::vector<double> tight_point(const ModelFile& model, const Instance& inst,
                                const Solution& sol) {
  InstanceIndex idx = build_index(inst);
  ShiftCalendar cal = inst.calendar();
  IndexedSolution is = index_solution(idx, sol);

  std::vector<double> values(model.variables().size(), 0.0);
  std::vector<bool> assigned(model.variables().size(), false);
  auto set = [&](const std::string& name, double v) {
    int i = model.variable(name);
    values[i] = v;
    assigned[i] = true;
  };
  auto pid = [&](int p) -> const std::string& { return inst.patients[p].id; };
  auto rid = [&](int r) -> const std::string& { return inst.rooms[r].id; };
  auto nid = [&](int n) -> const std::string& { return inst.nurses[n].id; };

  // occupants per (day, room)
  std::vector<std::vector<std::vector<int>>> occ(
      idx.num_days + 1, std::vector<std::vector<int>>(idx.num_rooms()));
  for (int p = 0; p < idx.num_patients(); ++p) {
    for (int d = idx.first_day[p]; d <= idx.last_day[p]; ++d) {
      if (is.room[p][d] >= 0) occ[d][is.room[p][d]].push_back(p);
    }
  }

  for (int p = 0; p < idx.num_patients(); ++p) {
    for (int d = idx.first_day[p]; d <= idx.last_day[p]; ++d) {
      for (int r = 0; r < idx.num_rooms(); ++r) {
        set(varname::y(pid(p), rid(r), cal.early_shift(d)),
            is.room[p][d] == r ? 1.0 : 0.0);
      }
    }
  }
  for (int r = 0; r < idx.num_rooms(); ++r) {
    for (int d = 1; d <= idx.num_days; ++d) {
      bool f = false, m = false;
      int agmax = 0, agmin = 0;  // zero pair for empty rooms
      for (int p : occ[d][r]) {
        int ag = idx.patient(p).agegroup();
        agmax = std::max(agmax, ag);
        agmin = agmin == 0 ? ag : std::min(agmin, ag);
        (idx.patient(p).gender == 'F' ? f : m) = true;
      }
      int es = cal.early_shift(d);
      set(varname::f_in_room(rid(r), es), f ? 1.0 : 0.0);
      set(varname::m_in_room(rid(r), es), m ? 1.0 : 0.0);
      set(varname::vio_gender(rid(r), es), f && m ? 1.0 : 0.0);
      set(varname::agemax(rid(r), es), agmax);
      set(varname::agemin(rid(r), es), agmin);
    }
  }
  for (int p = 0; p < idx.num_patients(); ++p) {
    const Patient& pat = inst.patients[p];
    if (pat.adshift == 0) {
      int r1 = is.room[p][idx.first_day[p]];
      set(varname::trans(pid(p), 0), r1 >= 0 && r1 != idx.prev_room[p] ? 1.0 : 0.0);
    }
    for (int d = idx.first_day[p]; d < idx.last_day[p]; ++d) {
      int s = cal.night_shift(d);
      if (s < pat.dishift && s != cal.num_shifts()) {
        int next = is.room[p][d + 1];
        set(varname::trans(pid(p), s),
            next >= 0 && next != is.room[p][d] ? 1.0 : 0.0);
      }
    }
  }

  // nurse half; loads first so the violation families read them
  std::vector<std::vector<double>> load(idx.num_nurses(),
                                        std::vector<double>(idx.num_shifts + 1, 0.0));
  for (int p = 0; p < idx.num_patients(); ++p) {
    for (int s = idx.first_shift[p]; s <= idx.last_shift[p]; ++s) {
      if (is.nurse[p][s] >= 0) load[is.nurse[p][s]][s] += idx.workload[p][s];
    }
  }
  for (int p = 0; p < idx.num_patients(); ++p) {
    for (int s = idx.first_shift[p]; s <= idx.last_shift[p]; ++s) {
      for (int n : idx.nurses_on_shift[s]) {
        set(varname::x(pid(p), nid(n), s), is.nurse[p][s] == n ? 1.0 : 0.0);
      }
      if (!cal.is_night(s) && idx.skillreq[p][s] >= 2) {
        int n = is.nurse[p][s];
        bool covered = n >= 0 && idx.nurse(n).skill >= idx.skillreq[p][s];
        set(varname::vio_skill(pid(p), s), covered ? 0.0 : 1.0);
      }
    }
  }
  for (int p = 0; p < idx.num_patients(); ++p) {
    for (int n = 0; n < idx.num_nurses(); ++n) {
      bool ever = idx.prev_nurses[p].count(n) > 0;
      for (int s = idx.first_shift[p]; !ever && s <= idx.last_shift[p]; ++s) {
        ever = is.nurse[p][s] == n;
      }
      set(varname::ever(pid(p), nid(n)), ever ? 1.0 : 0.0);
    }
  }
  for (int n = 0; n < idx.num_nurses(); ++n) {
    for (int s : inst.nurses[n].shifts) {
      set(varname::vio_load(nid(n), s),
          std::max(0.0, load[n][s] - idx.nurse_maxload[n][s]));
    }
  }
  for (int n1 = 0; n1 < idx.num_nurses(); ++n1) {
    for (int n2 = 0; n2 < idx.num_nurses(); ++n2) {
      if (n1 == n2) continue;
      for (int s : inst.nurses[n1].shifts) {
        if (inst.nurses[n2].works(s)) {
          double r1 = load[n1][s] / idx.nurse_maxload[n1][s];
          double r2 = load[n2][s] / idx.nurse_maxload[n2][s];
          set(varname::vio_fair_shift(nid(n1), nid(n2), s), std::max(0.0, r1 - r2));
        }
      }
    }
  }
  std::vector<double> total_rel(idx.num_nurses(), 0.0);
  for (int n = 0; n < idx.num_nurses(); ++n) {
    for (int s : inst.nurses[n].shifts) {
      total_rel[n] += load[n][s] / idx.nurse_maxload[n][s];
    }
  }
  for (int n1 = 0; n1 < idx.num_nurses(); ++n1) {
    for (int n2 = 0; n2 < idx.num_nurses(); ++n2) {
      if (n1 != n2) {
        set(varname::vio_fair_total(nid(n1), nid(n2)),
            std::max(0.0, total_rel[n1] - total_rel[n2]));
      }
    }
  }
  for (int n = 0; n < idx.num_nurses(); ++n) {
    for (int s : inst.nurses[n].shifts) {
      std::vector<int> rooms;
      for (int r = 0; r < idx.num_rooms(); ++r) {
        bool in = false;
        for (int p : occ[(s + 2) / 3][r]) in = in || is.nurse[p][s] == n;
        if (in) rooms.push_back(r);
        set(varname::inroom(nid(n), rid(r), s), in ? 1.0 : 0.0);
      }
      for (int r1 = 0; r1 < idx.num_rooms(); ++r1) {
        for (int r2 = 0; r2 < idx.num_rooms(); ++r2) {
          if (r1 == r2) continue;
          bool b = std::count(rooms.begin(), rooms.end(), r1) &&
                   std::count(rooms.begin(), rooms.end(), r2);
          set(varname::both(nid(n), rid(r1), rid(r2), s), b ? 1.0 : 0.0);
        }
      }
      double walk = 0.0;
      for (size_t i = 0; i < rooms.size(); ++i) {
        walk += idx.wstar[s] * idx.star_dist[rooms[i]];
        for (size_t j = i + 1; j < rooms.size(); ++j) {
          walk += idx.wcirc[s] * idx.room_dist[rooms[i]][rooms[j]];
        }
      }
      set(varname::dist(nid(n), s), walk);
    }
  }

  for (size_t i = 0; i < assigned.size(); ++i) {
    if (!assigned[i]) {
      throw StructuralError("variable not covered by the tight completion: " +
                            model.variables()[i].name);
    }
  }
  return values;
}

MipPointReport check_mip_point(const ModelFile& model, const Instance& inst,
                               const Solution& sol, double tol) {
  std::vector<double> point = tight_point(model, inst, sol);
  MipPointReport out;
  for (const ModelConstraint& row : model.constraints()) {
    double lhs = 0.0;
    for (const LinearTerm& t : row.terms) lhs += t.coeff * point[t.var];
    bool bad = false;
    switch (row.sense) {
      case Sense::le: bad = lhs - row.rhs > tol; break;
      case Sense::ge: bad = row.rhs - lhs > tol; break;
      case Sense::eq: bad = std::abs(lhs - row.rhs) > tol; break;
    }
    if (bad) out.violated_rows.push_back(row.name);
  }
  out.feasible = out.violated_rows.empty();
  for (const LinearTerm& t : model.objective()) {
    out.objective += t.coeff * point[t.var];
  }
  return out;
}

}  // namespace iprnpa
