#ifndef IPRNPA_HEURISTIC_HPP
#define IPRNPA_HEURISTIC_HPP

#include <array>
#include <set>
#include <vector>

#include "iprnpa/evaluator.hpp"
#include "iprnpa/index.hpp"
#include "iprnpa/instance.hpp"

namespace iprnpa {

// Pairwise discharge heterogeneity: ln|dishift(p) - dishift(p')|, zero for
// equal discharge shifts (and for a difference of one, since ln 1 = 0).
// Only the upper triangle is stored.
class HeterogeneityMatrix {
 public:
  HeterogeneityMatrix() = default;
  explicit HeterogeneityMatrix(int num_patients);

  double het(int p1, int p2) const;
  void set(int p1, int p2, double value);
  int size() const { return n_; }

 private:
  int n_ = 0;
  std::vector<double> upper_;
};

HeterogeneityMatrix build_het_matrix(const std::vector<Patient>& patients);

// One nurse per shift of a day, addressed by slot: 0 early, 1 late, 2 night.
struct NurseTriple {
  std::array<int, 3> nurse{-1, -1, -1};

  int operator[](int slot) const { return nurse[slot]; }
  bool operator==(const NurseTriple&) const = default;
};

// The assignment prefix the greedy has committed to, plus the running
// aggregates every contribution term reads: per-shift nurse loads, summed
// relative loads, ever-assigned nurse sets (seeded with prev_nurses),
// per-room-per-day occupants and per-nurse visited rooms.
struct PartialState {
  explicit PartialState(const InstanceIndex& idx);

  const InstanceIndex* idx = nullptr;
  IndexedSolution sol;
  std::vector<std::vector<double>> load;                 // [nurse][shift]
  std::vector<double> total_rel;                         // [nurse]
  std::vector<std::set<int>> ever;                       // [patient] -> nurses
  std::vector<std::vector<std::vector<int>>> occupants;  // [day][room] -> patients
  std::vector<std::vector<std::set<int>>> visited;       // [nurse][shift] -> rooms

  void fix(int patient, int day, const NurseTriple& nc, int room);
};

// Marginal weighted cost of housing patient p in room r on the given day
// and handing them to the triple's nurses, evaluated from scratch against
// the current partial state. The table must agree with this function.
double calc_contribution(int patient, const NurseTriple& nc, int room, int day,
                         const PartialState& st, const HeterogeneityMatrix& het);

struct TableEntry {
  int patient = -1;
  NurseTriple nurses;
  int room = -1;
  double value = 0.0;    // nonfair + fair
  double nonfair = 0.0;  // transfer/room/nurse terms, updated selectively
  double fair = 0.0;     // fairness terms, stale after every fix
};

// All candidate (patient, nurse-triple, room) moves of one day with their
// current contributions. Fixing a move invalidates the fairness component
// of every entry (the committed loads shift each pairwise comparison), so
// update_after_fix refreshes fairness table-wide and the remaining terms
// only where a room or nurse is shared.
class ContributionTable {
 public:
  // max_triples_per_patient > 0 keeps only the that many cheapest triples
  // per (patient, room); 0 keeps the full cartesian product.
  void build(const PartialState& st, const HeterogeneityMatrix& het, int day,
             int max_triples_per_patient = 0);

  bool empty() const { return entries_.empty(); }
  const std::vector<TableEntry>& entries() const { return entries_; }

  // Cheapest entry; ties break lexicographically on patient id, room id,
  // then early/late/night nurse ids.
  const TableEntry& argmin() const;

  // chosen must already be applied to st via PartialState::fix.
  void update_after_fix(const TableEntry& chosen, const PartialState& st);

  // Largest |stored - calc_contribution| over the current entries.
  double max_divergence(const PartialState& st) const;

 private:
  // f1 tables hold, per surviving patient and candidate (slot, nurse), the
  // fairness change of bumping that nurse alone; entries combine three of
  // them plus a within-triple correction.
  void rebuild_fair_memos(const PartialState& st);
  double fair_of(int patient, const NurseTriple& nc, const PartialState& st) const;
  double nonfair_of(const TableEntry& e, const PartialState& st) const;

  const InstanceIndex* idx_ = nullptr;
  const HeterogeneityMatrix* het_ = nullptr;
  int day_ = 0;
  std::array<int, 3> shifts_{};
  std::vector<TableEntry> entries_;
  std::vector<int> memo_row_;  // [patient] -> f1 row, -1 once fixed
  std::array<std::vector<double>, 3> f1_shift_;  // [slot][row * nurses + n]
  std::array<std::vector<double>, 3> f1_over_;
};

struct HeuristicOptions {
  int max_triples_per_patient = 0;  // 0 = unlimited
  // Re-derive every entry from scratch after each update and track the
  // largest divergence; costly, meant for verification runs.
  bool audit_table = false;
};

struct HeuristicResult {
  Solution solution;
  ObjectiveBreakdown breakdown;
  double max_table_divergence = 0.0;  // only meaningful with audit_table
};

// Day-by-day greedy of the contribution-table construction. Deterministic;
// throws InfeasibleError naming the first day that lacks beds or rostered
// nurses.
HeuristicResult solve_heuristic(const Instance& inst,
                                const HeuristicOptions& opts = {});

}  // namespace iprnpa

#endif
