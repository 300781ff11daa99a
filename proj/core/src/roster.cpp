#include "iprnpa/roster.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "iprnpa/errors.hpp"

namespace iprnpa {

std::vector<std::array<int, 4>> uniform_requirements(int num_days,
                                                     const std::array<int, 4>& per_shift) {
  ShiftCalendar cal(num_days);
  std::vector<std::array<int, 4>> out(cal.num_shifts() + 1, {0, 0, 0, 0});
  for (int s = 1; s <= cal.num_shifts(); ++s) out[s] = per_shift;
  return out;
}

namespace {

int total_required(const std::array<int, 4>& levels) {
  return levels[1] + levels[2] + levels[3];
}

// Backtracking search over one nurse pick at a time. Shifts are decided
// chronologically, within a day night first: the after-night rule makes
// nights the scarcest resource. Candidate order prefers the weakest
// sufficient skill and nurses with the fewest shifts left, so scarce
// capacity is spent before it expires.
class RosterSearch {
 public:
  explicit RosterSearch(const RosterRequest& req)
      : req_(req), cal_(req.num_days), S_(cal_.num_shifts()),
        N_(static_cast<int>(req.nurses.size())) {
    if (static_cast<int>(req.required.size()) != S_ + 1) {
      throw StructuralError("required[] must have one entry per shift plus index 0");
    }
    for (int d = 1; d <= req_.num_days; ++d) {
      order_.push_back(cal_.night_shift(d));
      order_.push_back(cal_.early_shift(d));
      order_.push_back(cal_.late_shift(d));
    }
    chosen_.assign(S_ + 1, {});
    day_shift_.assign(N_, std::vector<int>(req_.num_days + 1, 0));
    count_.assign(N_, 0);

    // Requirements no nurse pool can meet fail fast with a useful message.
    std::array<int, 4> pool = {0, 0, 0, 0};
    for (const RosterNurse& n : req_.nurses) {
      for (int l = 1; l <= n.skill; ++l) ++pool[l];
    }
    for (int s = 1; s <= S_; ++s) {
      for (int l = 1; l <= 3; ++l) {
        if (req_.required[s][l] > pool[l]) {
          throw InfeasibleError("shift " + std::to_string(s) + " needs " +
                                std::to_string(req_.required[s][l]) +
                                " nurses of skill " + std::to_string(l) +
                                " or higher but only " + std::to_string(pool[l]) +
                                " exist");
        }
      }
      if (total_required(req_.required[s]) > N_) {
        throw InfeasibleError("shift " + std::to_string(s) + " needs " +
                              std::to_string(total_required(req_.required[s])) +
                              " nurses but only " + std::to_string(N_) + " exist");
      }
    }
  }

  Roster run() {
    if (!shift(0)) {
      throw InfeasibleError("no legal roster: stuck at shift " +
                            std::to_string(fail_shift_) + " covering skill level " +
                            std::to_string(std::max(fail_level_, 1)));
    }
    Roster roster;
    roster.shifts_of_nurse.assign(N_, {});
    for (int s = 1; s <= S_; ++s) {
      for (int n : chosen_[s]) roster.shifts_of_nurse[n].insert(s);
    }
    return roster;
  }

 private:
  bool eligible(int n, int s) const {
    int d = cal_.day_of(s);
    if (day_shift_[n][d] != 0) return false;
    if (count_[n] >= req_.max_shifts) return false;
    if (d > 1) {
      int prev = day_shift_[n][d - 1];
      if (prev != 0) {
        if (cal_.is_night(prev) && !cal_.is_night(s)) return false;
        if (cal_.is_late(prev) && cal_.is_early(s)) return false;
      }
    }
    return true;
  }

  bool shift(size_t k) {
    if (k == order_.size()) return true;
    int s = order_[k];
    std::array<int, 4> deficit = req_.required[s];
    return pick(k, s, deficit, total_required(req_.required[s]));
  }

  bool pick(size_t k, int s, std::array<int, 4>& deficit, int left) {
    if (left == 0) return shift(k + 1);
    int worst = std::max({deficit[1], deficit[2], deficit[3]});
    if (worst > left) return false;  // cannot clear the deficits anymore

    int level = 0;
    for (int l = 3; l >= 1; --l) {
      if (deficit[l] > 0) {
        level = l;
        break;
      }
    }

    std::vector<int> candidates;
    for (int n = 0; n < N_; ++n) {
      if (req_.nurses[n].skill >= level && !chosen_[s].count(n) && eligible(n, s)) {
        candidates.push_back(n);
      }
    }
    std::sort(candidates.begin(), candidates.end(), [&](int a, int b) {
      int sa = req_.nurses[a].skill, sb = req_.nurses[b].skill;
      if (sa != sb) return sa < sb;  // weakest sufficient skill first
      int ra = remaining_slots(a), rb = remaining_slots(b);
      if (ra != rb) return ra < rb;  // fewest remaining feasible slots first
      return a < b;
    });

    if (candidates.empty() && fail_shift_ <= s) {
      fail_shift_ = s;
      fail_level_ = level;
    }

    for (int n : candidates) {
      if (++nodes_ > req_.node_budget) {
        throw BudgetExceededError("roster search exceeded its node budget of " +
                                  std::to_string(req_.node_budget));
      }
      apply(n, s, deficit);
      if (pick(k, s, deficit, left - 1)) return true;
      undo(n, s, deficit);
    }
    return false;
  }

  int remaining_slots(int n) const {
    return std::min(req_.max_shifts - count_[n], req_.num_days);
  }

  void apply(int n, int s, std::array<int, 4>& deficit) {
    chosen_[s].insert(n);
    day_shift_[n][cal_.day_of(s)] = s;
    ++count_[n];
    for (int l = 1; l <= req_.nurses[n].skill; ++l) --deficit[l];
  }

  void undo(int n, int s, std::array<int, 4>& deficit) {
    chosen_[s].erase(n);
    day_shift_[n][cal_.day_of(s)] = 0;
    --count_[n];
    for (int l = 1; l <= req_.nurses[n].skill; ++l) ++deficit[l];
  }

  const RosterRequest& req_;
  ShiftCalendar cal_;
  int S_, N_;
  std::vector<int> order_;
  std::vector<std::set<int>> chosen_;
  std::vector<std::vector<int>> day_shift_;  // [nurse][day] -> shift or 0
  std::vector<int> count_;
  long nodes_ = 0;
  int fail_shift_ = -1;
  int fail_level_ = 0;
};

}  // namespace

Roster solve_roster(const RosterRequest& req) {
  if (req.num_days < 1) throw StructuralError("roster request needs num_days >= 1");
  if (req.max_shifts < 0) throw StructuralError("max_shifts must be nonnegative");
  return RosterSearch(req).run();
}

std::vector<std::string> verify_roster(const RosterRequest& req, const Roster& roster) {
  std::vector<std::string> out;
  ShiftCalendar cal(req.num_days);
  const int S = cal.num_shifts();
  const int N = static_cast<int>(req.nurses.size());
  if (static_cast<int>(roster.shifts_of_nurse.size()) != N) {
    out.push_back("roster covers " + std::to_string(roster.shifts_of_nurse.size()) +
                  " nurses, request has " + std::to_string(N));
    return out;
  }

  auto works = [&](int n, int s) {
    return s >= 1 && s <= S && roster.shifts_of_nurse[n].count(s) != 0;
  };

  for (int n = 0; n < N; ++n) {
    const std::string& id = req.nurses[n].id;
    for (int s : roster.shifts_of_nurse[n]) {
      if (s < 1 || s > S) {
        out.push_back("nurse " + id + " rostered on shift " + std::to_string(s) +
                      " outside the calendar");
      }
    }
    for (int s = 1; s <= S; s += 3) {  // one shift per day
      if (works(n, s) + works(n, s + 1) + works(n, s + 2) > 1) {
        out.push_back("nurse " + id + " works more than one shift on day " +
                      std::to_string(cal.day_of(s)));
      }
    }
    for (int s = 3; s <= S; s += 3) {  // after a night only night or off
      if (works(n, s) && (works(n, s + 1) || works(n, s + 2))) {
        out.push_back("nurse " + id + " works a day shift directly after night shift " +
                      std::to_string(s));
      }
    }
    for (int s = 2; s <= S; s += 3) {  // no early directly after late
      if (works(n, s) && works(n, s + 2)) {
        out.push_back("nurse " + id + " works the early shift after late shift " +
                      std::to_string(s));
      }
    }
    if (static_cast<int>(roster.shifts_of_nurse[n].size()) > req.max_shifts) {
      out.push_back("nurse " + id + " works " +
                    std::to_string(roster.shifts_of_nurse[n].size()) +
                    " shifts, allowed " + std::to_string(req.max_shifts));
    }
  }

  for (int s = 1; s <= S; ++s) {
    std::array<int, 4> have = {0, 0, 0, 0};
    int total = 0;
    for (int n = 0; n < N; ++n) {
      if (works(n, s)) {
        ++total;
        for (int l = 1; l <= req.nurses[n].skill; ++l) ++have[l];
      }
    }
    for (int l = 1; l <= 3; ++l) {
      if (have[l] < req.required[s][l]) {
        out.push_back("shift " + std::to_string(s) + " has " + std::to_string(have[l]) +
                      " nurses of skill >= " + std::to_string(l) + ", needs " +
                      std::to_string(req.required[s][l]));
      }
    }
    if (total < total_required(req.required[s])) {
      out.push_back("shift " + std::to_string(s) + " has " + std::to_string(total) +
                    " nurses in total, needs " +
                    std::to_string(total_required(req.required[s])));
    }
  }
  return out;
}

std::array<int, 4> apportion_skills(int count, const std::array<double, 4>& mix) {
  double sum = mix[1] + mix[2] + mix[3];
  if (!(sum > 0.0)) throw StructuralError("skill mix must have positive mass");
  std::array<int, 4> out = {0, 0, 0, 0};
  std::array<double, 4> remainder = {0, 0, 0, 0};
  int assigned = 0;
  for (int l = 1; l <= 3; ++l) {
    double exact = count * mix[l] / sum;
    out[l] = static_cast<int>(std::floor(exact));
    remainder[l] = exact - out[l];
    assigned += out[l];
  }
  std::array<int, 3> levels = {1, 2, 3};
  std::sort(levels.begin(), levels.end(), [&](int a, int b) {
    if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
    return a < b;  // ties to the lower level
  });
  for (int i = 0; assigned < count; ++i) {
    ++out[levels[i % 3]];
    ++assigned;
  }
  return out;
}

NurseCountResult automatic_nurse_count(int num_days,
                                       const std::vector<std::array<int, 4>>& required,
                                       int max_shifts,
                                       const std::array<double, 4>& skill_mix) {
  ShiftCalendar cal(num_days);
  long total_slots = 0;
  int max_per_shift = 0;
  for (int s = 1; s <= cal.num_shifts(); ++s) {
    total_slots += total_required(required[s]);
    max_per_shift = std::max(max_per_shift, total_required(required[s]));
  }
  if (total_slots == 0) return {};
  if (max_shifts < 1) {
    throw InfeasibleError("cannot staff " + std::to_string(total_slots) +
                          " shift slots with max_shifts " + std::to_string(max_shifts));
  }

  // one shift per day caps what a single nurse can contribute
  long cap = std::min<long>(max_shifts, num_days);
  int lower =
      std::max<int>(max_per_shift, static_cast<int>((total_slots + cap - 1) / cap));
  int limit = 10 * lower;
  // Counts near the lower bound tend to burn the whole search budget before
  // the greedy gives up, while a workable count solves almost instantly. A
  // cheap first sweep finds the workable count fast; the expensive sweep
  // only runs when every cheap attempt failed.
  for (long budget : {50000L, RosterRequest{}.node_budget}) {
    for (int count = lower; count <= limit; ++count) {
      std::array<int, 4> per_level = apportion_skills(count, skill_mix);
      NurseCountResult result;
      result.count = count;
      for (int l = 1; l <= 3; ++l) {
        for (int i = 0; i < per_level[l]; ++i) {
          result.nurses.push_back(
              {"n" + std::to_string(result.nurses.size() + 1), l});
        }
      }
      RosterRequest req;
      req.num_days = num_days;
      req.nurses = result.nurses;
      req.required = required;
      req.max_shifts = max_shifts;
      req.node_budget = budget;
      try {
        result.roster = solve_roster(req);
        return result;
      } catch (const InfeasibleError&) {
      } catch (const BudgetExceededError&) {
      }
    }
  }
  throw InfeasibleError("no nurse count up to " + std::to_string(limit) +
                        " admits a legal roster");
}

}  // namespace iprnpa
