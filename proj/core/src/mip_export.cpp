#include "iprnpa/mip_export.hpp"

#include "iprnpa/errors.hpp"
#include "iprnpa/evaluator.hpp"
#include "iprnpa/index.hpp"
#include "iprnpa/validate.hpp"

namespace iprnpa {

namespace varname {

std::string y(const std::string& p, const std::string& r, int s) {
  return "y[" + p + "][" + r + "][" + std::to_string(s) + "]";
}
std::string x(const std::string& p, const std::string& n, int s) {
  return "x[" + p + "][" + n + "][" + std::to_string(s) + "]";
}
std::string trans(const std::string& p, int s) {
  return "trans[" + p + "][" + std::to_string(s) + "]";
}
std::string f_in_room(const std::string& r, int s) {
  return "f_in_room[" + r + "][" + std::to_string(s) + "]";
}
std::string m_in_room(const std::string& r, int s) {
  return "m_in_room[" + r + "][" + std::to_string(s) + "]";
}
std::string vio_gender(const std::string& r, int s) {
  return "vio_gender[" + r + "][" + std::to_string(s) + "]";
}
std::string agemax(const std::string& r, int s) {
  return "agemax[" + r + "][" + std::to_string(s) + "]";
}
std::string agemin(const std::string& r, int s) {
  return "agemin[" + r + "][" + std::to_string(s) + "]";
}
std::string vio_skill(const std::string& p, int s) {
  return "vio_skill[" + p + "][" + std::to_string(s) + "]";
}
std::string ever(const std::string& p, const std::string& n) {
  return "ever[" + p + "][" + n + "]";
}
std::string vio_load(const std::string& n, int s) {
  return "vio_load[" + n + "][" + std::to_string(s) + "]";
}
std::string vio_fair_shift(const std::string& n1, const std::string& n2, int s) {
  return "vio_fair[" + n1 + "][" + n2 + "][" + std::to_string(s) + "]";
}
std::string vio_fair_total(const std::string& n1, const std::string& n2) {
  return "vio_fair[" + n1 + "][" + n2 + "]";
}
std::string inroom(const std::string& n, const std::string& r, int s) {
  return "inroom[" + n + "][" + r + "][" + std::to_string(s) + "]";
}
std::string both(const std::string& n, const std::string& r1, const std::string& r2,
                 int s) {
  return "both[" + n + "][" + r1 + "][" + r2 + "][" + std::to_string(s) + "]";
}
std::string dist(const std::string& n, int s) {
  return "d[" + n + "][" + std::to_string(s) + "]";
}
std::string assign(const std::string& n, int s) {
  return "assign[" + n + "][" + std::to_string(s) + "]";
}

}  // namespace varname

namespace {

// The age big-M: agegroups live in 0..12, so 12 deactivates the
// agemin upper bound for patients not in the room.
constexpr double kAgeBigM = 12.0;

// Builds the full model or either half. For the nurse half every room
// variable is a 0/1 constant taken from fixed rooms and folded into the
// rows, which kills some rows entirely.
class MipBuilder {
 public:
  MipBuilder(const Instance& inst, bool rooms, bool nurses,
             const IndexedSolution* fixed, const ExportOptions& opts)
      : inst_(inst), idx_(build_index(inst)), cal_(inst.calendar()),
        with_rooms_(rooms), with_nurses_(nurses), fixed_(fixed), opts_(opts) {}

  ModelFile build() {
    add_variables();
    add_objective();
    add_room_constraints();
    add_transfer_constraints();
    add_age_constraints();
    add_nurse_constraints();
    add_load_constraints();
    add_inroom_constraints();
    add_walking_constraints();
    write_header();
    return std::move(model_);
  }

 private:
  const Instance& inst_;
  InstanceIndex idx_;
  ShiftCalendar cal_;
  bool with_rooms_, with_nurses_;
  const IndexedSolution* fixed_;
  ExportOptions opts_;
  ModelFile model_;
  std::vector<std::pair<std::string, long>> var_counts_, row_counts_;
  long vars_before_ = 0, rows_before_ = 0;

  const std::string& pid(int p) const { return inst_.patients[p].id; }
  const std::string& rid(int r) const { return inst_.rooms[r].id; }
  const std::string& nid(int n) const { return inst_.nurses[n].id; }

  bool early_in_stay(int p, int s) const {
    return cal_.is_early(s) && idx_.patient_on_shift(p, s);
  }

  // 0/1 constant of a room variable in the nurse half.
  double y_const(int p, int d, int r) const {
    return fixed_->room[p][d] == r ? 1.0 : 0.0;
  }

  void count_vars(const std::string& family) {
    long now = static_cast<long>(model_.variables().size());
    var_counts_.push_back({family, now - vars_before_});
    vars_before_ = now;
  }
  void count_rows(const std::string& family) {
    long now = static_cast<long>(model_.constraints().size());
    row_counts_.push_back({family, now - rows_before_});
    rows_before_ = now;
  }

  void add_variables() {
    if (with_rooms_) {
      for (int p = 0; p < idx_.num_patients(); ++p) {
        for (int d = idx_.first_day[p]; d <= idx_.last_day[p]; ++d) {
          for (int r = 0; r < idx_.num_rooms(); ++r) {
            model_.add_binary(varname::y(pid(p), rid(r), cal_.early_shift(d)));
          }
        }
      }
      count_vars("y (rooms x in-ward early shifts)");
      for (int r = 0; r < idx_.num_rooms(); ++r) {
        for (int d = 1; d <= idx_.num_days; ++d) {
          model_.add_binary(varname::f_in_room(rid(r), cal_.early_shift(d)));
          model_.add_binary(varname::m_in_room(rid(r), cal_.early_shift(d)));
          model_.add_binary(varname::vio_gender(rid(r), cal_.early_shift(d)));
        }
      }
      count_vars("f_in_room/m_in_room/vio_gender (rooms x early shifts)");
      for (int p = 0; p < idx_.num_patients(); ++p) {
        const Patient& pat = inst_.patients[p];
        if (pat.adshift == 0) model_.add_binary(varname::trans(pid(p), 0));
        for (int d = idx_.first_day[p]; d < idx_.last_day[p]; ++d) {
          // transfer measured after the night of day d, never after the
          // final night of the horizon
          int s = cal_.night_shift(d);
          if (s < pat.dishift && s != cal_.num_shifts()) {
            model_.add_binary(varname::trans(pid(p), s));
          }
        }
      }
      count_vars("trans (nights before in-ward days, plus pre-horizon)");
      for (int r = 0; r < idx_.num_rooms(); ++r) {
        for (int d = 1; d <= idx_.num_days; ++d) {
          model_.add_continuous(varname::agemax(rid(r), cal_.early_shift(d)));
          model_.add_continuous(varname::agemin(rid(r), cal_.early_shift(d)));
        }
      }
      count_vars("agemax/agemin (rooms x early shifts)");
    }
    if (with_nurses_) {
      for (int p = 0; p < idx_.num_patients(); ++p) {
        for (int s = idx_.first_shift[p]; s <= idx_.last_shift[p]; ++s) {
          for (int n : idx_.nurses_on_shift[s]) {
            model_.add_binary(varname::x(pid(p), nid(n), s));
          }
        }
      }
      count_vars("x (in-ward shifts x rostered nurses)");
      for (int p = 0; p < idx_.num_patients(); ++p) {
        for (int s = idx_.first_shift[p]; s <= idx_.last_shift[p]; ++s) {
          if (!cal_.is_night(s) && idx_.skillreq[p][s] >= 2) {
            model_.add_binary(varname::vio_skill(pid(p), s));
          }
        }
      }
      count_vars("vio_skill (day shifts with skillreq >= 2)");
      for (int p = 0; p < idx_.num_patients(); ++p) {
        for (int n = 0; n < idx_.num_nurses(); ++n) {
          model_.add_binary(varname::ever(pid(p), nid(n)));
        }
      }
      count_vars("ever (patients x nurses)");
      for (int n = 0; n < idx_.num_nurses(); ++n) {
        for (int s : inst_.nurses[n].shifts) {
          model_.add_continuous(varname::vio_load(nid(n), s));
        }
      }
      count_vars("vio_load (rostered shifts)");
      for (int n1 = 0; n1 < idx_.num_nurses(); ++n1) {
        for (int n2 = 0; n2 < idx_.num_nurses(); ++n2) {
          if (n1 == n2) continue;
          for (int s : inst_.nurses[n1].shifts) {
            if (inst_.nurses[n2].works(s)) {
              model_.add_continuous(varname::vio_fair_shift(nid(n1), nid(n2), s));
            }
          }
        }
      }
      count_vars("vio_fair per shift (ordered co-rostered pairs)");
      for (int n1 = 0; n1 < idx_.num_nurses(); ++n1) {
        for (int n2 = 0; n2 < idx_.num_nurses(); ++n2) {
          if (n1 != n2) {
            model_.add_continuous(varname::vio_fair_total(nid(n1), nid(n2)));
          }
        }
      }
      count_vars("vio_fair overall (ordered pairs)");
      for (int n = 0; n < idx_.num_nurses(); ++n) {
        for (int s : inst_.nurses[n].shifts) {
          for (int r = 0; r < idx_.num_rooms(); ++r) {
            model_.add_binary(varname::inroom(nid(n), rid(r), s));
          }
        }
      }
      count_vars("inroom (rostered shifts x rooms)");
      for (int n = 0; n < idx_.num_nurses(); ++n) {
        for (int s : inst_.nurses[n].shifts) {
          for (int r1 = 0; r1 < idx_.num_rooms(); ++r1) {
            for (int r2 = 0; r2 < idx_.num_rooms(); ++r2) {
              if (r1 != r2) {
                model_.add_binary(varname::both(nid(n), rid(r1), rid(r2), s));
              }
            }
          }
        }
      }
      count_vars("both (rostered shifts x ordered room pairs)");
      for (int n = 0; n < idx_.num_nurses(); ++n) {
        for (int s : inst_.nurses[n].shifts) {
          model_.add_continuous(varname::dist(nid(n), s));
        }
      }
      count_vars("d (rostered shifts)");
    }
  }

  void add_objective() {
    const ObjectiveWeights& w = inst_.weights;
    if (with_rooms_) {
      for (int p = 0; p < idx_.num_patients(); ++p) {
        const Patient& pat = inst_.patients[p];
        if (pat.adshift == 0) {
          model_.add_objective_term(model_.variable(varname::trans(pid(p), 0)),
                                    w.transfers);
        }
        for (int d = idx_.first_day[p]; d < idx_.last_day[p]; ++d) {
          int s = cal_.night_shift(d);
          if (s < pat.dishift && s != cal_.num_shifts()) {
            model_.add_objective_term(model_.variable(varname::trans(pid(p), s)),
                                      w.transfers);
          }
        }
      }
      for (int r = 0; r < idx_.num_rooms(); ++r) {
        for (int d = 1; d <= idx_.num_days; ++d) {
          int es = cal_.early_shift(d);
          model_.add_objective_term(model_.variable(varname::agemax(rid(r), es)),
                                    w.inconvenience);
          model_.add_objective_term(model_.variable(varname::agemin(rid(r), es)),
                                    -w.inconvenience);
          model_.add_objective_term(model_.variable(varname::vio_gender(rid(r), es)),
                                    w.gender);
        }
      }
      // equipment shortfalls are priced directly on the y variables
      for (int p = 0; p < idx_.num_patients(); ++p) {
        for (int d = idx_.first_day[p]; d <= idx_.last_day[p]; ++d) {
          for (int r = 0; r < idx_.num_rooms(); ++r) {
            if (!idx_.equipment_ok[p][d][r]) {
              model_.add_objective_term(
                  model_.variable(varname::y(pid(p), rid(r), cal_.early_shift(d))),
                  w.equipment);
            }
          }
        }
      }
    }
    if (with_nurses_) {
      for (int p = 0; p < idx_.num_patients(); ++p) {
        for (int n = 0; n < idx_.num_nurses(); ++n) {
          if (!idx_.prev_nurses[p].count(n)) {
            model_.add_objective_term(model_.variable(varname::ever(pid(p), nid(n))),
                                      w.continuity);
          }
        }
      }
      for (const ModelVariable& v : model_.variables()) {
        // vio_skill, vio_load and both fairness families share one weight
        if (v.name.rfind("vio_skill[", 0) == 0 || v.name.rfind("vio_load[", 0) == 0 ||
            v.name.rfind("vio_fair[", 0) == 0) {
          model_.add_objective_term(model_.variable(v.name), w.skill_load_fair);
        }
      }
      for (int n = 0; n < idx_.num_nurses(); ++n) {
        for (int s : inst_.nurses[n].shifts) {
          for (int r = 0; r < idx_.num_rooms(); ++r) {
            model_.add_objective_term(
                model_.variable(varname::inroom(nid(n), rid(r), s)), w.nurses_per_room);
          }
          model_.add_objective_term(model_.variable(varname::dist(nid(n), s)),
                                    w.walking);
        }
      }
    }
  }

  void add_room_constraints() {
    if (!with_rooms_) return;
    for (int p = 0; p < idx_.num_patients(); ++p) {
      for (int d = idx_.first_day[p]; d <= idx_.last_day[p]; ++d) {
        int es = cal_.early_shift(d);
        ModelConstraint& row = model_.add_constraint(
            "assign_room[" + pid(p) + "][" + std::to_string(es) + "]", Sense::eq, 1.0);
        for (int r = 0; r < idx_.num_rooms(); ++r) {
          row.terms.push_back({model_.variable(varname::y(pid(p), rid(r), es)), 1.0});
        }
      }
    }
    count_rows("assign_room: one room per in-ward patient and day");

    for (int d = 1; d <= idx_.num_days; ++d) {
      bool any = false;
      for (int p = 0; p < idx_.num_patients(); ++p) any |= idx_.patient_on_day(p, d);
      if (!any) continue;  // nothing to bound on patient-free days
      for (int r = 0; r < idx_.num_rooms(); ++r) {
        int es = cal_.early_shift(d);
        ModelConstraint& row = model_.add_constraint(
            "capacity[" + rid(r) + "][" + std::to_string(es) + "]", Sense::le,
            inst_.rooms[r].num_beds);
        for (int p = 0; p < idx_.num_patients(); ++p) {
          if (idx_.patient_on_day(p, d)) {
            row.terms.push_back({model_.variable(varname::y(pid(p), rid(r), es)), 1.0});
          }
        }
      }
    }
    count_rows("capacity: beds per room and day");

    for (int p = 0; p < idx_.num_patients(); ++p) {
      bool female = inst_.patients[p].gender == 'F';
      for (int d = idx_.first_day[p]; d <= idx_.last_day[p]; ++d) {
        int es = cal_.early_shift(d);
        for (int r = 0; r < idx_.num_rooms(); ++r) {
          std::string flag = female ? varname::f_in_room(rid(r), es)
                                    : varname::m_in_room(rid(r), es);
          ModelConstraint& row = model_.add_constraint(
              std::string(female ? "f_link[" : "m_link[") + pid(p) + "][" + rid(r) +
                  "][" + std::to_string(es) + "]",
              Sense::le, 0.0);
          row.terms.push_back({model_.variable(varname::y(pid(p), rid(r), es)), 1.0});
          row.terms.push_back({model_.variable(flag), -1.0});
        }
      }
    }
    count_rows("f_link/m_link: gender presence flags");

    for (int r = 0; r < idx_.num_rooms(); ++r) {
      for (int d = 1; d <= idx_.num_days; ++d) {
        int es = cal_.early_shift(d);
        ModelConstraint& row = model_.add_constraint(
            "gender_mix[" + rid(r) + "][" + std::to_string(es) + "]", Sense::le, 1.0);
        row.terms.push_back({model_.variable(varname::f_in_room(rid(r), es)), 1.0});
        row.terms.push_back({model_.variable(varname::m_in_room(rid(r), es)), 1.0});
        row.terms.push_back({model_.variable(varname::vio_gender(rid(r), es)), -1.0});
      }
    }
    count_rows("gender_mix: mixed rooms need vio_gender");
  }

  void add_transfer_constraints() {
    if (!with_rooms_) return;
    for (int p = 0; p < idx_.num_patients(); ++p) {
      const Patient& pat = inst_.patients[p];
      for (int d = idx_.first_day[p]; d < idx_.last_day[p]; ++d) {
        int s = cal_.night_shift(d);
        if (s >= pat.dishift || s == cal_.num_shifts()) continue;
        for (int r = 0; r < idx_.num_rooms(); ++r) {
          ModelConstraint& row = model_.add_constraint(
              "trans_link[" + pid(p) + "][" + rid(r) + "][" + std::to_string(s) + "]",
              Sense::le, 0.0);
          // in room r the next morning but not this morning
          row.terms.push_back({model_.variable(varname::y(pid(p), rid(r), s + 1)), 1.0});
          row.terms.push_back({model_.variable(varname::y(pid(p), rid(r), s - 2)), -1.0});
          row.terms.push_back({model_.variable(varname::trans(pid(p), s)), -1.0});
        }
      }
    }
    count_rows("trans_link: room changed over a night");

    for (int p = 0; p < idx_.num_patients(); ++p) {
      const Patient& pat = inst_.patients[p];
      if (pat.adshift != 0) continue;
      for (int r = 0; r < idx_.num_rooms(); ++r) {
        if (idx_.prev_room[p] == r) continue;
        ModelConstraint& row = model_.add_constraint(
            "trans_prev[" + pid(p) + "][" + rid(r) + "]", Sense::le, 0.0);
        row.terms.push_back({model_.variable(varname::y(pid(p), rid(r), 1)), 1.0});
        row.terms.push_back({model_.variable(varname::trans(pid(p), 0)), -1.0});
      }
    }
    count_rows("trans_prev: moved away from the pre-horizon room");
  }

  void add_age_constraints() {
    if (!with_rooms_) return;
    for (int p = 0; p < idx_.num_patients(); ++p) {
      double ag = inst_.patients[p].agegroup();
      for (int d = idx_.first_day[p]; d <= idx_.last_day[p]; ++d) {
        int es = cal_.early_shift(d);
        for (int r = 0; r < idx_.num_rooms(); ++r) {
          int yv = model_.variable(varname::y(pid(p), rid(r), es));
          ModelConstraint& hi = model_.add_constraint(
              "age_max[" + pid(p) + "][" + rid(r) + "][" + std::to_string(es) + "]",
              Sense::ge, 0.0);
          hi.terms.push_back({model_.variable(varname::agemax(rid(r), es)), 1.0});
          hi.terms.push_back({yv, -ag});
          // agemin <= agegroup + M (1 - y)
          ModelConstraint& lo = model_.add_constraint(
              "age_min[" + pid(p) + "][" + rid(r) + "][" + std::to_string(es) + "]",
              Sense::le, ag + kAgeBigM);
          lo.terms.push_back({model_.variable(varname::agemin(rid(r), es)), 1.0});
          lo.terms.push_back({yv, kAgeBigM});
        }
      }
    }
    count_rows("age_max/age_min: agegroup extremes per room");

    for (int r = 0; r < idx_.num_rooms(); ++r) {
      for (int d = 1; d <= idx_.num_days; ++d) {
        int es = cal_.early_shift(d);
        ModelConstraint& row = model_.add_constraint(
            "age_min_empty[" + rid(r) + "][" + std::to_string(es) + "]", Sense::le, 0.0);
        row.terms.push_back({model_.variable(varname::agemin(rid(r), es)), 1.0});
        for (int p = 0; p < idx_.num_patients(); ++p) {
          if (idx_.patient_on_day(p, d)) {
            row.terms.push_back(
                {model_.variable(varname::y(pid(p), rid(r), es)), -kAgeBigM});
          }
        }
      }
    }
    count_rows("age_min_empty: empty rooms pin agemin to zero");

    if (opts_.age_order_rows) {
      for (int r = 0; r < idx_.num_rooms(); ++r) {
        for (int d = 1; d <= idx_.num_days; ++d) {
          int es = cal_.early_shift(d);
          ModelConstraint& row = model_.add_constraint(
              "age_order[" + rid(r) + "][" + std::to_string(es) + "]", Sense::le, 0.0);
          row.terms.push_back({model_.variable(varname::agemin(rid(r), es)), 1.0});
          row.terms.push_back({model_.variable(varname::agemax(rid(r), es)), -1.0});
        }
      }
      count_rows("age_order: agemin below agemax (redundant)");
    }
  }

  void add_nurse_constraints() {
    if (!with_nurses_) return;
    for (int p = 0; p < idx_.num_patients(); ++p) {
      for (int s = idx_.first_shift[p]; s <= idx_.last_shift[p]; ++s) {
        ModelConstraint& row = model_.add_constraint(
            "assign_nurse[" + pid(p) + "][" + std::to_string(s) + "]", Sense::eq, 1.0);
        for (int n : idx_.nurses_on_shift[s]) {
          row.terms.push_back({model_.variable(varname::x(pid(p), nid(n), s)), 1.0});
        }
        if (row.terms.empty()) {
          throw InfeasibleError("patient " + pid(p) + " is on the ward during shift " +
                                std::to_string(s) + " but no nurse is rostered");
        }
      }
    }
    count_rows("assign_nurse: one nurse per in-ward patient and shift");

    for (int p = 0; p < idx_.num_patients(); ++p) {
      for (int s = idx_.first_shift[p]; s <= idx_.last_shift[p]; ++s) {
        if (cal_.is_night(s) || idx_.skillreq[p][s] < 2) continue;
        ModelConstraint& row = model_.add_constraint(
            "skill_cover[" + pid(p) + "][" + std::to_string(s) + "]", Sense::eq, 1.0);
        for (int n : idx_.nurses_on_shift[s]) {
          if (inst_.nurses[n].skill >= idx_.skillreq[p][s]) {
            row.terms.push_back({model_.variable(varname::x(pid(p), nid(n), s)), 1.0});
          }
        }
        row.terms.push_back({model_.variable(varname::vio_skill(pid(p), s)), 1.0});
      }
    }
    count_rows("skill_cover: qualified nurse or vio_skill");

    for (int p = 0; p < idx_.num_patients(); ++p) {
      for (int n = 0; n < idx_.num_nurses(); ++n) {
        int ev = model_.variable(varname::ever(pid(p), nid(n)));
        if (idx_.prev_nurses[p].count(n)) {
          ModelConstraint& row = model_.add_constraint(
              "ever_prev[" + pid(p) + "][" + nid(n) + "]", Sense::eq, 1.0);
          row.terms.push_back({ev, 1.0});
          continue;
        }
        ModelConstraint& ub = model_.add_constraint(
            "ever_ub[" + pid(p) + "][" + nid(n) + "]", Sense::le, 0.0);
        ub.terms.push_back({ev, 1.0});
        for (int s = idx_.first_shift[p]; s <= idx_.last_shift[p]; ++s) {
          if (inst_.nurses[n].works(s)) {
            ub.terms.push_back({model_.variable(varname::x(pid(p), nid(n), s)), -1.0});
          }
        }
      }
    }
    for (int p = 0; p < idx_.num_patients(); ++p) {
      for (int s = idx_.first_shift[p]; s <= idx_.last_shift[p]; ++s) {
        for (int n : idx_.nurses_on_shift[s]) {
          ModelConstraint& row = model_.add_constraint(
              "ever_link[" + pid(p) + "][" + nid(n) + "][" + std::to_string(s) + "]",
              Sense::le, 0.0);
          row.terms.push_back({model_.variable(varname::x(pid(p), nid(n), s)), 1.0});
          row.terms.push_back({model_.variable(varname::ever(pid(p), nid(n))), -1.0});
        }
      }
    }
    count_rows("ever_prev/ever_ub/ever_link: ever-assigned bookkeeping");
  }

  void add_load_constraints() {
    if (!with_nurses_) return;
    for (int n = 0; n < idx_.num_nurses(); ++n) {
      for (int s : inst_.nurses[n].shifts) {
        ModelConstraint& row = model_.add_constraint(
            "load[" + nid(n) + "][" + std::to_string(s) + "]", Sense::le,
            idx_.nurse_maxload[n][s]);
        for (int p = 0; p < idx_.num_patients(); ++p) {
          if (idx_.patient_on_shift(p, s)) {
            row.terms.push_back(
                {model_.variable(varname::x(pid(p), nid(n), s)), idx_.workload[p][s]});
          }
        }
        row.terms.push_back({model_.variable(varname::vio_load(nid(n), s)), -1.0});
      }
    }
    count_rows("load: workload within maxload plus vio_load");

    for (int n1 = 0; n1 < idx_.num_nurses(); ++n1) {
      for (int n2 = 0; n2 < idx_.num_nurses(); ++n2) {
        if (n1 == n2) continue;
        for (int s : inst_.nurses[n1].shifts) {
          if (!inst_.nurses[n2].works(s)) continue;
          ModelConstraint& row = model_.add_constraint(
              "fair_shift[" + nid(n1) + "][" + nid(n2) + "][" + std::to_string(s) + "]",
              Sense::le, 0.0);
          for (int p = 0; p < idx_.num_patients(); ++p) {
            if (!idx_.patient_on_shift(p, s)) continue;
            double w = idx_.workload[p][s];
            row.terms.push_back({model_.variable(varname::x(pid(p), nid(n1), s)),
                                 w / idx_.nurse_maxload[n1][s]});
            row.terms.push_back({model_.variable(varname::x(pid(p), nid(n2), s)),
                                 -w / idx_.nurse_maxload[n2][s]});
          }
          row.terms.push_back(
              {model_.variable(varname::vio_fair_shift(nid(n1), nid(n2), s)), -1.0});
        }
      }
    }
    count_rows("fair_shift: per-shift relative load gaps");

    for (int n1 = 0; n1 < idx_.num_nurses(); ++n1) {
      for (int n2 = 0; n2 < idx_.num_nurses(); ++n2) {
        if (n1 == n2) continue;
        ModelConstraint& row = model_.add_constraint(
            "fair_total[" + nid(n1) + "][" + nid(n2) + "]", Sense::le, 0.0);
        for (int s : inst_.nurses[n1].shifts) {
          for (int p = 0; p < idx_.num_patients(); ++p) {
            if (idx_.patient_on_shift(p, s)) {
              row.terms.push_back({model_.variable(varname::x(pid(p), nid(n1), s)),
                                   idx_.workload[p][s] / idx_.nurse_maxload[n1][s]});
            }
          }
        }
        for (int s : inst_.nurses[n2].shifts) {
          for (int p = 0; p < idx_.num_patients(); ++p) {
            if (idx_.patient_on_shift(p, s)) {
              row.terms.push_back({model_.variable(varname::x(pid(p), nid(n2), s)),
                                   -idx_.workload[p][s] / idx_.nurse_maxload[n2][s]});
            }
          }
        }
        row.terms.push_back(
            {model_.variable(varname::vio_fair_total(nid(n1), nid(n2))), -1.0});
      }
    }
    count_rows("fair_total: horizon relative load gaps");
  }

  void add_inroom_constraints() {
    if (!with_nurses_) return;
    for (int p = 0; p < idx_.num_patients(); ++p) {
      for (int s = idx_.first_shift[p]; s <= idx_.last_shift[p]; ++s) {
        int d = cal_.day_of(s);
        int es = cal_.early_shift(d);
        for (int n : idx_.nurses_on_shift[s]) {
          for (int r = 0; r < idx_.num_rooms(); ++r) {
            if (with_rooms_) {
              ModelConstraint& row = model_.add_constraint(
                  "inroom_link[" + pid(p) + "][" + nid(n) + "][" + rid(r) + "][" +
                      std::to_string(s) + "]",
                  Sense::le, 1.0);
              row.terms.push_back(
                  {model_.variable(varname::x(pid(p), nid(n), s)), 1.0});
              row.terms.push_back({model_.variable(varname::y(pid(p), rid(r), es)), 1.0});
              row.terms.push_back(
                  {model_.variable(varname::inroom(nid(n), rid(r), s)), -1.0});
            } else if (y_const(p, d, r) == 1.0) {
              // rhs 1 - y folds to 0; rows with y = 0 are vacuous
              ModelConstraint& row = model_.add_constraint(
                  "inroom_link[" + pid(p) + "][" + nid(n) + "][" + rid(r) + "][" +
                      std::to_string(s) + "]",
                  Sense::le, 0.0);
              row.terms.push_back(
                  {model_.variable(varname::x(pid(p), nid(n), s)), 1.0});
              row.terms.push_back(
                  {model_.variable(varname::inroom(nid(n), rid(r), s)), -1.0});
            }
          }
        }
      }
    }
    count_rows("inroom_link: serving a patient pulls the nurse into the room");
  }

  void add_walking_constraints() {
    if (!with_nurses_) return;
    for (int n = 0; n < idx_.num_nurses(); ++n) {
      for (int s : inst_.nurses[n].shifts) {
        for (int r1 = 0; r1 < idx_.num_rooms(); ++r1) {
          for (int r2 = 0; r2 < idx_.num_rooms(); ++r2) {
            if (r1 == r2) continue;
            ModelConstraint& row = model_.add_constraint(
                "both_link[" + nid(n) + "][" + rid(r1) + "][" + rid(r2) + "][" +
                    std::to_string(s) + "]",
                Sense::le, 1.0);
            row.terms.push_back({model_.variable(varname::inroom(nid(n), rid(r1), s)), 1.0});
            row.terms.push_back({model_.variable(varname::inroom(nid(n), rid(r2), s)), 1.0});
            row.terms.push_back(
                {model_.variable(varname::both(nid(n), rid(r1), rid(r2), s)), -1.0});
          }
        }
      }
    }
    count_rows("both_link: pairs of rooms visited on one shift");

    for (int n = 0; n < idx_.num_nurses(); ++n) {
      for (int s : inst_.nurses[n].shifts) {
        ModelConstraint& row = model_.add_constraint(
            "dist_def[" + nid(n) + "][" + std::to_string(s) + "]", Sense::eq, 0.0);
        row.terms.push_back({model_.variable(varname::dist(nid(n), s)), 1.0});
        for (int r1 = 0; r1 < idx_.num_rooms(); ++r1) {
          for (int r2 = 0; r2 < idx_.num_rooms(); ++r2) {
            if (r1 == r2) continue;
            double c = 0.5 * idx_.wcirc[s] * idx_.room_dist[r1][r2];
            if (c != 0.0) {
              row.terms.push_back(
                  {model_.variable(varname::both(nid(n), rid(r1), rid(r2), s)), -c});
            }
          }
        }
        for (int r = 0; r < idx_.num_rooms(); ++r) {
          double c = idx_.wstar[s] * idx_.star_dist[r];
          if (c != 0.0) {
            row.terms.push_back({model_.variable(varname::inroom(nid(n), rid(r), s)), -c});
          }
        }
      }
    }
    count_rows("dist_def: walking distance per nurse and shift");
  }

  void write_header() {
    std::string kind = with_rooms_ && with_nurses_
                           ? "integrated patient-to-room and nurse-to-patient model"
                           : (with_rooms_ ? "patient-to-room submodel"
                                          : "nurse-to-patient submodel (rooms fixed)");
    model_.comments.push_back(kind);
    model_.comments.push_back(
        std::to_string(inst_.patients.size()) + " patients, " +
        std::to_string(inst_.rooms.size()) + " rooms, " +
        std::to_string(inst_.nurses.size()) + " nurses, " +
        std::to_string(inst_.num_days) + " days");
    const ObjectiveWeights& w = inst_.weights;
    std::string wl = "objective weights:";
    if (with_rooms_) {
      wl += " transfers " + format_double(w.transfers) + ", inconvenience " +
            format_double(w.inconvenience) + ", gender " + format_double(w.gender) +
            ", equipment " + format_double(w.equipment);
    }
    if (with_nurses_) {
      if (with_rooms_) wl += ",";
      wl += " continuity " + format_double(w.continuity) + ", skill/load/fairness " +
            format_double(w.skill_load_fair) + ", nurses-per-room " +
            format_double(w.nurses_per_room) + ", walking " + format_double(w.walking);
    }
    model_.comments.push_back(wl);
    model_.comments.push_back("variables: " +
                              std::to_string(model_.variables().size()));
    for (const auto& [family, count] : var_counts_) {
      model_.comments.push_back("  " + std::to_string(count) + " " + family);
    }
    model_.comments.push_back("constraints: " +
                              std::to_string(model_.constraints().size()));
    for (const auto& [family, count] : row_counts_) {
      model_.comments.push_back("  " + std::to_string(count) + " " + family);
    }
  }
};

}  // namespace

ModelFile export_full_mip(const Instance& inst, const ExportOptions& opts) {
  require_valid(inst);
  return MipBuilder(inst, true, true, nullptr, opts).build();
}

ModelFile export_pra(const Instance& inst, const ExportOptions& opts) {
  require_valid(inst);
  return MipBuilder(inst, true, false, nullptr, opts).build();
}

ModelFile export_npa(const Instance& inst, const Solution& fixed_rooms,
                     const ExportOptions& opts) {
  require_valid(inst);
  InstanceIndex idx = build_index(inst);
  IndexedSolution fixed = index_solution(idx, fixed_rooms);
  // The room half of the fixed assignment must be feasible on its own.
  FeasibilityReport rep;
  for (int p = 0; p < idx.num_patients(); ++p) {
    for (int d = 1; d <= idx.num_days; ++d) {
      bool in = idx.patient_on_day(p, d);
      if (in && fixed.room[p][d] < 0) {
        rep.violations.push_back({"room-assignment", "patient " + idx.patient(p).id +
                                                         " has no room on day " +
                                                         std::to_string(d)});
      }
      if (!in && fixed.room[p][d] >= 0) {
        rep.violations.push_back({"room-assignment", "patient " + idx.patient(p).id +
                                                         " housed outside the stay"});
      }
    }
  }
  for (int d = 1; d <= idx.num_days; ++d) {
    std::vector<int> occupants(idx.num_rooms(), 0);
    for (int p = 0; p < idx.num_patients(); ++p) {
      if (idx.patient_on_day(p, d) && fixed.room[p][d] >= 0) ++occupants[fixed.room[p][d]];
    }
    for (int r = 0; r < idx.num_rooms(); ++r) {
      if (occupants[r] > idx.room(r).num_beds) {
        rep.violations.push_back({"room-capacity", "room " + idx.room(r).id +
                                                       " over capacity on day " +
                                                       std::to_string(d)});
      }
    }
  }
  if (!rep.feasible()) {
    throw InfeasibleError("fixed rooms are not a legal room assignment: " +
                          rep.to_string());
  }
  return MipBuilder(inst, false, true, &fixed, opts).build();
}

ModelFile export_roster_bip(const RosterRequest& req) {
  ShiftCalendar cal(req.num_days);
  const int S = cal.num_shifts();
  if (static_cast<int>(req.required.size()) != S + 1) {
    throw StructuralError("required[] must have one entry per shift plus index 0");
  }
  ModelFile model;
  for (const RosterNurse& n : req.nurses) {
    for (int s = 1; s <= S; ++s) model.add_binary(varname::assign(n.id, s));
  }
  for (const RosterNurse& n : req.nurses) {
    for (int s = 1; s <= S; ++s) {
      model.add_objective_term(model.variable(varname::assign(n.id, s)), 1.0);
    }
  }

  for (const RosterNurse& n : req.nurses) {
    for (int s = 1; s <= S; s += 3) {  // one shift per day
      ModelConstraint& row = model.add_constraint(
          "one_per_day[" + n.id + "][" + std::to_string(s) + "]", Sense::le, 1.0);
      row.terms.push_back({model.variable(varname::assign(n.id, s)), 1.0});
      row.terms.push_back({model.variable(varname::assign(n.id, s + 1)), 1.0});
      row.terms.push_back({model.variable(varname::assign(n.id, s + 2)), 1.0});
    }
  }
  for (int s = 1; s <= S; ++s) {
    for (int l = 1; l <= 3; ++l) {
      if (req.required[s][l] == 0) continue;
      ModelConstraint& row = model.add_constraint(
          "skill_need[" + std::to_string(l) + "][" + std::to_string(s) + "]", Sense::ge,
          req.required[s][l]);
      for (const RosterNurse& n : req.nurses) {
        if (n.skill >= l) {
          row.terms.push_back({model.variable(varname::assign(n.id, s)), 1.0});
        }
      }
      if (row.terms.empty()) {
        throw InfeasibleError("no nurse can cover skill level " + std::to_string(l));
      }
    }
    int total = req.required[s][1] + req.required[s][2] + req.required[s][3];
    if (total > 0) {
      ModelConstraint& row = model.add_constraint(
          "head_count[" + std::to_string(s) + "]", Sense::ge, total);
      for (const RosterNurse& n : req.nurses) {
        row.terms.push_back({model.variable(varname::assign(n.id, s)), 1.0});
      }
    }
  }
  for (const RosterNurse& n : req.nurses) {
    ModelConstraint& row =
        model.add_constraint("max_shifts[" + n.id + "]", Sense::le, req.max_shifts);
    for (int s = 1; s <= S; ++s) {
      row.terms.push_back({model.variable(varname::assign(n.id, s)), 1.0});
    }
  }
  for (const RosterNurse& n : req.nurses) {
    for (int s = 3; s <= S; s += 3) {  // after a night only night or off
      if (s + 2 > S) continue;  // terms beyond the horizon are dropped
      ModelConstraint& row = model.add_constraint(
          "night_rest[" + n.id + "][" + std::to_string(s) + "]", Sense::le, 1.0);
      row.terms.push_back({model.variable(varname::assign(n.id, s)), 1.0});
      row.terms.push_back({model.variable(varname::assign(n.id, s + 1)), 1.0});
      row.terms.push_back({model.variable(varname::assign(n.id, s + 2)), 1.0});
    }
  }
  for (const RosterNurse& n : req.nurses) {
    for (int s = 2; s <= S; s += 3) {  // no early straight after late
      if (s + 2 > S) continue;
      ModelConstraint& row = model.add_constraint(
          "late_early[" + n.id + "][" + std::to_string(s) + "]", Sense::le, 1.0);
      row.terms.push_back({model.variable(varname::assign(n.id, s)), 1.0});
      row.terms.push_back({model.variable(varname::assign(n.id, s + 2)), 1.0});
    }
  }

  model.comments.push_back("nurse rostering model");
  model.comments.push_back(std::to_string(req.nurses.size()) + " nurses, " +
                           std::to_string(req.num_days) + " days, max " +
                           std::to_string(req.max_shifts) + " shifts each");
  model.comments.push_back("variables: " + std::to_string(model.variables().size()));
  model.comments.push_back("constraints: " +
                           std::to_string(model.constraints().size()));
  return model;
}

}  // namespace iprnpa
