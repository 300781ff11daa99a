#include "iprnpa/report.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "iprnpa/errors.hpp"
#include "iprnpa/index.hpp"
#include "iprnpa/model_file.hpp"

namespace iprnpa {

namespace {

using json = nlohmann::ordered_json;

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

struct ObjectiveRow {
  const char* label;
  std::string value;
  double weight;
  double weighted;
};

std::vector<ObjectiveRow> objective_rows(const ObjectiveBreakdown& b,
                                         const ObjectiveWeights& w) {
  double slf = b.skill_viol + b.load_viol + b.fairness_shift + b.fairness_overall;
  return {
      {"Transfers", std::to_string(b.transfers), w.transfers,
       w.transfers * b.transfers},
      {"Inconvenience", std::to_string(b.inconvenience), w.inconvenience,
       w.inconvenience * b.inconvenience},
      {"Gender mixing", std::to_string(b.gender_mix), w.gender,
       w.gender * b.gender_mix},
      {"Equipment violation", std::to_string(b.equipment_viol), w.equipment,
       w.equipment * b.equipment_viol},
      {"Continuity of care", std::to_string(b.continuity), w.continuity,
       w.continuity * b.continuity},
      {"Skill & workload", fixed(slf, 4), w.skill_load_fair,
       w.skill_load_fair * slf},
      {"Nurses per room", std::to_string(b.nurses_per_room), w.nurses_per_room,
       w.nurses_per_room * b.nurses_per_room},
      {"Walking distances", fixed(b.walking, 4), w.walking,
       w.walking * b.walking},
  };
}

}  // namespace

std::string breakdown_to_json(const ObjectiveBreakdown& b) {
  json j;
  j["transfers"] = b.transfers;
  j["inconvenience"] = b.inconvenience;
  j["gender_mix"] = b.gender_mix;
  j["equipment_viol"] = b.equipment_viol;
  j["continuity"] = b.continuity;
  j["skill_viol"] = b.skill_viol;
  j["load_viol"] = b.load_viol;
  j["fairness_shift"] = b.fairness_shift;
  j["fairness_overall"] = b.fairness_overall;
  j["nurses_per_room"] = b.nurses_per_room;
  j["walking"] = b.walking;
  j["weighted_total"] = b.weighted_total;
  return j.dump(2) + "\n";
}

ObjectiveBreakdown parse_breakdown_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw StructuralError("breakdown: not a JSON object");
  }
  auto num = [&](const char* key) -> double {
    auto it = j.find(key);
    if (it == j.end() || !it->is_number()) {
      throw StructuralError(std::string("breakdown: missing numeric field '") +
                            key + "'");
    }
    return it->get<double>();
  };
  ObjectiveBreakdown b;
  b.transfers = static_cast<int>(num("transfers"));
  b.inconvenience = static_cast<int>(num("inconvenience"));
  b.gender_mix = static_cast<int>(num("gender_mix"));
  b.equipment_viol = static_cast<int>(num("equipment_viol"));
  b.continuity = static_cast<int>(num("continuity"));
  b.skill_viol = static_cast<int>(num("skill_viol"));
  b.load_viol = num("load_viol");
  b.fairness_shift = num("fairness_shift");
  b.fairness_overall = num("fairness_overall");
  b.nurses_per_room = static_cast<int>(num("nurses_per_room"));
  b.walking = num("walking");
  b.weighted_total = num("weighted_total");
  return b;
}

std::string render_breakdown(const ObjectiveBreakdown& b, const ObjectiveWeights& w) {
  std::vector<ObjectiveRow> rows = objective_rows(b, w);
  size_t lw = 0, vw = 0, ww = 0;
  for (const ObjectiveRow& r : rows) {
    lw = std::max(lw, std::string(r.label).size());
    vw = std::max(vw, r.value.size());
    ww = std::max(ww, format_double(r.weight).size());
  }
  std::ostringstream out;
  out << "objective\n";
  for (const ObjectiveRow& r : rows) {
    std::string weight = format_double(r.weight);
    out << "  " << r.label << std::string(lw - std::string(r.label).size(), ' ')
        << "  " << std::string(vw - r.value.size(), ' ') << r.value << "  x "
        << std::string(ww - weight.size(), ' ') << weight << "  = "
        << fixed(r.weighted, 4) << "\n";
  }
  out << "  total" << std::string(lw - 5 + vw + ww + 4, ' ')
      << "   = " << fixed(b.weighted_total, 4) << "\n";
  return out.str();
}

std::string render_plan(const Instance& inst, const Solution& sol) {
  FeasibilityReport rep = check_feasibility(inst, sol);
  if (!rep.feasible()) return rep.to_string() + "\n";

  InstanceIndex idx = build_index(inst);
  IndexedSolution is = index_solution(idx, sol);

  std::ostringstream out;
  out << "plan: " << idx.num_patients() << " patients, " << idx.num_rooms()
      << " rooms, " << idx.num_nurses() << " nurses, " << idx.num_days
      << " days\n\n";

  out << "occupancy\n";
  for (int d = 1; d <= idx.num_days; ++d) {
    out << "  day " << d << "\n";
    for (int r = 0; r < idx.num_rooms(); ++r) {
      out << "    " << idx.room(r).id << ": [";
      bool first = true;
      for (int p = 0; p < idx.num_patients(); ++p) {
        if (idx.patient_on_day(p, d) && is.room[p][d] == r) {
          if (!first) out << ", ";
          out << idx.patient(p).id;
          first = false;
        }
      }
      out << "]\n";
    }
  }

  out << "\nnurse loads (assigned/max per rostered shift)\n";
  std::vector<std::vector<double>> load(idx.num_nurses(),
                                        std::vector<double>(idx.num_shifts + 1, 0.0));
  for (int p = 0; p < idx.num_patients(); ++p) {
    for (int s = idx.first_shift[p]; s <= idx.last_shift[p]; ++s) {
      if (is.nurse[p][s] >= 0) load[is.nurse[p][s]][s] += idx.workload[p][s];
    }
  }
  for (int n = 0; n < idx.num_nurses(); ++n) {
    out << "  " << idx.nurse(n).id << ":";
    for (int s : inst.nurses[n].shifts) {
      double ml = idx.nurse_maxload[n][s];
      out << "  s" << s << " " << fixed(load[n][s], 2) << "/" << format_double(ml);
      if (load[n][s] > ml) out << " (over by " << fixed(load[n][s] - ml, 2) << ")";
    }
    out << "\n";
  }

  out << "\n" << render_breakdown(eval_total(inst, sol), inst.weights);
  return out.str();
}

}  // namespace iprnpa
