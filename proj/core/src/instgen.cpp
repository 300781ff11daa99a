#include "iprnpa/instgen.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "iprnpa/errors.hpp"
#include "iprnpa/roster.hpp"
#include "iprnpa/validate.hpp"

namespace iprnpa {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kRoomMixNames[5] = {"", "single", "double", "triple",
                                          "quadruple"};

void apply_defaults(GenConfig& cfg) {
  if (cfg.equipment_universe.empty()) cfg.equipment_universe = {"monitor", "oxygen"};
  bool no_mix = cfg.skill_mix[1] == 0 && cfg.skill_mix[2] == 0 && cfg.skill_mix[3] == 0;
  if (no_mix) {
    cfg.skill_mix = cfg.skill_levels == 3 ? std::array<double, 4>{0, 0.2, 0.6, 0.2}
                                          : std::array<double, 4>{0, 0.8, 0.2, 0};
  }
  bool no_req = cfg.required_per_shift[1] == 0 && cfg.required_per_shift[2] == 0 &&
                cfg.required_per_shift[3] == 0;
  if (no_req) {
    cfg.required_per_shift = cfg.skill_levels == 3 ? std::array<int, 4>{0, 1, 3, 1}
                                                   : std::array<int, 4>{0, 4, 1, 0};
  }
}

}  // namespace

double maxload_for_skill(int skill) {
  switch (skill) {
    case 1: return 10.0;
    case 2: return 12.5;
    default: return 15.0;
  }
}

int GenConfig::num_days() const {
  return days_override > 0 ? days_override : weeks * days_per_week;
}

int GenConfig::total_beds() const {
  int beds = 0;
  for (int b = 1; b <= 4; ++b) beds += b * room_mix[b];
  return beds;
}

int GenConfig::effective_max_shifts() const {
  if (max_shifts > 0) return max_shifts;
  int w = (num_days() + days_per_week - 1) / days_per_week;
  return 5 * w;
}

void validate_config(const GenConfig& cfg) {
  auto fail = [](const std::string& msg) { throw StructuralError("config: " + msg); };
  if (cfg.num_instances < 1) fail("num_instances must be at least 1");
  if (cfg.days_override < 0) fail("days must be nonnegative");
  if (cfg.days_override == 0 && cfg.weeks < 1) fail("weeks must be at least 1");
  if (cfg.days_per_week < 1 || cfg.days_per_week > 7) {
    fail("days_per_week must lie in 1..7");
  }
  for (int b = 1; b <= 4; ++b) {
    if (cfg.room_mix[b] < 0) fail("room counts must be nonnegative");
  }
  if (cfg.total_beds() < 1) fail("the room mix has no beds");
  if (!(cfg.occupancy > 0.0) || cfg.occupancy > 1.0) {
    fail("occupancy must lie in (0, 1]");
  }
  if (std::llround(cfg.occupancy * cfg.total_beds()) < 1) {
    fail("occupancy target rounds to zero patients; not reachable with these rooms");
  }
  std::set<std::string> eq(cfg.equipment_universe.begin(),
                           cfg.equipment_universe.end());
  if (eq.size() != cfg.equipment_universe.size()) fail("duplicate equipment type");
  for (const std::string& e : cfg.equipment_universe) {
    if (e.empty()) fail("empty equipment type name");
  }
  if (cfg.skill_levels != 2 && cfg.skill_levels != 3) fail("skill_levels must be 2 or 3");
  double mix_sum = 0;
  for (int l = 1; l <= 3; ++l) {
    if (cfg.skill_mix[l] < 0) fail("skill_mix shares must be nonnegative");
    if (l > cfg.skill_levels && cfg.skill_mix[l] != 0) {
      fail("skill_mix uses a level beyond skill_levels");
    }
    mix_sum += cfg.skill_mix[l];
  }
  if (mix_sum <= 0) fail("skill_mix must have a positive total");
  if (cfg.additional_rooms < 1) fail("at least one additional room is required");
  if (cfg.nurse_mode == NurseMode::manual && cfg.manual_nurse_count < 1) {
    fail("manual nurse mode needs a positive nurse_count");
  }
  int req_total = 0;
  for (int l = 1; l <= 3; ++l) {
    if (cfg.required_per_shift[l] < 0) fail("required_per_shift must be nonnegative");
    if (l > cfg.skill_levels && cfg.required_per_shift[l] != 0) {
      fail("required_per_shift uses a level beyond skill_levels");
    }
    req_total += cfg.required_per_shift[l];
  }
  if (req_total < 1) fail("required_per_shift must demand at least one nurse");
  if (cfg.max_shifts < 0) fail("max_shifts must be nonnegative");
}

GenConfig preset_config(const std::string& name) {
  GenConfig cfg;
  if (name == "30beds-var1") {
    cfg.room_mix = {0, 0, 15, 0, 0};
  } else if (name == "30beds-var2") {
    cfg.room_mix = {0, 0, 0, 10, 0};
  } else if (name == "30beds-var3") {
    cfg.room_mix = {0, 3, 5, 3, 2};
  } else if (name == "60beds-var1") {
    cfg.room_mix = {0, 0, 30, 0, 0};
    cfg.required_per_shift = {0, 1, 5, 1};
  } else if (name == "60beds-var2") {
    cfg.room_mix = {0, 0, 0, 20, 0};
    cfg.required_per_shift = {0, 1, 5, 1};
  } else if (name == "60beds-var3") {
    cfg.room_mix = {0, 6, 10, 6, 4};
    cfg.required_per_shift = {0, 1, 5, 1};
  } else if (name == "realward") {
    cfg.room_mix = {0, 4, 10, 2, 1};
    cfg.occupancy = 0.61;
    cfg.skill_levels = 2;
    cfg.days_per_week = 5;  // the ward closes on weekends
  } else if (name == "tiny") {
    cfg.room_mix = {0, 1, 1, 0, 0};
    cfg.days_override = 2;
    cfg.occupancy = 0.6;
    cfg.skill_levels = 2;
    cfg.skill_mix = {0, 0.5, 0.5, 0};
    cfg.required_per_shift = {0, 1, 1, 0};
    cfg.max_shifts = 4;
  } else {
    throw StructuralError("unknown preset '" + name + "'");
  }
  apply_defaults(cfg);
  validate_config(cfg);
  return cfg;
}

std::vector<std::string> preset_names() {
  return {"30beds-var1", "30beds-var2", "30beds-var3", "60beds-var1",
          "60beds-var2", "60beds-var3", "realward",    "tiny"};
}

GenConfig parse_gen_config_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw StructuralError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw StructuralError("config must be a JSON object");
  GenConfig cfg;
  auto get_int = [&](const char* key, int& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) {
      throw StructuralError(std::string("config ") + key + " must be an integer");
    }
    out = j[key].get<int>();
  };
  get_int("num_instances", cfg.num_instances);
  get_int("weeks", cfg.weeks);
  get_int("days_per_week", cfg.days_per_week);
  get_int("days", cfg.days_override);
  get_int("skill_levels", cfg.skill_levels);
  get_int("additional_rooms", cfg.additional_rooms);
  get_int("nurse_count", cfg.manual_nurse_count);
  get_int("max_shifts", cfg.max_shifts);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) {
      throw StructuralError("config seed must be a nonnegative integer");
    }
    cfg.seed = j["seed"].get<unsigned>();
  }
  if (j.contains("occupancy")) {
    if (!j["occupancy"].is_number()) {
      throw StructuralError("config occupancy must be a number");
    }
    cfg.occupancy = j["occupancy"].get<double>();
  }
  if (j.contains("room_mix")) {
    if (!j["room_mix"].is_object()) {
      throw StructuralError("config room_mix must be an object");
    }
    for (const auto& [k, v] : j["room_mix"].items()) {
      int beds = 0;
      for (int b = 1; b <= 4; ++b) {
        if (k == kRoomMixNames[b]) beds = b;
      }
      if (beds == 0) throw StructuralError("config room_mix has unknown key " + k);
      if (!v.is_number_integer()) {
        throw StructuralError("config room_mix counts must be integers");
      }
      cfg.room_mix[beds] = v.get<int>();
    }
  }
  if (j.contains("equipment")) {
    if (!j["equipment"].is_array()) {
      throw StructuralError("config equipment must be an array of names");
    }
    for (const auto& e : j["equipment"]) {
      if (!e.is_string()) throw StructuralError("config equipment entries must be strings");
      cfg.equipment_universe.push_back(e.get<std::string>());
    }
  }
  auto get_levels = [&](const char* key, auto& out) {
    if (!j.contains(key)) return;
    if (!j[key].is_array() || j[key].size() > 3) {
      throw StructuralError(std::string("config ") + key +
                            " must be an array with one entry per skill level");
    }
    int l = 1;
    for (const auto& v : j[key]) {
      if (!v.is_number()) {
        throw StructuralError(std::string("config ") + key + " entries must be numbers");
      }
      out[l++] = v.get<std::remove_reference_t<decltype(out[0])>>();
    }
  };
  get_levels("skill_mix", cfg.skill_mix);
  get_levels("required_per_shift", cfg.required_per_shift);
  if (j.contains("nurse_mode")) {
    std::string mode = j["nurse_mode"].is_string() ? j["nurse_mode"].get<std::string>()
                                                   : std::string();
    if (mode == "manual") {
      cfg.nurse_mode = NurseMode::manual;
    } else if (mode == "automatic") {
      cfg.nurse_mode = NurseMode::automatic;
    } else {
      throw StructuralError("config nurse_mode must be \"manual\" or \"automatic\"");
    }
  }
  apply_defaults(cfg);
  validate_config(cfg);
  return cfg;
}

std::string gen_config_to_json(const GenConfig& cfg) {
  ordered_json j;
  j["num_instances"] = cfg.num_instances;
  j["weeks"] = cfg.weeks;
  j["days_per_week"] = cfg.days_per_week;
  if (cfg.days_override > 0) j["days"] = cfg.days_override;
  ordered_json mix;
  for (int b = 1; b <= 4; ++b) mix[kRoomMixNames[b]] = cfg.room_mix[b];
  j["room_mix"] = std::move(mix);
  j["occupancy"] = cfg.occupancy;
  j["equipment"] = cfg.equipment_universe;
  j["skill_levels"] = cfg.skill_levels;
  ordered_json mix_arr = ordered_json::array();
  ordered_json req_arr = ordered_json::array();
  for (int l = 1; l <= cfg.skill_levels; ++l) {
    mix_arr.push_back(cfg.skill_mix[l]);
    req_arr.push_back(cfg.required_per_shift[l]);
  }
  j["skill_mix"] = std::move(mix_arr);
  j["required_per_shift"] = std::move(req_arr);
  j["additional_rooms"] = cfg.additional_rooms;
  j["nurse_mode"] = cfg.nurse_mode == NurseMode::manual ? "manual" : "automatic";
  if (cfg.nurse_mode == NurseMode::manual) j["nurse_count"] = cfg.manual_nurse_count;
  j["max_shifts"] = cfg.effective_max_shifts();
  j["seed"] = cfg.seed;
  return j.dump(2) + "\n";
}

PatientDraw sample_patient_attributes(std::mt19937& rng) {
  PatientDraw d;
  d.agegroup = std::uniform_int_distribution<int>(2, 9)(rng);
  d.age = 10 * d.agegroup + std::uniform_int_distribution<int>(0, 9)(rng);
  d.gender = std::bernoulli_distribution(0.5)(rng) ? 'F' : 'M';
  d.los_days = std::uniform_int_distribution<int>(1, 5)(rng);
  return d;
}

std::vector<double> sample_workload(int agegroup, int los_shifts, std::mt19937& rng) {
  if (los_shifts < 1) throw StructuralError("sample_workload needs at least one shift");
  std::gamma_distribution<double> gamma(3.0, 0.5 + agegroup / 10.0);
  std::vector<double> out;
  out.reserve(los_shifts);
  out.push_back(std::clamp(gamma(rng), 1.0, 5.0));
  while (static_cast<int>(out.size()) < los_shifts) {
    out.push_back(std::max(1.0, 0.9 * out.back()));
  }
  return out;
}

std::vector<int> sample_skillreq(int num_day_shifts, std::mt19937& rng) {
  if (num_day_shifts < 1) {
    throw StructuralError("sample_skillreq needs at least one day shift");
  }
  double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  int level = u < 0.2 ? 2 : (u < 0.7 ? 1 : 0);
  std::vector<int> out(num_day_shifts, level);
  if (level == 0 || num_day_shifts == 1) return out;
  // one candidate drop position per level held; positions past the stay
  // mean the drop never happens, collisions cascade right so the sequence
  // steps down by at most one level at a time
  std::vector<int> drops;
  std::uniform_int_distribution<int> pos(2, num_day_shifts + 1);
  for (int k = 0; k < level; ++k) drops.push_back(pos(rng));
  std::sort(drops.begin(), drops.end());
  int prev = 1;
  for (int& p : drops) {
    p = std::max(p, prev + 1);
    prev = p;
  }
  for (int p : drops) {
    for (int t = p; t <= num_day_shifts; ++t) --out[t - 1];
  }
  for (int& v : out) v = std::max(v, 0);
  return out;
}

namespace {

// Stay days of a patient given admission day and sampled LOS: the discharge
// day is admission + LOS clamped to the horizon, and the patient occupies
// every day in between.
int discharge_day(int admission_day, int los_days, int num_days) {
  return std::min(admission_day + los_days, num_days);
}

std::set<std::string> sample_initial_equipment(const std::vector<std::string>& universe,
                                               std::mt19937& rng) {
  std::set<std::string> out;
  std::bernoulli_distribution coin(0.3);
  for (const std::string& e : universe) {
    if (coin(rng)) out.insert(e);
  }
  return out;
}

}  // namespace

Instance generate_instance(const GenConfig& cfg, unsigned seed) {
  validate_config(cfg);
  std::mt19937 rng(seed);
  const int D = cfg.num_days();
  ShiftCalendar cal(D);

  Instance inst;
  inst.num_days = D;
  inst.equipment_types = cfg.equipment_universe;

  // Rooms along one corridor at 10-meter spacing, additional rooms spread
  // evenly between the ends. Real floor plans are not public, so the
  // corridor stands in for them.
  std::bernoulli_distribution has_equipment(0.5);
  for (int b = 1; b <= 4; ++b) {
    for (int i = 0; i < cfg.room_mix[b]; ++i) {
      Room room;
      room.id = "r" + std::to_string(inst.rooms.size() + 1);
      room.num_beds = b;
      for (const std::string& e : cfg.equipment_universe) {
        if (has_equipment(rng)) room.equipment.insert(e);
      }
      inst.rooms.push_back(std::move(room));
    }
  }
  const int R = static_cast<int>(inst.rooms.size());
  for (int k = 1; k <= cfg.additional_rooms; ++k) {
    inst.additional_rooms.push_back("station" + std::to_string(k));
  }
  auto room_pos = [](int index1) { return 10.0 * index1; };
  for (int i = 1; i <= R; ++i) {
    for (int j = i + 1; j <= R; ++j) {
      inst.distances.set_between_rooms(inst.rooms[i - 1].id, inst.rooms[j - 1].id,
                                       room_pos(j) - room_pos(i));
    }
  }
  for (int k = 1; k <= cfg.additional_rooms; ++k) {
    double pos = 10.0 * (R + 1) * k / (cfg.additional_rooms + 1);
    for (int j = 1; j <= R; ++j) {
      inst.distances.set_from_additional(inst.additional_rooms[k - 1],
                                         inst.rooms[j - 1].id,
                                         std::abs(pos - room_pos(j)));
    }
  }

  for (int s = 1; s <= cal.num_shifts(); ++s) {
    switch (cal.shift_type(s)) {
      case ShiftType::early:
        inst.walk_weights.circular[s] = 2.0;
        inst.walk_weights.star[s] = 1.0;
        break;
      case ShiftType::late:
        inst.walk_weights.circular[s] = 1.0;
        inst.walk_weights.star[s] = 1.0;
        break;
      case ShiftType::night:
        inst.walk_weights.circular[s] = 0.5;
        inst.walk_weights.star[s] = 2.0;
        break;
    }
  }

  // Admissions top each day up to the occupancy target. Stays are
  // contiguous, so carry-over can never exceed the previous day's count and
  // the target is hit exactly; the re-sampling loop guards the edge cases.
  const int beds = cfg.total_beds();
  const int target = static_cast<int>(std::llround(cfg.occupancy * beds));
  std::vector<int> in_ward(D + 1, 0);
  for (int d = 1; d <= D; ++d) {
    while (in_ward[d] < target) {
      PatientDraw draw;
      int day_out = 0;
      bool placed = false;
      for (int attempt = 0; attempt < 100 && !placed; ++attempt) {
        draw = sample_patient_attributes(rng);
        day_out = discharge_day(d, draw.los_days, D);
        placed = true;
        for (int dd = d; dd <= day_out; ++dd) placed &= in_ward[dd] < beds;
      }
      if (!placed) {
        throw StructuralError("no length of stay starting on day " + std::to_string(d) +
                              " fits the remaining beds");
      }
      Patient p;
      p.id = "p" + std::to_string(inst.patients.size() + 1);
      p.gender = draw.gender;
      p.age = draw.age;
      p.adshift = cal.early_shift(d);
      p.dishift = cal.night_shift(day_out);
      int stay_days = day_out - d + 1;
      std::vector<double> load = sample_workload(draw.agegroup, 3 * stay_days, rng);
      for (int s = p.adshift; s <= p.dishift; ++s) {
        p.workload[s] = load[s - p.adshift];
      }
      std::vector<int> skill = sample_skillreq(2 * stay_days, rng);
      int t = 0;
      for (int dd = d; dd <= day_out; ++dd) {
        p.skillreq[cal.early_shift(dd)] = skill[t++];
        p.skillreq[cal.late_shift(dd)] = skill[t++];
      }
      std::set<std::string> initial = sample_initial_equipment(cfg.equipment_universe, rng);
      std::map<std::string, int> keep;
      for (const std::string& e : initial) {
        keep[e] = std::uniform_int_distribution<int>(1, stay_days)(rng);
      }
      for (int dd = d; dd <= day_out; ++dd) {
        std::set<std::string>& req = p.equipment_req[cal.early_shift(dd)];
        for (const auto& [e, k] : keep) {
          if (dd - d < k) req.insert(e);
        }
      }
      for (int dd = d; dd <= day_out; ++dd) ++in_ward[dd];
      inst.patients.push_back(std::move(p));
    }
  }

  std::vector<std::array<int, 4>> required =
      uniform_requirements(D, cfg.required_per_shift);
  const int max_shifts = cfg.effective_max_shifts();
  std::vector<RosterNurse> roster_nurses;
  Roster roster;
  if (cfg.nurse_mode == NurseMode::automatic) {
    NurseCountResult res =
        automatic_nurse_count(D, required, max_shifts, cfg.skill_mix);
    roster_nurses = std::move(res.nurses);
    roster = std::move(res.roster);
  } else {
    std::array<int, 4> per_level = apportion_skills(cfg.manual_nurse_count, cfg.skill_mix);
    for (int l = 1; l <= 3; ++l) {
      for (int i = 0; i < per_level[l]; ++i) {
        roster_nurses.push_back({"n" + std::to_string(roster_nurses.size() + 1), l});
      }
    }
    RosterRequest req;
    req.num_days = D;
    req.nurses = roster_nurses;
    req.required = required;
    req.max_shifts = max_shifts;
    roster = solve_roster(req);
  }
  for (size_t i = 0; i < roster_nurses.size(); ++i) {
    Nurse n;
    n.id = roster_nurses[i].id;
    n.skill = roster_nurses[i].skill;
    n.shifts = roster.shifts_of_nurse[i];
    for (int s : n.shifts) n.maxload[s] = maxload_for_skill(n.skill);
    inst.nurses.push_back(std::move(n));
  }

  require_valid(inst);
  return inst;
}

FillResult fill_missing_real_data(const Instance& partial, unsigned seed) {
  FillResult result;
  result.instance = partial;
  std::mt19937 rng(seed);
  ShiftCalendar cal = partial.calendar();
  for (Patient& p : result.instance.patients) {
    int first = p.first_shift();
    int last = p.last_shift(cal);
    if (p.workload.empty()) {
      std::vector<double> load =
          sample_workload(p.agegroup(), last - first + 1, rng);
      for (int s = first; s <= last; ++s) p.workload[s] = load[s - first];
    }
    if (p.skillreq.empty()) {
      std::vector<int> day_shifts;
      for (int s = first; s <= last; ++s) {
        if (!cal.is_night(s)) day_shifts.push_back(s);
      }
      if (!day_shifts.empty()) {
        std::vector<int> skill =
            sample_skillreq(static_cast<int>(day_shifts.size()), rng);
        for (size_t i = 0; i < day_shifts.size(); ++i) {
          p.skillreq[day_shifts[i]] = skill[i];
        }
      }
    }
    if (p.equipment_req.empty()) {
      for (int s = first; s <= last; ++s) {
        if (cal.is_early(s)) p.equipment_req[s];  // no equipment needed
      }
    }
  }
  // Weeks where patients are present but nobody is on duty made the real
  // data unusable; report them instead of inventing a roster.
  for (int s = 1; s <= cal.num_shifts(); ++s) {
    bool any_patient = false;
    for (const Patient& p : result.instance.patients) any_patient |= p.in_ward(s);
    if (!any_patient) continue;
    bool any_nurse = false;
    for (const Nurse& n : result.instance.nurses) any_nurse |= n.works(s);
    if (!any_nurse) {
      result.issues.push_back("shift " + std::to_string(s) + " (day " +
                              std::to_string(cal.day_of(s)) +
                              ") has patients in ward but no rostered nurse");
    }
  }
  return result;
}

}  // namespace iprnpa
