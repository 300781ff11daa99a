#include "iprnpa/json_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "iprnpa/errors.hpp"

namespace iprnpa {

namespace {

using json = nlohmann::ordered_json;

json parse_or_throw(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw StructuralError(what + ": not valid JSON");
  return j;
}

const json& need(const json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw StructuralError(where + ": missing field '" + key + "'");
  return *it;
}

int need_int(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number_integer()) {
    throw StructuralError(where + ": field '" + key + "' must be an integer");
  }
  return v.get<int>();
}

double need_num(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_number()) {
    throw StructuralError(where + ": field '" + key + "' must be a number");
  }
  return v.get<double>();
}

std::string need_str(const json& j, const char* key, const std::string& where) {
  const json& v = need(j, key, where);
  if (!v.is_string()) {
    throw StructuralError(where + ": field '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

int shift_key(const std::string& key, const std::string& where) {
  try {
    size_t pos = 0;
    int s = std::stoi(key, &pos);
    if (pos != key.size()) throw std::invalid_argument(key);
    return s;
  } catch (const std::exception&) {
    throw StructuralError(where + ": shift key '" + key + "' is not an integer");
  }
}

std::map<int, double> parse_shift_num_map(const json& j, const std::string& where) {
  std::map<int, double> out;
  if (!j.is_object()) throw StructuralError(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    if (!v.is_number()) throw StructuralError(where + ": value for shift " + k +
                                              " must be a number");
    out[shift_key(k, where)] = v.get<double>();
  }
  return out;
}

template <typename Map>
json shift_map_to_json(const Map& m) {
  json out = json::object();
  for (const auto& [s, v] : m) out[std::to_string(s)] = v;
  return out;
}

json string_set_to_json(const std::set<std::string>& s) {
  json out = json::array();
  for (const std::string& v : s) out.push_back(v);
  return out;
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  json j = parse_or_throw(text, "instance");
  Instance inst;
  inst.schema_version = need_int(j, "schema_version", "instance");
  if (inst.schema_version != 1) {
    throw StructuralError("instance: unsupported schema_version " +
                          std::to_string(inst.schema_version));
  }
  inst.num_days = need_int(j, "num_days", "instance");

  for (const json& e : need(j, "equipment_types", "instance")) {
    inst.equipment_types.push_back(e.get<std::string>());
  }

  for (const json& rj : need(j, "rooms", "instance")) {
    Room r;
    r.id = need_str(rj, "id", "room");
    r.num_beds = need_int(rj, "num_beds", "room " + r.id);
    if (rj.contains("equipment")) {
      for (const json& e : rj["equipment"]) r.equipment.insert(e.get<std::string>());
    }
    inst.rooms.push_back(std::move(r));
  }

  if (j.contains("additional_rooms")) {
    for (const json& a : j["additional_rooms"]) {
      inst.additional_rooms.push_back(a.get<std::string>());
    }
  }

  const json& dj = need(j, "distances", "instance");
  if (dj.contains("between_rooms")) {
    for (const json& e : dj["between_rooms"]) {
      std::string from = need_str(e, "from", "distances");
      std::string to = need_str(e, "to", "distances");
      double d = need_num(e, "distance", "distances");
      if (inst.distances.has_between_rooms(from, to) &&
          inst.distances.between_rooms(from, to) != d) {
        throw StructuralError("distances: conflicting values for rooms " + from +
                              " and " + to);
      }
      inst.distances.set_between_rooms(from, to, d);
    }
  }
  if (dj.contains("from_additional")) {
    for (const json& e : dj["from_additional"]) {
      std::string from = need_str(e, "from", "distances");
      std::string to = need_str(e, "to", "distances");
      double d = need_num(e, "distance", "distances");
      if (inst.distances.has_from_additional(from, to) &&
          inst.distances.from_additional(from, to) != d) {
        throw StructuralError("distances: conflicting values from " + from + " to " +
                              to);
      }
      inst.distances.set_from_additional(from, to, d);
    }
  }

  for (const json& pj : need(j, "patients", "instance")) {
    Patient p;
    p.id = need_str(pj, "id", "patient");
    std::string where = "patient " + p.id;
    std::string gender = need_str(pj, "gender", where);
    if (gender.size() != 1) throw StructuralError(where + ": gender must be F or M");
    p.gender = gender[0];
    p.age = need_int(pj, "age", where);
    p.adshift = need_int(pj, "adshift", where);
    p.dishift = need_int(pj, "dishift", where);
    if (pj.contains("skillreq")) {
      for (const auto& [k, v] : pj["skillreq"].items()) {
        if (!v.is_number_integer()) {
          throw StructuralError(where + ": skillreq values must be integers");
        }
        p.skillreq[shift_key(k, where + " skillreq")] = v.get<int>();
      }
    }
    if (pj.contains("workload")) {
      p.workload = parse_shift_num_map(pj["workload"], where + " workload");
    }
    if (pj.contains("equipment_req")) {
      for (const auto& [k, v] : pj["equipment_req"].items()) {
        std::set<std::string>& req =
            p.equipment_req[shift_key(k, where + " equipment_req")];
        for (const json& e : v) req.insert(e.get<std::string>());
      }
    }
    if (pj.contains("prev_room") && !pj["prev_room"].is_null()) {
      p.prev_room = pj["prev_room"].get<std::string>();
    }
    if (pj.contains("prev_nurses")) {
      for (const json& n : pj["prev_nurses"]) p.prev_nurses.insert(n.get<std::string>());
    }
    inst.patients.push_back(std::move(p));
  }

  for (const json& nj : need(j, "nurses", "instance")) {
    Nurse n;
    n.id = need_str(nj, "id", "nurse");
    std::string where = "nurse " + n.id;
    n.skill = need_int(nj, "skill", where);
    for (const json& s : need(nj, "shifts", where)) {
      if (!s.is_number_integer()) {
        throw StructuralError(where + ": shifts must be integers");
      }
      n.shifts.insert(s.get<int>());
    }
    n.maxload = parse_shift_num_map(need(nj, "maxload", where), where + " maxload");
    inst.nurses.push_back(std::move(n));
  }

  const json& wj = need(j, "walk_weights", "instance");
  inst.walk_weights.circular =
      parse_shift_num_map(need(wj, "circular", "walk_weights"), "walk_weights.circular");
  inst.walk_weights.star =
      parse_shift_num_map(need(wj, "star", "walk_weights"), "walk_weights.star");

  if (j.contains("objective_weights")) {
    const json& ow = j["objective_weights"];
    ObjectiveWeights& w = inst.weights;
    w.transfers = need_num(ow, "transfers", "objective_weights");
    w.inconvenience = need_num(ow, "inconvenience", "objective_weights");
    w.gender = need_num(ow, "gender", "objective_weights");
    w.equipment = need_num(ow, "equipment", "objective_weights");
    w.continuity = need_num(ow, "continuity", "objective_weights");
    w.skill_load_fair = need_num(ow, "skill_load_fair", "objective_weights");
    w.nurses_per_room = need_num(ow, "nurses_per_room", "objective_weights");
    w.walking = need_num(ow, "walking", "objective_weights");
    w.heterogeneity = need_num(ow, "heterogeneity", "objective_weights");
  }

  return inst;
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["schema_version"] = inst.schema_version;
  j["num_days"] = inst.num_days;
  j["equipment_types"] = inst.equipment_types;

  json rooms = json::array();
  for (const Room& r : inst.rooms) {
    json rj;
    rj["id"] = r.id;
    rj["num_beds"] = r.num_beds;
    rj["equipment"] = string_set_to_json(r.equipment);
    rooms.push_back(std::move(rj));
  }
  j["rooms"] = std::move(rooms);
  j["additional_rooms"] = inst.additional_rooms;

  json between = json::array();
  for (const auto& [pair, d] : inst.distances.room_pairs()) {
    between.push_back({{"from", pair.first}, {"to", pair.second}, {"distance", d}});
  }
  json from_add = json::array();
  for (const auto& [pair, d] : inst.distances.additional_pairs()) {
    from_add.push_back({{"from", pair.first}, {"to", pair.second}, {"distance", d}});
  }
  j["distances"] = {{"between_rooms", std::move(between)},
                    {"from_additional", std::move(from_add)}};

  json patients = json::array();
  for (const Patient& p : inst.patients) {
    json pj;
    pj["id"] = p.id;
    pj["gender"] = std::string(1, p.gender);
    pj["age"] = p.age;
    pj["adshift"] = p.adshift;
    pj["dishift"] = p.dishift;
    pj["skillreq"] = shift_map_to_json(p.skillreq);
    pj["workload"] = shift_map_to_json(p.workload);
    json eq = json::object();
    for (const auto& [s, req] : p.equipment_req) {
      eq[std::to_string(s)] = string_set_to_json(req);
    }
    pj["equipment_req"] = std::move(eq);
    if (p.prev_room) pj["prev_room"] = *p.prev_room;
    pj["prev_nurses"] = string_set_to_json(p.prev_nurses);
    patients.push_back(std::move(pj));
  }
  j["patients"] = std::move(patients);

  json nurses = json::array();
  for (const Nurse& n : inst.nurses) {
    json nj;
    nj["id"] = n.id;
    nj["skill"] = n.skill;
    nj["shifts"] = std::vector<int>(n.shifts.begin(), n.shifts.end());
    nj["maxload"] = shift_map_to_json(n.maxload);
    nurses.push_back(std::move(nj));
  }
  j["nurses"] = std::move(nurses);

  j["walk_weights"] = {{"circular", shift_map_to_json(inst.walk_weights.circular)},
                       {"star", shift_map_to_json(inst.walk_weights.star)}};

  const ObjectiveWeights& w = inst.weights;
  j["objective_weights"] = {{"transfers", w.transfers},
                            {"inconvenience", w.inconvenience},
                            {"gender", w.gender},
                            {"equipment", w.equipment},
                            {"continuity", w.continuity},
                            {"skill_load_fair", w.skill_load_fair},
                            {"nurses_per_room", w.nurses_per_room},
                            {"walking", w.walking},
                            {"heterogeneity", w.heterogeneity}};

  return j.dump(2) + "\n";
}

Solution parse_solution_json(const std::string& text) {
  json j = parse_or_throw(text, "solution");
  Solution sol;
  int version = need_int(j, "schema_version", "solution");
  if (version != 1) {
    throw StructuralError("solution: unsupported schema_version " +
                          std::to_string(version));
  }
  sol.instance_ref = need_str(j, "instance_ref", "solution");
  for (const json& e : need(j, "room_of", "solution")) {
    std::string p = need_str(e, "patient", "room_of");
    int day = need_int(e, "day", "room_of");
    std::string room = need_str(e, "room", "room_of");
    if (!sol.room_of.emplace(std::make_pair(p, day), room).second) {
      throw StructuralError("solution: duplicate room_of entry for patient " + p +
                            " day " + std::to_string(day));
    }
  }
  for (const json& e : need(j, "nurse_of", "solution")) {
    std::string p = need_str(e, "patient", "nurse_of");
    int shift = need_int(e, "shift", "nurse_of");
    std::string nurse = need_str(e, "nurse", "nurse_of");
    if (!sol.nurse_of.emplace(std::make_pair(p, shift), nurse).second) {
      throw StructuralError("solution: duplicate nurse_of entry for patient " + p +
                            " shift " + std::to_string(shift));
    }
  }
  return sol;
}

std::string solution_to_json(const Solution& sol) {
  json j;
  j["schema_version"] = 1;
  j["instance_ref"] = sol.instance_ref;
  json rooms = json::array();
  for (const auto& [key, room] : sol.room_of) {
    rooms.push_back({{"patient", key.first}, {"day", key.second}, {"room", room}});
  }
  j["room_of"] = std::move(rooms);
  json nurses = json::array();
  for (const auto& [key, nurse] : sol.nurse_of) {
    nurses.push_back({{"patient", key.first}, {"shift", key.second}, {"nurse", nurse}});
  }
  j["nurse_of"] = std::move(nurses);
  return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StructuralError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw StructuralError("cannot write " + path);
  out << text;
  if (!out) throw StructuralError("failed writing " + path);
}

Instance load_instance(const std::string& path) {
  try {
    return parse_instance_json(read_text_file(path));
  } catch (const StructuralError& e) {
    throw StructuralError(path + ": " + e.what());
  }
}

void save_instance(const Instance& inst, const std::string& path) {
  write_text_file(path, instance_to_json(inst));
}

Solution load_solution(const std::string& path) {
  try {
    return parse_solution_json(read_text_file(path));
  } catch (const StructuralError& e) {
    throw StructuralError(path + ": " + e.what());
  }
}

void save_solution(const Solution& sol, const std::string& path) {
  write_text_file(path, solution_to_json(sol));
}

}  // namespace iprnpa
