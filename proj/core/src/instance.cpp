#include "iprnpa/instance.hpp"

#include <algorithm>

#include "iprnpa/errors.hpp"

namespace iprnpa {

namespace {

std::pair<std::string, std::string> sorted_pair(const std::string& a,
                                                const std::string& b) {
  return a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

void DistanceMatrix::set_between_rooms(const std::string& a, const std::string& b,
                                       double d) {
  if (a == b) {
    if (d != 0.0) {
      throw StructuralError("distance from room " + a + " to itself must be 0");
    }
    return;
  }
  room_room_[sorted_pair(a, b)] = d;
}

void DistanceMatrix::set_from_additional(const std::string& add,
                                         const std::string& room, double d) {
  add_room_[{add, room}] = d;
}

double DistanceMatrix::between_rooms(const std::string& a,
                                     const std::string& b) const {
  if (a == b) return 0.0;
  auto it = room_room_.find(sorted_pair(a, b));
  if (it == room_room_.end()) {
    throw StructuralError("no distance between rooms " + a + " and " + b);
  }
  return it->second;
}

double DistanceMatrix::from_additional(const std::string& add,
                                       const std::string& room) const {
  auto it = add_room_.find({add, room});
  if (it == add_room_.end()) {
    throw StructuralError("no distance from additional room " + add + " to room " +
                          room);
  }
  return it->second;
}

bool DistanceMatrix::has_between_rooms(const std::string& a,
                                       const std::string& b) const {
  return a == b || room_room_.count(sorted_pair(a, b)) != 0;
}

bool DistanceMatrix::has_from_additional(const std::string& add,
                                         const std::string& room) const {
  return add_room_.count({add, room}) != 0;
}

int Instance::total_beds() const {
  int beds = 0;
  for (const Room& r : rooms) beds += r.num_beds;
  return beds;
}

}  // namespace iprnpa
