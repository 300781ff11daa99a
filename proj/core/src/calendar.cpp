#include "iprnpa/calendar.hpp"

#include "iprnpa/errors.hpp"

namespace iprnpa {

ShiftCalendar::ShiftCalendar(int num_days) : num_days_(num_days) {
  if (num_days < 1) {
    throw StructuralError("calendar needs at least one day, got " +
                          std::to_string(num_days));
  }
}

ShiftType ShiftCalendar::shift_type(int s) const {
  if (s < 1 || s > num_shifts()) {
    throw StructuralError("shift " + std::to_string(s) + " outside 1.." +
                          std::to_string(num_shifts()));
  }
  switch (s % 3) {
    case 1: return ShiftType::early;
    case 2: return ShiftType::late;
    default: return ShiftType::night;
  }
}

int ShiftCalendar::day_of(int s) const {
  shift_type(s);  // range check
  return (s + 2) / 3;
}

std::array<int, 3> ShiftCalendar::shifts_of_day(int d) const {
  if (d < 1 || d > num_days_) {
    throw StructuralError("day " + std::to_string(d) + " outside 1.." +
                          std::to_string(num_days_));
  }
  return {3 * d - 2, 3 * d - 1, 3 * d};
}

}  // namespace iprnpa
