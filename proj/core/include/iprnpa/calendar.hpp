#ifndef IPRNPA_CALENDAR_HPP
#define IPRNPA_CALENDAR_HPP

#include <array>

namespace iprnpa {

enum class ShiftType { early, late, night };

// Planning horizon of num_days days, each split into an early, a late and a
// night shift. Shifts are numbered 1..3*num_days; shift s belongs to day
// ceil(s/3). Shift 0 and shift 3*num_days+1 never exist, they act as
// sentinels for "admitted before the horizon" and "discharged after it".
class ShiftCalendar {
 public:
  explicit ShiftCalendar(int num_days);  // throws StructuralError if num_days < 1

  int num_days() const { return num_days_; }
  int num_shifts() const { return 3 * num_days_; }

  ShiftType shift_type(int s) const;  // throws on s outside 1..num_shifts
  bool is_early(int s) const { return shift_type(s) == ShiftType::early; }
  bool is_late(int s) const { return shift_type(s) == ShiftType::late; }
  bool is_night(int s) const { return shift_type(s) == ShiftType::night; }

  int day_of(int s) const;  // throws on s outside 1..num_shifts

  // The (early, late, night) shifts of day d, i.e. (3d-2, 3d-1, 3d).
  std::array<int, 3> shifts_of_day(int d) const;
  int early_shift(int d) const { return shifts_of_day(d)[0]; }
  int late_shift(int d) const { return shifts_of_day(d)[1]; }
  int night_shift(int d) const { return shifts_of_day(d)[2]; }

 private:
  int num_days_;
};

}  // namespace iprnpa

#endif
