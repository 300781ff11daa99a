#include <doctest.h>

#include "iprnpa/calendar.hpp"
#include "iprnpa/errors.hpp"

using namespace iprnpa;

TEST_CASE("shift numbering over a two-day horizon") {
  ShiftCalendar cal(2);
  CHECK(cal.num_days() == 2);
  CHECK(cal.num_shifts() == 6);

  CHECK(cal.is_early(1));
  CHECK(cal.is_late(2));
  CHECK(cal.is_night(3));
  CHECK(cal.is_early(4));
  CHECK(cal.is_late(5));
  CHECK(cal.is_night(6));

  CHECK(cal.day_of(1) == 1);
  CHECK(cal.day_of(3) == 1);
  CHECK(cal.day_of(4) == 2);
  CHECK(cal.day_of(6) == 2);

  CHECK(cal.shifts_of_day(1) == std::array<int, 3>{1, 2, 3});
  CHECK(cal.shifts_of_day(2) == std::array<int, 3>{4, 5, 6});
  CHECK(cal.early_shift(2) == 4);
  CHECK(cal.late_shift(2) == 5);
  CHECK(cal.night_shift(2) == 6);
}

TEST_CASE("out-of-range shifts and days are refused") {
  ShiftCalendar cal(3);
  CHECK_THROWS_AS(cal.shift_type(0), StructuralError);
  CHECK_THROWS_AS(cal.shift_type(10), StructuralError);
  CHECK_THROWS_AS(cal.day_of(-1), StructuralError);
  CHECK_THROWS_AS(cal.shifts_of_day(0), StructuralError);
  CHECK_THROWS_AS(cal.shifts_of_day(4), StructuralError);
  CHECK_THROWS_AS(ShiftCalendar(0), StructuralError);
}
