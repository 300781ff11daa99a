#ifndef IPRNPA_INSTGEN_HPP
#define IPRNPA_INSTGEN_HPP

#include <array>
#include <random>
#include <string>
#include <vector>

#include "iprnpa/instance.hpp"

namespace iprnpa {

enum class NurseMode { manual, automatic };

struct GenConfig {
  int num_instances = 1;
  int weeks = 2;
  int days_per_week = 7;  // the real ward closes on weekends and uses 5
  int days_override = 0;  // when > 0, horizon length in days directly
  std::array<int, 5> room_mix{};  // room_mix[b] rooms with b beds, b in 1..4
  double occupancy = 0.85;
  std::vector<std::string> equipment_universe;
  int skill_levels = 3;  // 2 or 3
  std::array<double, 4> skill_mix{};  // share of nurses per level, index 1..3
  int additional_rooms = 1;
  NurseMode nurse_mode = NurseMode::automatic;
  int manual_nurse_count = 0;
  std::array<int, 4> required_per_shift{};  // nurses of skill >= l, index 1..3
  int max_shifts = 0;  // 0 selects the default of 5 per week
  unsigned seed = 1;

  int num_days() const;
  int total_beds() const;
  int effective_max_shifts() const;
};

// Throws StructuralError on out-of-range fields (occupancy outside (0,1],
// no beds, no additional room, level-3 staffing with two skill levels, ...).
void validate_config(const GenConfig& cfg);

// Built-in scenario configs: 30beds-var1/2/3, 60beds-var1/2/3 (double,
// triple and mixed room layouts at 85% occupancy), realward (the 17-room
// ward, two skill levels, 61% occupancy, 5-day weeks) and tiny (two rooms,
// two days, small enough for exhaustive search).
GenConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

GenConfig parse_gen_config_json(const std::string& text);
std::string gen_config_to_json(const GenConfig& cfg);

// Raw per-patient draws, exposed so distribution tests can sample the
// marginals directly. generate_instance consumes the same functions.
struct PatientDraw {
  int agegroup = 0;  // uniform 2..9
  int age = 0;       // 10*agegroup plus a uniform digit
  char gender = 'F';
  int los_days = 0;  // uniform 1..5
};
PatientDraw sample_patient_attributes(std::mt19937& rng);

// First value from gamma(3, 0.5+agegroup/10) clamped to [1,5], then
// multiplicative decay by 0.9 per shift with a floor of 1.
std::vector<double> sample_workload(int agegroup, int los_shifts, std::mt19937& rng);

// Shift capacity by skill level: 10 / 12.5 / 15 patient-workload units.
double maxload_for_skill(int skill);

// Start level drawn with P(2)=0.2, P(1)=0.5, P(0)=0.3, then single-level
// steps down at uniformly sampled stay positions. One value per day shift.
std::vector<int> sample_skillreq(int num_day_shifts, std::mt19937& rng);

Instance generate_instance(const GenConfig& cfg, unsigned seed);

// Completes a hand-collected instance: missing workload, skillreq and
// equipment_req maps are filled with the generator's samplers. Shifts where
// patients are present but nobody is rostered are reported as issues, not
// repaired.
struct FillResult {
  Instance instance;
  std::vector<std::string> issues;
};
FillResult fill_missing_real_data(const Instance& partial, unsigned seed);

}  // namespace iprnpa

#endif
