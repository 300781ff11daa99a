#ifndef IPRNPA_REPORT_HPP
#define IPRNPA_REPORT_HPP

#include <string>

#include "iprnpa/evaluator.hpp"
#include "iprnpa/instance.hpp"

namespace iprnpa {

// Breakdown as a JSON object with a fixed key order, raw components plus
// the weighted total.
std::string breakdown_to_json(const ObjectiveBreakdown& b);
ObjectiveBreakdown parse_breakdown_json(const std::string& text);

// Aligned table of the weighted objective rows. Skill, workload overflow
// and both fairness sums share one weight and one row.
std::string render_breakdown(const ObjectiveBreakdown& b, const ObjectiveWeights& w);

// Human-readable plan: per-day occupancy chart, per-nurse assigned load
// against maxload per rostered shift (overloads flagged with the excess),
// then the objective table. An infeasible pair renders the feasibility
// report instead.
std::string render_plan(const Instance& inst, const Solution& sol);

}  // namespace iprnpa

#endif
