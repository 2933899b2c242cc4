#pragma once

#include <cstdint>

#include "wallplan/engine.hpp"

namespace wallplan {

/// The traditional layer-by-layer reference planner. Bricks are scheduled
/// strictly in id order (left to right within a layer, layers bottom-up),
/// each as early as its supports, its already-scheduled concurrence
/// partners, and the fleet allow. Deterministic; an idealized
/// continuously-working crew (no return leg between cycles).
Plan naive_plan(const WallBlueprint& bp, const ConstraintGraph& graph,
                const std::vector<Robot>& robots);

struct OracleResult {
  double optimal_completion = 0.0;
  Plan plan;
  uint64_t states_explored = 0;
  bool certified = false;  // false when the state budget ran out
};

/// Exhaustive branch-and-bound over event-driven schedules under the
/// engine's timing rules. Certifies the minimum completion time for
/// full-wall construction; intended for instances of about ten bricks.
OracleResult exact_oracle(const WallBlueprint& bp, const ConstraintGraph& graph,
                          const std::vector<Robot>& robots,
                          uint64_t state_budget = 20'000'000);

/// Relative bound distance in percent: 100 |bound - integer| / (|integer| + 1e-10).
double gap_percent(double best_bound, double best_integer);

}  // namespace wallplan
