#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "wallplan/engine.hpp"

namespace wallplan {

/// A saved partial construction: the full plan state at a brick-count
/// milestone, including the PRNG. Restoring one and resuming yields a
/// valid plan.
struct Snapshot {
  PlanState state;
  int placed_count = 0;
};

struct GraspConfig {
  int k_max = 1000;              // iteration cap
  int k_max_not_improved = 100;  // stagnation cap
  double upsilon = 0.1;          // snapshot coefficient in (0, 1]
  uint64_t seed = 0;
  double t_max = kUnbounded;

  // Iterations are evaluated in fixed-size chunks; the chunk reduction
  // replays iteration order, so the parallel path returns exactly what the
  // serial path returns.
  int chunk_size = 32;
  bool parallel = false;

  // Called on each incumbent improvement: (iteration, reward, T').
  std::function<void(int, int, double)> on_improve;
};

struct SolutionRecord {
  Plan plan;
  int reward = 0;
  double completion_time = 0.0;
};

/// Higher reward wins; at equal reward, lower completion time wins.
bool solution_improves(const SolutionRecord& candidate, const SolutionRecord& incumbent);

/// Snapshot milestones: |Delta| = round(upsilon * b_star_max), at least 1,
/// drawn uniformly without repetition from {1, ..., b_star_max}.
std::vector<int> snapshot_positions(int b_star_max, double upsilon, Rng& rng);

/// Runs iterate_step to termination from `initial`, capturing a snapshot
/// whenever the number of bricks placed by this run hits a milestone.
struct ConstructionResult {
  Plan plan;
  std::vector<Snapshot> snapshots;
  StopReason stop = StopReason::Running;
  Rng rng_after;  // the iteration's stream, continued past the construction
};
ConstructionResult greedy_randomized_construction(PlanState initial, int b_star_max,
                                                  double upsilon);

/// Re-plans from every snapshot with fresh randomness (the caller's
/// stream) and returns the best plan among the construction's own plan and
/// the re-planned ones: reward first, completion time as tie-break.
Plan local_search(const Plan& constructed, const std::vector<Snapshot>& snapshots, Rng& rng);

/// The GRASP optimizer: repeated randomized greedy construction, local
/// search over snapshots, and best-solution tracking. Deterministic for a
/// fixed config.seed (also under the OpenMP path).
SolutionRecord grasp_optimize(const WallBlueprint& bp, const ConstraintGraph& graph,
                              const std::vector<Robot>& robots, const GraspConfig& config);

/// Plans completion of a semi-built wall: bricks flagged `placed` in the
/// blueprint are pre-loaded as done and only the remainder is planned.
/// Throws InfeasibleError when the placed set is not downward closed.
SolutionRecord replan_from_partial(const WallBlueprint& bp, const ConstraintGraph& graph,
                                   const std::vector<Robot>& robots, const GraspConfig& config);

}  // namespace wallplan
