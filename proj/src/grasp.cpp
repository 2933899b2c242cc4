#include "wallplan/grasp.hpp"

#include <algorithm>
#include <cmath>

#include "wallplan/errors.hpp"

namespace wallplan {

bool solution_improves(const SolutionRecord& candidate, const SolutionRecord& incumbent) {
  if (candidate.reward != incumbent.reward) return candidate.reward > incumbent.reward;
  return candidate.completion_time < incumbent.completion_time - 1e-9;
}

std::vector<int> snapshot_positions(int b_star_max, double upsilon, Rng& rng) {
  if (b_star_max <= 0) return {};
  int count = static_cast<int>(std::llround(upsilon * b_star_max));
  count = std::clamp(count, 1, b_star_max);
  // Partial Fisher-Yates draw of `count` distinct milestones.
  std::vector<int> pool(static_cast<size_t>(b_star_max));
  for (int i = 0; i < b_star_max; ++i) pool[static_cast<size_t>(i)] = i + 1;
  for (int i = 0; i < count; ++i) {
    const size_t j = static_cast<size_t>(i) +
                     static_cast<size_t>(rng.uniform_below(static_cast<uint64_t>(b_star_max - i)));
    std::swap(pool[static_cast<size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<size_t>(count));
  std::sort(pool.begin(), pool.end());
  return pool;
}

ConstructionResult greedy_randomized_construction(PlanState initial, int b_star_max,
                                                  double upsilon) {
  ConstructionResult result;
  std::vector<int> milestones = snapshot_positions(b_star_max, upsilon, initial.rng);

  PlanState& s = initial;
  size_t next_milestone = 0;
  while (!s.finished()) {
    iterate_step(s);
    const int scheduled = static_cast<int>(s.placements.size());
    while (next_milestone < milestones.size() && scheduled >= milestones[next_milestone]) {
      if (scheduled == milestones[next_milestone]) result.snapshots.push_back({s, scheduled});
      ++next_milestone;
    }
  }
  result.plan = s.to_plan();
  result.stop = s.stop;
  result.rng_after = s.rng;
  return result;
}

Plan local_search(const Plan& constructed, const std::vector<Snapshot>& snapshots, Rng& rng) {
  Plan best = constructed;
  for (const Snapshot& snap : snapshots) {
    PlanState resumed = snap.state;
    resumed.rng = rng;  // fresh randomness, shared iteration stream
    run_to_completion(resumed);
    rng = resumed.rng;
    Plan candidate = resumed.to_plan();
    if (candidate.reward > best.reward ||
        (candidate.reward == best.reward &&
         candidate.completion_time < best.completion_time - 1e-9))
      best = std::move(candidate);
  }
  return best;
}

namespace {

SolutionRecord to_record(Plan plan) {
  SolutionRecord rec;
  rec.reward = plan.reward;
  rec.completion_time = plan.completion_time;
  rec.plan = std::move(plan);
  return rec;
}

SolutionRecord run_one_iteration(const WallBlueprint& bp, const ConstraintGraph& graph,
                                 const std::vector<Robot>& robots, const GraspConfig& config,
                                 uint64_t child_seed, int b_star_max) {
  PlanState state = make_initial_state(graph, bp, robots, child_seed, config.t_max);
  ConstructionResult built = greedy_randomized_construction(std::move(state), b_star_max,
                                                            config.upsilon);
  Plan improved = local_search(built.plan, built.snapshots, built.rng_after);
  return to_record(std::move(improved));
}

}  // namespace

SolutionRecord grasp_optimize(const WallBlueprint& bp, const ConstraintGraph& graph,
                              const std::vector<Robot>& robots, const GraspConfig& config) {
  if (config.k_max < 1) throw ConfigError("k_max must be at least 1");
  if (!(config.upsilon > 0.0 && config.upsilon <= 1.0))
    throw ConfigError("upsilon must lie in (0, 1]");
  topological_order(graph);  // rejects unsatisfiable precedence up front

  int plannable = 0;
  for (const Brick& b : bp.bricks)
    if (!b.placed) ++plannable;

  // Initial feasible solution; it both seeds the incumbent and serves as
  // the final keep-if-dominating comparison.
  SolutionRecord found;
  {
    PlanState state = make_initial_state(graph, bp, robots, mix_seed(config.seed, 0),
                                         config.t_max);
    run_to_completion(state);
    found = to_record(state.to_plan());
  }
  SolutionRecord best = found;
  // B* tracks the brick count of the best solution; it only matters under
  // a finite horizon, where runs may place fewer bricks than the wall has.
  int b_star_max = std::max(1, plannable);
  if (best.plan.placements.size() > 0)
    b_star_max = std::max(1, static_cast<int>(best.plan.placements.size()));

  int k_iter = 0;
  int k_not_improved = 0;
  bool done = false;
  while (!done && k_iter < config.k_max && k_not_improved < config.k_max_not_improved) {
    const int chunk_begin = k_iter;
    const int chunk_end = std::min(config.k_max, chunk_begin + config.chunk_size);
    std::vector<SolutionRecord> results(static_cast<size_t>(chunk_end - chunk_begin));

#pragma omp parallel for schedule(dynamic, 1) if (config.parallel)
    for (int k = chunk_begin; k < chunk_end; ++k) {
      results[static_cast<size_t>(k - chunk_begin)] =
          run_one_iteration(bp, graph, robots, config, mix_seed(config.seed, 1 + static_cast<uint64_t>(k)),
                            b_star_max);
    }

    // Ordered reduction: identical to evaluating iterations one by one.
    for (int k = chunk_begin; k < chunk_end; ++k) {
      SolutionRecord& candidate = results[static_cast<size_t>(k - chunk_begin)];
      ++k_iter;
      if (solution_improves(candidate, best)) {
        best = std::move(candidate);
        k_not_improved = 0;
        if (config.on_improve) config.on_improve(k_iter, best.reward, best.completion_time);
      } else {
        ++k_not_improved;
      }
      if (k_not_improved >= config.k_max_not_improved) {
        done = true;
        break;
      }
    }
    if (static_cast<int>(best.plan.placements.size()) > 0)
      b_star_max = std::max(1, static_cast<int>(best.plan.placements.size()));
  }

  // Keep the initial greedy plan when it dominates the search result.
  if (found.reward >= best.reward && found.completion_time < best.completion_time - 1e-9)
    best = found;
  return best;
}

SolutionRecord replan_from_partial(const WallBlueprint& bp, const ConstraintGraph& graph,
                                   const std::vector<Robot>& robots, const GraspConfig& config) {
  bool any_unplaced = false;
  for (const Brick& b : bp.bricks)
    if (!b.placed) any_unplaced = true;
  if (!any_unplaced) {
    // Nothing to do: an empty plan with zero completion time.
    SolutionRecord rec;
    rec.plan.robot_count = static_cast<int>(robots.size());
    return rec;
  }
  return grasp_optimize(bp, graph, robots, config);
}

}  // namespace wallplan
