#include "wallplan/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <queue>
#include <vector>

#include "wallplan/errors.hpp"

namespace wallplan {

namespace {
constexpr double kEps = 1e-9;
}

Plan naive_plan(const WallBlueprint& bp, const ConstraintGraph& graph,
                const std::vector<Robot>& robots) {
  if (robots.empty()) throw ConfigError("at least one robot is required");
  topological_order(graph);  // loaded walls may carry broken precedence

  const int n = bp.brick_count();
  std::vector<double> start(static_cast<size_t>(n) + 1, -1.0);
  std::vector<double> finish(static_cast<size_t>(n) + 1, -1.0);
  std::vector<double> robot_free(robots.size(), 0.0);

  Plan plan;
  plan.robot_count = static_cast<int>(robots.size());
  for (int id = 1; id <= n; ++id) {
    if (bp.brick(id).placed) {
      start[static_cast<size_t>(id)] = 0.0;
      finish[static_cast<size_t>(id)] = 0.0;
      continue;
    }
    double ready = 0.0;
    for (int q : graph.preds_of[static_cast<size_t>(id)]) {
      if (finish[static_cast<size_t>(q)] < 0)
        throw InfeasibleError("naive order reached brick " + std::to_string(id) +
                                  " before its support " + std::to_string(q),
                              {id, q});
      ready = std::max(ready, finish[static_cast<size_t>(q)]);
    }
    for (int q : graph.partners_of[static_cast<size_t>(id)])
      if (start[static_cast<size_t>(q)] >= 0 && !bp.brick(q).placed)
        ready = std::max(ready, finish[static_cast<size_t>(q)]);

    // Best fit: earliest achievable start; ties keep the robot that has
    // been free longest in reserve.
    int chosen = -1;
    double best_start = std::numeric_limits<double>::infinity();
    for (size_t r = 0; r < robots.size(); ++r) {
      const double s = std::max(ready, robot_free[r]);
      if (s < best_start - kEps ||
          (std::abs(s - best_start) < kEps && chosen >= 0 &&
           robot_free[r] > robot_free[static_cast<size_t>(chosen)] + kEps)) {
        best_start = s;
        chosen = static_cast<int>(r);
      }
    }
    const double duration =
        bp.brick(id).duration_s + robots[static_cast<size_t>(chosen)].speed_penalty;
    start[static_cast<size_t>(id)] = best_start;
    finish[static_cast<size_t>(id)] = best_start + duration;
    robot_free[static_cast<size_t>(chosen)] = finish[static_cast<size_t>(id)];
    plan.placements.push_back(
        {id, chosen, best_start, finish[static_cast<size_t>(id)], finish[static_cast<size_t>(id)]});
    plan.reward += bp.brick(id).reward;
    plan.completion_time = std::max(plan.completion_time, finish[static_cast<size_t>(id)]);
  }
  std::stable_sort(plan.placements.begin(), plan.placements.end(),
                   [](const Placement& a, const Placement& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.robot < b.robot;
                   });
  return plan;
}

double gap_percent(double best_bound, double best_integer) {
  return 100.0 * std::abs(best_bound - best_integer) / (std::abs(best_integer) + 1e-10);
}

// ---------------------------------------------------------------------------
// Exact oracle: chronological branch and bound with dominance pruning.

namespace {

struct OracleProblem {
  const WallBlueprint* bp;
  const ConstraintGraph* graph;
  const std::vector<Robot>* robots;
  std::vector<int> topo;  // bricks, supports first
  double min_penalty = 0.0;
  uint64_t budget;
};

struct SearchState {
  double t = 0.0;
  uint64_t scheduled = 0;  // bitmask over bricks (id-1)
  std::vector<double> end_of;  // per brick, valid when scheduled
  std::vector<double> robot_free;
  double max_end = 0.0;
  std::vector<Placement> placements;
};

struct Incumbent {
  double completion = std::numeric_limits<double>::infinity();
  std::vector<Placement> placements;
};

// Remaining-work bound: the cheapest conceivable finishing time if every
// remaining brick could run unconstrained on the fleet.
double capacity_bound(const OracleProblem& prob, const SearchState& s, int remaining) {
  std::priority_queue<double, std::vector<double>, std::greater<>> frees;
  for (double f : s.robot_free) frees.push(std::max(f, s.t));
  double bound = s.max_end;
  double min_penalty = std::numeric_limits<double>::infinity();
  double min_rest = std::numeric_limits<double>::infinity();
  for (const Robot& r : *prob.robots) {
    min_rest = std::min(min_rest, r.return_time);
    min_penalty = std::min(min_penalty, r.speed_penalty);
  }
  double min_brick = std::numeric_limits<double>::infinity();
  for (const Brick& b : prob.bp->bricks) min_brick = std::min(min_brick, b.duration_s);
  const double dur = min_brick + min_penalty;
  for (int i = 0; i < remaining; ++i) {
    double f = frees.top();
    frees.pop();
    bound = std::max(bound, f + dur);
    frees.push(f + dur + min_rest);
  }
  return bound;
}

class OracleSearch {
 public:
  explicit OracleSearch(const OracleProblem& prob) : prob_(prob) {}

  Incumbent best;
  uint64_t explored = 0;
  bool budget_hit = false;

  void run(SearchState& s) { dfs(s); }

 private:
  const OracleProblem& prob_;
  // Dominance: same scheduled set, same relative active ends, same relative
  // robot availability, reached no later and no worse.
  std::map<std::vector<int64_t>, std::pair<double, double>> seen_;

  static int64_t key_time(double v) { return static_cast<int64_t>(std::llround(v * 1000.0)); }

  std::vector<int64_t> make_key(const SearchState& s) const {
    std::vector<int64_t> key;
    key.push_back(static_cast<int64_t>(s.scheduled));
    std::vector<int64_t> actives;
    const int n = prob_.bp->brick_count();
    for (int b = 0; b < n; ++b)
      if ((s.scheduled >> b) & 1ULL) {
        const double e = s.end_of[static_cast<size_t>(b)];
        if (e > s.t + kEps) {
          actives.push_back(static_cast<int64_t>(b));
          actives.push_back(key_time(e - s.t));
        }
      }
    key.insert(key.end(), actives.begin(), actives.end());
    key.push_back(-1);
    std::vector<int64_t> frees;
    for (double f : s.robot_free) frees.push_back(key_time(std::max(f - s.t, 0.0)));
    std::sort(frees.begin(), frees.end());
    key.insert(key.end(), frees.begin(), frees.end());
    return key;
  }

  double lower_bound(const SearchState& s) const {
    const int n = prob_.bp->brick_count();
    // Longest serial chain among bricks still to schedule; it cannot begin
    // before the current instant.
    std::vector<double> down(static_cast<size_t>(n) + 1, 0.0);
    double chain = 0.0;
    for (auto it = prob_.topo.rbegin(); it != prob_.topo.rend(); ++it) {
      const int b = *it;
      if ((s.scheduled >> (b - 1)) & 1ULL) continue;
      double below = 0.0;
      for (int succ : prob_.graph->succs_of[static_cast<size_t>(b)])
        if (!((s.scheduled >> (succ - 1)) & 1ULL))
          below = std::max(below, down[static_cast<size_t>(succ)]);
      down[static_cast<size_t>(b)] =
          prob_.bp->brick(b).duration_s + prob_.min_penalty + below;
      chain = std::max(chain, down[static_cast<size_t>(b)]);
    }
    double bound = std::max(s.max_end, s.t + chain);
    int remaining = 0;
    for (int b = 0; b < n; ++b)
      if (!((s.scheduled >> b) & 1ULL)) ++remaining;
    if (remaining > 0) bound = std::max(bound, capacity_bound(prob_, s, remaining));
    return bound;
  }

  void dfs(SearchState& s) {
    if (budget_hit) return;
    if (++explored > prob_.budget) {
      budget_hit = true;
      return;
    }
    const int n = prob_.bp->brick_count();
    const uint64_t all = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    if (s.scheduled == all) {
      if (s.max_end < best.completion - kEps) {
        best.completion = s.max_end;
        best.placements = s.placements;
      }
      return;
    }
    if (lower_bound(s) >= best.completion - kEps) return;

    auto key = make_key(s);
    auto it = seen_.find(key);
    if (it != seen_.end() && it->second.first <= s.t + kEps &&
        it->second.second <= s.max_end + kEps)
      return;
    seen_[key] = {s.t, s.max_end};

    // Candidate bricks at the current instant.
    std::vector<int> candidates;
    int idle_robot = -1;
    for (size_t r = 0; r < s.robot_free.size(); ++r)
      if (s.robot_free[r] <= s.t + kEps) {
        idle_robot = static_cast<int>(r);
        break;
      }
    if (idle_robot >= 0) {
      for (int b = 1; b <= n; ++b) {
        if ((s.scheduled >> (b - 1)) & 1ULL) continue;
        bool ok = true;
        for (int q : prob_.graph->preds_of[static_cast<size_t>(b)])
          if (!((s.scheduled >> (q - 1)) & 1ULL) || s.end_of[static_cast<size_t>(q - 1)] > s.t + kEps) {
            ok = false;
            break;
          }
        if (!ok) continue;
        for (int q : prob_.graph->partners_of[static_cast<size_t>(b)])
          if (((s.scheduled >> (q - 1)) & 1ULL) && s.end_of[static_cast<size_t>(q - 1)] > s.t + kEps) {
            ok = false;
            break;
          }
        if (ok) candidates.push_back(b);
      }
    }

    for (int b : candidates) {
      const Robot& robot = (*prob_.robots)[static_cast<size_t>(idle_robot)];
      const double duration = prob_.bp->brick(b).duration_s + robot.speed_penalty;
      SearchState next = s;
      next.scheduled |= 1ULL << (b - 1);
      next.end_of[static_cast<size_t>(b - 1)] = s.t + duration;
      next.robot_free[static_cast<size_t>(idle_robot)] = s.t + duration + robot.return_time;
      next.max_end = std::max(s.max_end, s.t + duration);
      next.placements.push_back({b, idle_robot, s.t, s.t + duration, s.t + duration});
      dfs(next);
      if (budget_hit) return;
    }

    // Defer: jump to the next event and re-decide there.
    double next_t = std::numeric_limits<double>::infinity();
    for (int b = 0; b < n; ++b)
      if ((s.scheduled >> b) & 1ULL && s.end_of[static_cast<size_t>(b)] > s.t + kEps)
        next_t = std::min(next_t, s.end_of[static_cast<size_t>(b)]);
    for (double f : s.robot_free)
      if (f > s.t + kEps) next_t = std::min(next_t, f);
    if (next_t != std::numeric_limits<double>::infinity()) {
      SearchState next = s;
      next.t = next_t;
      dfs(next);
    }
  }
};

}  // namespace

OracleResult exact_oracle(const WallBlueprint& bp, const ConstraintGraph& graph,
                          const std::vector<Robot>& robots, uint64_t state_budget) {
  if (robots.empty()) throw ConfigError("at least one robot is required");
  if (bp.brick_count() > 64)
    throw ConfigError("exact oracle supports at most 64 bricks");
  for (const Brick& b : bp.bricks)
    if (b.placed) throw ConfigError("exact oracle does not handle pre-placed bricks");

  OracleProblem prob;
  prob.bp = &bp;
  prob.graph = &graph;
  prob.robots = &robots;
  prob.budget = state_budget;

  prob.topo = topological_order(graph);
  prob.min_penalty = std::numeric_limits<double>::infinity();
  for (const Robot& r : robots) prob.min_penalty = std::min(prob.min_penalty, r.speed_penalty);

  SearchState root;
  root.end_of.assign(static_cast<size_t>(bp.brick_count()), 0.0);
  root.robot_free.assign(robots.size(), 0.0);

  OracleSearch search(prob);
  search.run(root);

  OracleResult result;
  result.states_explored = search.explored;
  result.certified = !search.budget_hit &&
                     search.best.completion != std::numeric_limits<double>::infinity();
  if (search.best.completion == std::numeric_limits<double>::infinity())
    throw InfeasibleError("oracle found no complete plan within budget");
  result.optimal_completion = search.best.completion;
  result.plan.placements = search.best.placements;
  std::stable_sort(result.plan.placements.begin(), result.plan.placements.end(),
                   [](const Placement& a, const Placement& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.robot < b.robot;
                   });
  result.plan.completion_time = search.best.completion;
  result.plan.robot_count = static_cast<int>(robots.size());
  for (const Placement& p : result.plan.placements)
    result.plan.reward += bp.brick(p.brick).reward;
  return result;
}

}  // namespace wallplan
