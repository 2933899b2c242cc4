#include "wallplan/engine.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>

#include <json.hpp>

#include "wallplan/errors.hpp"

namespace wallplan {

using nlohmann::json;

namespace {
constexpr double kEps = 1e-9;
}

std::vector<Robot> make_robots(int count, int ugv_count) {
  std::vector<Robot> robots(static_cast<size_t>(count));
  for (int i = 0; i < count; ++i) {
    robots[static_cast<size_t>(i)].id = i;
    // Ground units ride at the tail of the fleet and place slower.
    if (i >= count - ugv_count) robots[static_cast<size_t>(i)].speed_penalty = 10.0;
  }
  return robots;
}

int Plan::robots_used() const {
  std::set<int> ids;
  for (const Placement& p : placements) ids.insert(p.robot);
  return static_cast<int>(ids.size());
}

bool Plan::complete(const WallBlueprint& bp) const {
  int preplaced = 0;
  for (const Brick& b : bp.bricks)
    if (b.placed) ++preplaced;
  return static_cast<int>(placements.size()) + preplaced == bp.brick_count();
}

// ---------------------------------------------------------------------------

int PlanState::idle_robot_count() const {
  int n = 0;
  for (const RobotRuntime& r : robots)
    if (r.idle_at <= t + kEps) ++n;
  return n;
}

bool PlanState::brick_active(int id) const {
  return status[static_cast<size_t>(id)] == NodeStatus::Active;
}

Plan PlanState::to_plan() const {
  Plan plan;
  plan.placements = placements;
  std::stable_sort(plan.placements.begin(), plan.placements.end(),
                   [](const Placement& a, const Placement& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.robot < b.robot;
                   });
  plan.swaps = swaps;
  plan.reward = reward;
  plan.completion_time = completion_time;
  plan.robot_count = static_cast<int>(robots.size());
  return plan;
}

PlanState make_initial_state(const ConstraintGraph& graph, const WallBlueprint& bp,
                             const std::vector<Robot>& robots, uint64_t seed, double t_max) {
  if (robots.empty()) throw ConfigError("at least one robot is required");

  PlanState s;
  s.graph = &graph;
  s.blueprint = &bp;
  s.t_max = t_max;
  s.status.assign(static_cast<size_t>(graph.brick_count) + 1, NodeStatus::Dormant);
  s.edge_visited.assign(graph.precedence.size(), 0);
  s.remaining_preds.assign(static_cast<size_t>(graph.brick_count) + 1, 0);
  for (int b = 1; b <= graph.brick_count; ++b)
    s.remaining_preds[static_cast<size_t>(b)] =
        static_cast<int>(graph.preds_of[static_cast<size_t>(b)].size());

  std::vector<int> bad;
  for (const Brick& b : bp.bricks) {
    if (!b.placed) continue;
    s.status[static_cast<size_t>(b.id)] = NodeStatus::Placed;
    for (int q : graph.preds_of[static_cast<size_t>(b.id)])
      if (!bp.brick(q).placed) bad.push_back(b.id);
  }
  if (!bad.empty()) {
    std::sort(bad.begin(), bad.end());
    bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
    std::string msg = "pre-placed set violates precedence; offending bricks:";
    for (int b : bad) msg += " " + std::to_string(b);
    throw InfeasibleError(msg, bad);
  }
  for (const Brick& b : bp.bricks)
    if (b.placed)
      for (int succ : graph.succs_of[static_cast<size_t>(b.id)])
        --s.remaining_preds[static_cast<size_t>(succ)];

  s.robots.resize(robots.size());
  for (size_t i = 0; i < robots.size(); ++i) s.robots[i].spec = robots[i];
  s.rng.seed(seed);
  return s;
}

void place_assigned_nodes(PlanState& state) {
  // Settle finished placements.
  for (size_t i = 0; i < state.active.size();) {
    const auto& a = state.active[i];
    if (a.placed_at <= state.t + kEps) {
      state.status[static_cast<size_t>(a.brick)] = NodeStatus::Placed;
      for (int succ : state.graph->succs_of[static_cast<size_t>(a.brick)])
        --state.remaining_preds[static_cast<size_t>(succ)];
      state.reward += state.blueprint->brick(a.brick).reward;
      state.completion_time = std::max(state.completion_time, a.placed_at);
      ++state.placed_count;
      state.robots[static_cast<size_t>(a.robot)].assigned_brick = -1;
      state.active.erase(state.active.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  apply_battery(state);
}

void apply_battery(PlanState& state) {
  for (RobotRuntime& r : state.robots) {
    if (r.assigned_brick < 0 && state.t + kEps >= r.idle_at &&
        r.duty >= r.spec.battery_budget - kEps) {
      state.swaps.push_back({r.spec.id, r.idle_at, r.idle_at + r.spec.battery_swap_time});
      r.idle_at += r.spec.battery_swap_time;
      r.duty = 0.0;
      ++r.swap_count;
    }
  }
}

void process_edges(PlanState& state) {
  const ConstraintGraph& g = *state.graph;
  if (!state.start_edges_fired) {
    // Virtual start nodes count as complete from the beginning, so their
    // edges fire immediately and expose the unsupported bricks.
    for (int b : g.start_bricks)
      if (state.status[static_cast<size_t>(b)] == NodeStatus::Dormant)
        state.status[static_cast<size_t>(b)] = NodeStatus::Unavailable;
    state.start_edges_fired = true;
  }
  for (size_t e = 0; e < g.precedence.size(); ++e) {
    if (state.edge_visited[e]) continue;
    const PrecedenceRule& rule = g.precedence[e];
    if (state.status[static_cast<size_t>(rule.below)] != NodeStatus::Placed) continue;
    state.edge_visited[e] = 1;
    NodeStatus& target = state.status[static_cast<size_t>(rule.above)];
    if (target == NodeStatus::Dormant) target = NodeStatus::Unavailable;
  }
}

void find_available_nodes(PlanState& state) {
  for (int b = 1; b <= state.graph->brick_count; ++b) {
    if (state.status[static_cast<size_t>(b)] != NodeStatus::Unavailable) continue;
    if (state.remaining_preds[static_cast<size_t>(b)] == 0) {
      state.status[static_cast<size_t>(b)] = NodeStatus::Available;
      state.available.insert(
          std::lower_bound(state.available.begin(), state.available.end(), b), b);
    }
  }
}

int assign_available_nodes(PlanState& state) {
  constexpr int kResourceNeed = 1;  // per-node requirement; multi-robot bricks unused
  const int idle = state.idle_robot_count();
  int min_required = std::numeric_limits<int>::max();

  int max_reward = -1;
  std::vector<int> max_reward_nodes;
  for (int b : state.available) {
    min_required = std::min(min_required, kResourceNeed);
    if (idle < kResourceNeed) continue;
    bool blocked = false;
    for (int partner : state.graph->partners_of[static_cast<size_t>(b)])
      if (state.brick_active(partner)) {
        blocked = true;
        break;
      }
    if (blocked) continue;
    const int reward = state.blueprint->brick(b).reward;
    if (reward > max_reward) {
      max_reward = reward;
      max_reward_nodes.clear();
    }
    if (reward == max_reward) max_reward_nodes.push_back(b);
  }

  if (max_reward_nodes.empty()) return min_required;

  const int brick =
      max_reward_nodes[state.rng.uniform_below(max_reward_nodes.size())];
  int rid = -1;
  for (size_t r = 0; r < state.robots.size(); ++r)
    if (state.robots[r].idle_at <= state.t + kEps) {
      rid = static_cast<int>(r);
      break;
    }
  RobotRuntime& robot = state.robots[static_cast<size_t>(rid)];
  const double duration = state.blueprint->brick(brick).duration_s + robot.spec.speed_penalty;
  const double placed_at = state.t + duration;

  robot.assigned_brick = brick;
  robot.work_start = state.t;
  robot.work_end = placed_at;
  robot.idle_at = placed_at + robot.spec.return_time;
  robot.duty += duration + robot.spec.return_time;

  state.status[static_cast<size_t>(brick)] = NodeStatus::Active;
  state.available.erase(std::find(state.available.begin(), state.available.end(), brick));
  state.active.push_back({brick, rid, state.t, placed_at});
  state.placements.push_back({brick, rid, state.t, placed_at, placed_at});
  return 0;
}

namespace {

// Minimum time at which `needed` robots are simultaneously idle, from the
// multiset of busy-until times.
double histogram_time(const PlanState& state, int needed) {
  if (needed <= 0) return state.t;
  if (needed > static_cast<int>(state.robots.size())) return kUnbounded;
  std::vector<double> free_times;
  free_times.reserve(state.robots.size());
  for (const RobotRuntime& r : state.robots) free_times.push_back(std::max(r.idle_at, state.t));
  std::sort(free_times.begin(), free_times.end());
  return free_times[static_cast<size_t>(needed) - 1];
}

}  // namespace

void update_time(PlanState& state, int needed) {
  const double when = histogram_time(state, needed);
  if (when != kUnbounded) state.t = std::max(state.t, when);
}

namespace {

double next_event_time(const PlanState& state) {
  double next = kUnbounded;
  for (const auto& a : state.active)
    if (a.placed_at > state.t + kEps) next = std::min(next, a.placed_at);
  for (const RobotRuntime& r : state.robots)
    if (r.idle_at > state.t + kEps) next = std::min(next, r.idle_at);
  return next;
}

bool everything_placed(const PlanState& state) {
  for (int b = 1; b <= state.graph->brick_count; ++b)
    if (state.status[static_cast<size_t>(b)] != NodeStatus::Placed) return false;
  return true;
}

}  // namespace

void iterate_step(PlanState& state) {
  if (state.finished()) return;

  place_assigned_nodes(state);
  process_edges(state);
  find_available_nodes(state);

  if (everything_placed(state)) {
    state.stop = StopReason::AllPlaced;
    return;
  }

  int needed = std::numeric_limits<int>::max();
  if (state.t < state.t_max) {
    needed = assign_available_nodes(state);
    if (needed == 0) return;
  }

  // Nothing could be assigned: move to the next instant something changes.
  double next = next_event_time(state);
  if (needed >= 1 && needed <= static_cast<int>(state.robots.size()) &&
      state.idle_robot_count() < needed) {
    const double when = histogram_time(state, needed);
    if (when > state.t + kEps) next = std::min(next, when);
  }
  if (next == kUnbounded) {
    state.stop = state.t >= state.t_max ? StopReason::HorizonReached : StopReason::Starved;
    return;
  }
  state.t = next;
}

void run_to_completion(PlanState& state) {
  while (!state.finished()) iterate_step(state);
}

// ---------------------------------------------------------------------------

std::vector<Violation> validate_plan(const Plan& plan, const ConstraintGraph& graph,
                                     const WallBlueprint& bp, const std::vector<Robot>& robots,
                                     double t_max) {
  std::vector<Violation> out;
  std::map<int, const Placement*> by_brick;
  for (const Placement& p : plan.placements) by_brick[p.brick] = &p;

  auto placed_time = [&](int brick, double* when) {
    auto it = by_brick.find(brick);
    if (it != by_brick.end()) {
      *when = it->second->placed_at;
      return true;
    }
    if (bp.brick(brick).placed) {
      *when = 0.0;
      return true;
    }
    return false;
  };

  for (const PrecedenceRule& rule : graph.precedence) {
    auto it = by_brick.find(rule.above);
    if (it == by_brick.end()) continue;
    double support = 0.0;
    if (!placed_time(rule.below, &support)) {
      out.push_back({"precedence", rule.below, rule.above,
                     "brick " + std::to_string(rule.above) + " placed without its support " +
                         std::to_string(rule.below)});
    } else if (support > it->second->start + kEps) {
      out.push_back({"precedence", rule.below, rule.above,
                     "brick " + std::to_string(rule.above) + " starts at " +
                         std::to_string(it->second->start) + " before support " +
                         std::to_string(rule.below) + " is placed at " + std::to_string(support)});
    }
  }

  for (const ConcurrenceRule& rule : graph.concurrence) {
    auto ia = by_brick.find(rule.a);
    auto ib = by_brick.find(rule.b);
    if (ia == by_brick.end() || ib == by_brick.end()) continue;
    const double lo = std::max(ia->second->start, ib->second->start);
    const double hi = std::min(ia->second->placed_at, ib->second->placed_at);
    if (hi - lo > kEps)
      out.push_back({"concurrence", rule.a, rule.b,
                     "bricks " + std::to_string(rule.a) + " and " + std::to_string(rule.b) +
                         " are worked simultaneously"});
  }

  std::map<int, std::vector<std::pair<double, double>>> intervals;
  for (const Placement& p : plan.placements) intervals[p.robot].push_back({p.start, p.placed_at});
  for (const SwapEvent& s : plan.swaps) intervals[s.robot].push_back({s.start, s.end});
  for (auto& [robot, list] : intervals) {
    std::sort(list.begin(), list.end());
    for (size_t i = 1; i < list.size(); ++i)
      if (list[i].first < list[i - 1].second - kEps)
        out.push_back({"robot-overlap", robot, -1,
                       "robot " + std::to_string(robot) + " has overlapping intervals at " +
                           std::to_string(list[i].first)});
  }

  for (const Placement& p : plan.placements) {
    if (p.start < -kEps || p.start > t_max + kEps)
      out.push_back({"time-bound", p.brick, -1,
                     "brick " + std::to_string(p.brick) + " starts outside [0, T_max]"});
  }
  (void)robots;
  return out;
}

// ---------------------------------------------------------------------------

std::string plan_to_json_text(const Plan& plan) {
  json robots = json::array();
  for (int r = 0; r < plan.robot_count; ++r) {
    json timeline = json::array();
    std::vector<std::pair<double, json>> entries;
    for (const Placement& p : plan.placements)
      if (p.robot == r)
        entries.push_back({p.start, json{{"brick", p.brick}, {"start", p.start}, {"placed_at", p.placed_at}}});
    for (const SwapEvent& s : plan.swaps)
      if (s.robot == r)
        entries.push_back({s.start, json{{"swap", true}, {"start", s.start}, {"end", s.end}}});
    std::stable_sort(entries.begin(), entries.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& e : entries) timeline.push_back(std::move(e.second));
    robots.push_back(json{{"id", r}, {"timeline", std::move(timeline)}});
  }
  json out{{"completion_time_s", plan.completion_time},
           {"reward", plan.reward},
           {"robots", std::move(robots)}};
  return out.dump(2) + "\n";
}

Plan plan_from_json_text(const std::string& text) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid plan JSON: ") + e.what());
  }
  Plan plan;
  try {
    plan.completion_time = in.at("completion_time_s").get<double>();
    plan.reward = in.at("reward").get<int>();
    for (const json& jr : in.at("robots")) {
      const int rid = jr.at("id").get<int>();
      plan.robot_count = std::max(plan.robot_count, rid + 1);
      for (const json& e : jr.at("timeline")) {
        if (e.value("swap", false)) {
          plan.swaps.push_back({rid, e.at("start").get<double>(), e.at("end").get<double>()});
        } else {
          Placement p;
          p.brick = e.at("brick").get<int>();
          p.robot = rid;
          p.start = e.at("start").get<double>();
          p.placed_at = e.at("placed_at").get<double>();
          p.cycle_end = p.placed_at;
          plan.placements.push_back(p);
        }
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed plan JSON: ") + e.what());
  }
  std::stable_sort(plan.placements.begin(), plan.placements.end(),
                   [](const Placement& a, const Placement& b) {
                     if (a.start != b.start) return a.start < b.start;
                     return a.robot < b.robot;
                   });
  return plan;
}

void save_plan(const Plan& plan, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write plan file: " + path);
  out << plan_to_json_text(plan);
  if (!out) throw IoError("failed while writing plan file: " + path);
}

}  // namespace wallplan
