#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "wallplan/constraints.hpp"
#include "wallplan/rng.hpp"
#include "wallplan/wall.hpp"

namespace wallplan {

constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// An agent with a pick/place/return cycle. The placement of one brick
/// occupies the robot for `duration = brick.duration_s + speed_penalty`
/// seconds; the brick counts as placed when that interval ends. The robot
/// then spends `return_time` travelling back to the reservoir before it
/// can accept the next brick.
struct Robot {
  int id = 0;
  double pick_time = 10.0;
  double place_time = 20.0;
  double return_time = 10.0;
  double speed_penalty = 0.0;  // 0 for a UAV, 10 for the slower ground unit
  double battery_budget = kUnbounded;  // duty seconds between swaps
  double battery_swap_time = 40.0;
};

std::vector<Robot> make_robots(int count, int ugv_count = 0);

enum class RobotState { Working, Resting, Idle };

/// A scheduled brick placement. `start` is when the pick begins,
/// `placed_at` when the brick is fixed in the wall and its constraints
/// release; `cycle_end` coincides with `placed_at` (the return leg is
/// robot bookkeeping, not part of the brick interval).
struct Placement {
  int brick = 0;
  int robot = 0;
  double start = 0.0;
  double placed_at = 0.0;
  double cycle_end = 0.0;
};

struct SwapEvent {
  int robot = 0;
  double start = 0.0;
  double end = 0.0;
};

struct Plan {
  std::vector<Placement> placements;  // chronological
  std::vector<SwapEvent> swaps;
  double completion_time = 0.0;  // T': placed_at of the final brick
  int reward = 0;
  int robot_count = 0;

  int robots_used() const;
  bool complete(const WallBlueprint& bp) const;
};

struct Violation {
  std::string kind;  // "precedence", "concurrence", "robot-overlap", "time-bound"
  int a = -1;
  int b = -1;
  std::string message;
};

/// Checks a plan against every rule the engine is supposed to honor:
/// supports placed before dependents start, no overlapping windows between
/// concurrence partners, no robot working two intervals at once, and all
/// starts within [0, t_max]. Pre-placed bricks in the blueprint count as
/// placed at time zero.
std::vector<Violation> validate_plan(const Plan& plan, const ConstraintGraph& graph,
                                     const WallBlueprint& bp, const std::vector<Robot>& robots,
                                     double t_max = kUnbounded);

std::string plan_to_json_text(const Plan& plan);
Plan plan_from_json_text(const std::string& text);
void save_plan(const Plan& plan, const std::string& path);

// ---------------------------------------------------------------------------
// Forward-time construction state.

enum class NodeStatus : uint8_t {
  Dormant,      // not yet reached by any processed edge
  Unavailable,  // discovered, precedence not satisfied yet
  Available,    // placeable once a robot is free and no neighbor is busy
  Active,       // currently being placed
  Placed,
};

struct RobotRuntime {
  Robot spec;
  double work_start = 0.0;  // current or last cycle
  double work_end = 0.0;
  double idle_at = 0.0;  // end of the return leg (and any battery swap)
  int assigned_brick = -1;
  double duty = 0.0;  // working + resting seconds since the last swap
  int swap_count = 0;

  // WORKING for work_start <= t < work_end, RESTING until idle_at, IDLE after.
  RobotState state_at(double t) const {
    if (t >= idle_at) return RobotState::Idle;
    if (t >= work_end) return RobotState::Resting;
    return RobotState::Working;
  }
};

enum class StopReason { Running, AllPlaced, HorizonReached, Starved };

/// The five-set plan state evolved by iterate_step: unvisited/visited
/// precedence edges, unavailable/available node sets, and the placed set
/// (recorded in `status`), plus the robot fleet and the PRNG.
struct PlanState {
  double t = 0.0;
  const ConstraintGraph* graph = nullptr;
  const WallBlueprint* blueprint = nullptr;
  double t_max = kUnbounded;

  std::vector<NodeStatus> status;     // by brick id, entry 0 unused
  std::vector<uint8_t> edge_visited;  // per graph->precedence entry
  std::vector<int> remaining_preds;   // unplaced supports per brick
  bool start_edges_fired = false;

  std::vector<int> available;  // sorted brick ids with status Available
  struct ActivePlacement {
    int brick;
    int robot;
    double start;
    double placed_at;
  };
  std::vector<ActivePlacement> active;

  std::vector<RobotRuntime> robots;
  Rng rng;

  // Plan under construction.
  std::vector<Placement> placements;
  std::vector<SwapEvent> swaps;
  int placed_count = 0;  // bricks settled by this run (pre-placed excluded)
  int reward = 0;
  double completion_time = 0.0;
  StopReason stop = StopReason::Running;

  bool finished() const { return stop != StopReason::Running; }
  int idle_robot_count() const;
  bool brick_active(int id) const;
  Plan to_plan() const;
};

/// Pre-placed bricks in the blueprint enter the placed set immediately;
/// throws InfeasibleError if that set is not downward closed under
/// precedence.
PlanState make_initial_state(const ConstraintGraph& graph, const WallBlueprint& bp,
                             const std::vector<Robot>& robots, uint64_t seed,
                             double t_max = kUnbounded);

/// Settles every active placement whose interval has ended at the current
/// time: the brick joins the placed set, its reward is collected, and its
/// robot proceeds to the return leg. Battery bookkeeping runs afterwards.
void place_assigned_nodes(PlanState& state);

/// A robot whose duty budget is spent swaps its battery as soon as its
/// return leg ends; an assignment made before depletion always completes
/// the running cycle first. No effect on robots with unlimited budget.
void apply_battery(PlanState& state);

/// Moves unvisited precedence edges whose source brick is placed to the
/// visited set and registers their targets as unavailable nodes. Also
/// fires the virtual start edges on the first call.
void process_edges(PlanState& state);

/// Promotes unavailable nodes whose supports are all placed. Concurrence
/// is enforced at assignment time, not here.
void find_available_nodes(PlanState& state);

/// Greedy assignment: among available nodes whose concurrence partners are
/// not mid-placement and whose resource need is met, assigns one node of
/// maximal reward chosen uniformly at random. Returns 0 on assignment,
/// otherwise the minimum number of idle robots that would unlock one.
int assign_available_nodes(PlanState& state);

/// Advances time to the earliest instant at which `needed` robots are
/// simultaneously idle, computed from the robots' busy-until times.
void update_time(PlanState& state, int needed);

/// One forward step: settle, process edges, refresh availability, try one
/// assignment; when nothing can be assigned, advance simulated time (or
/// stop at the horizon / when no event remains).
void iterate_step(PlanState& state);

/// Runs iterate_step to termination.
void run_to_completion(PlanState& state);

}  // namespace wallplan
