#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "wallplan/baselines.hpp"
#include "wallplan/errors.hpp"
#include "wallplan/grasp.hpp"

using namespace wallplan;

namespace {

struct Instance {
  WallBlueprint bp;
  ConstraintGraph graph;
  std::vector<Robot> robots;
};

Instance make_instance(double length, double height, int robot_count) {
  Instance inst;
  inst.bp = generate_wall(length, height, {});
  inst.graph = build_graph(inst.bp, robot_count, {3.2, 0.8});
  inst.robots = make_robots(robot_count);
  return inst;
}

}  // namespace

TEST_CASE("the layer-wise baseline finishes the 18-brick wall in 440 s") {
  Instance inst = make_instance(2.4, 0.8, 3);
  Plan plan = naive_plan(inst.bp, inst.graph, inst.robots);
  CHECK(plan.completion_time == 440.0);
  CHECK(plan.reward == 32);
  CHECK(validate_plan(plan, inst.graph, inst.bp, inst.robots).empty());

  // Strictly layer-wise: placement order follows brick ids.
  for (size_t i = 1; i < plan.placements.size(); ++i)
    CHECK(plan.placements[i].start >= plan.placements[i - 1].start);
}

TEST_CASE("one brick, one robot takes one placement") {
  Instance inst = make_instance(0.6, 0.2, 1);
  Plan plan = naive_plan(inst.bp, inst.graph, inst.robots);
  REQUIRE(plan.placements.size() == 1);
  CHECK(plan.completion_time == 40.0);
}

TEST_CASE("the baseline is deterministic") {
  Instance inst = make_instance(2.4, 0.8, 3);
  Plan a = naive_plan(inst.bp, inst.graph, inst.robots);
  Plan b = naive_plan(inst.bp, inst.graph, inst.robots);
  CHECK(plan_to_json_text(a) == plan_to_json_text(b));
}

TEST_CASE("the search planner beats or matches the baseline on small walls") {
  for (double spec : {1.2, 1.8, 2.4}) {
    Instance inst = make_instance(spec, 0.4, 3);
    Plan naive = naive_plan(inst.bp, inst.graph, inst.robots);
    for (uint64_t seed = 0; seed < 30; ++seed) {
      GraspConfig config;
      config.seed = seed;
      config.upsilon = 1.0;
      config.k_max = 200;
      SolutionRecord rec = grasp_optimize(inst.bp, inst.graph, inst.robots, config);
      CHECK(rec.completion_time <= naive.completion_time + 1e-9);
    }
  }
}

TEST_CASE("oracle certifies 160 s for the five-brick wall with three robots") {
  Instance inst = make_instance(1.2, 0.4, 3);
  OracleResult res = exact_oracle(inst.bp, inst.graph, inst.robots);
  CHECK(res.certified);
  CHECK(res.optimal_completion == 160.0);
  CHECK(res.plan.reward == 8);
  CHECK(validate_plan(res.plan, inst.graph, inst.bp, inst.robots).empty());
  CHECK(res.states_explored > 0);
}

TEST_CASE("oracle on a single brick") {
  Instance inst = make_instance(0.6, 0.2, 1);
  OracleResult res = exact_oracle(inst.bp, inst.graph, inst.robots);
  CHECK(res.certified);
  CHECK(res.optimal_completion == 40.0);
  CHECK(res.plan.placements.size() == 1);
}

TEST_CASE("oracle lower-bounds a large sample of valid plans") {
  Instance inst = make_instance(1.2, 0.4, 2);
  OracleResult res = exact_oracle(inst.bp, inst.graph, inst.robots);
  REQUIRE(res.certified);
  for (uint64_t seed = 0; seed < 1000; ++seed) {
    PlanState state = make_initial_state(inst.graph, inst.bp, inst.robots, seed);
    run_to_completion(state);
    CHECK(state.completion_time >= res.optimal_completion - 1e-9);
  }
}

TEST_CASE("oracle result ignores robot identity for a homogeneous fleet") {
  Instance inst = make_instance(1.8, 0.4, 3);
  OracleResult a = exact_oracle(inst.bp, inst.graph, inst.robots);
  std::vector<Robot> permuted = {inst.robots[2], inst.robots[0], inst.robots[1]};
  OracleResult b = exact_oracle(inst.bp, inst.graph, permuted);
  CHECK(a.optimal_completion == b.optimal_completion);
}

TEST_CASE("an exhausted state budget is reported as uncertified") {
  Instance inst = make_instance(2.1, 0.4, 3);
  OracleResult full = exact_oracle(inst.bp, inst.graph, inst.robots);
  REQUIRE(full.certified);
  OracleResult cut = exact_oracle(inst.bp, inst.graph, inst.robots, full.states_explored / 2);
  CHECK(!cut.certified);
  CHECK(cut.optimal_completion >= full.optimal_completion - 1e-9);
}

TEST_CASE("ordering: oracle <= grasp <= naive on oracle-scale walls") {
  for (double length : {1.2, 1.8}) {
    Instance inst = make_instance(length, 0.4, 3);
    OracleResult oracle = exact_oracle(inst.bp, inst.graph, inst.robots);
    Plan naive = naive_plan(inst.bp, inst.graph, inst.robots);
    for (uint64_t seed = 0; seed < 10; ++seed) {
      GraspConfig config;
      config.seed = seed;
      config.upsilon = 1.0;
      SolutionRecord rec = grasp_optimize(inst.bp, inst.graph, inst.robots, config);
      CHECK(oracle.optimal_completion <= rec.completion_time + 1e-9);
      CHECK(rec.completion_time <= naive.completion_time + 1e-9);
    }
  }
}

TEST_CASE("gap formula") {
  CHECK(gap_percent(360, 360) == 0.0);
  CHECK(gap_percent(0, 0) == 0.0);
  const double expected = 100.0 * 7.0 / (360.0 + 1e-10);
  CHECK(std::abs(gap_percent(353, 360) - expected) < 1e-12);
  CHECK(gap_percent(353, 360) == doctest::Approx(1.944).epsilon(1e-3));
}
