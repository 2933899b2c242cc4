#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "wallplan/baselines.hpp"
#include "wallplan/errors.hpp"
#include "wallplan/grasp.hpp"
#include "wallplan/milp.hpp"

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

// Minimal LP-format reader, written against the format definition rather
// than the writer: counts objective terms, rows per section, bound lines
// and binary declarations, and collects variable names.
struct ParsedLp {
  std::set<std::string> variables;
  int rows = 0;
  int bounds = 0;
  int binaries = 0;
  bool saw_end = false;
};

ParsedLp parse_lp(const std::string& text) {
  ParsedLp out;
  std::istringstream in(text);
  std::string line;
  enum { None, Objective, Rows, Bounds, Binaries } section = None;
  auto collect_names = [&](const std::string& s) {
    std::istringstream ls(s);
    std::string token;
    while (ls >> token) {
      if (token == "+" || token == "-" || token == "<=" || token == ">=" || token == "=")
        continue;
      if (!token.empty() && (std::isalpha(token[0]) != 0)) out.variables.insert(token);
    }
  };
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '\\') continue;
    if (line == "Maximize" || line == "Minimize") {
      section = Objective;
      continue;
    }
    if (line == "Subject To") {
      section = Rows;
      continue;
    }
    if (line == "Bounds") {
      section = Bounds;
      continue;
    }
    if (line == "Binaries" || line == "Binary") {
      section = Binaries;
      continue;
    }
    if (line == "End") {
      out.saw_end = true;
      break;
    }
    std::string body = line;
    const size_t colon = line.find(':');
    if ((section == Rows || section == Objective) && colon != std::string::npos)
      body = line.substr(colon + 1);
    switch (section) {
      case Rows:
        ++out.rows;
        collect_names(body);
        break;
      case Objective:
        collect_names(body);
        break;
      case Bounds: {
        ++out.bounds;
        std::istringstream ls(body);
        std::string token;
        while (ls >> token)
          if (std::isalpha(token[0]) != 0 && token != "free") out.variables.insert(token);
        break;
      }
      case Binaries: {
        std::istringstream ls(body);
        std::string token;
        while (ls >> token) {
          ++out.binaries;
          out.variables.insert(token);
        }
        break;
      }
      default:
        break;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("one brick, one robot: three nodes, three visit variables") {
  Instance inst = make_instance(0.6, 0.2, 1);
  MilpModel model = build_milp(inst.bp, inst.graph, inst.robots, 400.0);
  int y_vars = 0;
  for (const MilpVar& v : model.vars)
    if (v.name.rfind("y_", 0) == 0) ++y_vars;
  CHECK(y_vars == 3);

  // The oracle's plan substitutes feasibly with the brick at time zero.
  OracleResult res = exact_oracle(inst.bp, inst.graph, inst.robots);
  MilpAssignment asg = assignment_from_plan(model, res.plan);
  CHECK(check_assignment(model, asg).empty());
  CHECK(asg.value[static_cast<size_t>(model.var_index("s_1"))] == 0.0);
  const double expect = 2.0 - (1.0 / 400.0) * 40.0;
  CHECK(objective_value(model, asg) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("variable census matches the model structure") {
  Instance inst = make_instance(1.2, 0.4, 3);
  MilpModel model = build_milp(inst.bp, inst.graph, inst.robots, 400.0);
  const int B = inst.bp.brick_count();
  const int R = 3;
  const int N = B + R + 1;
  const int shared_edges = B * (B - 1) + B + R * (B + 1);
  const int per_robot_edges = B * (B - 1) + B + (B + 1);
  int x = 0, z = 0, y = 0, s = 0, d = 0;
  for (const MilpVar& v : model.vars) {
    if (v.name[0] == 'x') ++x;
    if (v.name[0] == 'z') ++z;
    if (v.name[0] == 'y') ++y;
    if (v.name[0] == 's') ++s;
    if (v.name[0] == 'd') ++d;
  }
  CHECK(y == N);
  CHECK(s == N);
  CHECK(z == shared_edges);
  CHECK(x == R * per_robot_edges);
  CHECK(d == static_cast<int>(inst.graph.concurrence.size()));
  CHECK(model.big_m == 400.0 + 40.0);
}

TEST_CASE("export is deterministic") {
  Instance inst = make_instance(1.2, 0.4, 2);
  MilpModel a = build_milp(inst.bp, inst.graph, inst.robots, 500.0);
  MilpModel b = build_milp(inst.bp, inst.graph, inst.robots, 500.0);
  CHECK(lp_text(a) == lp_text(b));
  CHECK(sidecar_json_text(a) == sidecar_json_text(b));
}

TEST_CASE("LP text round-trips through an independent reader") {
  Instance inst = make_instance(2.4, 0.8, 3);
  MilpModel model = build_milp(inst.bp, inst.graph, inst.robots, 600.0);
  ParsedLp parsed = parse_lp(lp_text(model));
  CHECK(parsed.saw_end);
  CHECK(parsed.rows == static_cast<int>(model.rows.size()));
  CHECK(parsed.variables.size() == model.vars.size());
  int binaries = 0, continuous = 0;
  for (const MilpVar& v : model.vars)
    (v.kind == VarKind::Binary ? binaries : continuous)++;
  CHECK(parsed.binaries == binaries);
  CHECK(parsed.bounds == continuous);
}

TEST_CASE("disjunction rows flip with the indicator") {
  Instance inst = make_instance(1.2, 0.4, 2);
  MilpModel model = build_milp(inst.bp, inst.graph, inst.robots, 400.0);
  REQUIRE(!inst.graph.concurrence.empty());
  const ConcurrenceRule pair = inst.graph.concurrence.front();
  const std::string da = "d_" + std::to_string(pair.a) + "_" + std::to_string(pair.b);

  // Build a tiny assignment by hand: both bricks visited, b after a.
  MilpAssignment asg;
  asg.value.assign(model.vars.size(), 0.0);
  auto set = [&](const std::string& name, double v) {
    asg.value[static_cast<size_t>(model.var_index(name))] = v;
  };
  set("y_" + std::to_string(pair.a), 1);
  set("y_" + std::to_string(pair.b), 1);
  set("s_" + std::to_string(pair.a), 0);
  set("s_" + std::to_string(pair.b), 40);

  auto eval = [&](const std::string& row_prefix, double delta) {
    set(da, delta);
    int violated = 0;
    for (const std::string& name : check_assignment(model, asg))
      if (name.rfind(row_prefix, 0) == 0) ++violated;
    return violated;
  };
  // Order "a then b" satisfies the first branch: indicator 0.
  size_t pair_index = 0;
  for (size_t k = 0; k < inst.graph.concurrence.size(); ++k)
    if (inst.graph.concurrence[k].a == pair.a && inst.graph.concurrence[k].b == pair.b)
      pair_index = k;
  const std::string ra = "eq13a_g" + std::to_string(pair_index);
  const std::string rb = "eq13b_g" + std::to_string(pair_index);
  CHECK(eval(ra, 0) == 0);
  CHECK(eval(rb, 0) == 0);
  // Flip the order: only the indicator's other value satisfies both rows.
  set("s_" + std::to_string(pair.a), 40);
  set("s_" + std::to_string(pair.b), 0);
  CHECK(eval(ra, 0) > 0);
  set(da, 1);
  CHECK(eval(ra, 1) == 0);
  CHECK(eval(rb, 1) == 0);
}

TEST_CASE("engine schedules substitute feasibly into every exported row") {
  Instance inst = make_instance(1.2, 0.4, 3);
  MilpModel model = build_milp(inst.bp, inst.graph, inst.robots, 400.0);

  SUBCASE("search planner") {
    GraspConfig config;
    config.seed = 5;
    config.t_max = 400.0;
    SolutionRecord rec = grasp_optimize(inst.bp, inst.graph, inst.robots, config);
    MilpAssignment asg = assignment_from_plan(model, rec.plan);
    CHECK(check_assignment(model, asg).empty());
  }
  SUBCASE("layer-wise baseline") {
    Plan plan = naive_plan(inst.bp, inst.graph, inst.robots);
    MilpAssignment asg = assignment_from_plan(model, plan);
    CHECK(check_assignment(model, asg).empty());
  }
  SUBCASE("oracle") {
    OracleResult res = exact_oracle(inst.bp, inst.graph, inst.robots);
    MilpAssignment asg = assignment_from_plan(model, res.plan);
    CHECK(check_assignment(model, asg).empty());
  }
}

TEST_CASE("objective decreases in completion time at fixed reward") {
  Instance inst = make_instance(1.2, 0.4, 3);
  MilpModel model = build_milp(inst.bp, inst.graph, inst.robots, 400.0);
  OracleResult fast = exact_oracle(inst.bp, inst.graph, inst.robots);
  Plan slow = naive_plan(inst.bp, inst.graph, inst.robots);
  REQUIRE(fast.plan.reward == slow.reward);
  REQUIRE(fast.plan.completion_time < slow.completion_time);
  const double obj_fast = objective_value(model, assignment_from_plan(model, fast.plan));
  const double obj_slow = objective_value(model, assignment_from_plan(model, slow));
  CHECK(obj_fast > obj_slow);
}

TEST_CASE("weight modes") {
  Instance inst = make_instance(1.2, 0.4, 2);
  MilpModel reciprocal = build_milp(inst.bp, inst.graph, inst.robots, 400.0);
  CHECK(reciprocal.weight == doctest::Approx(1.0 / 400.0));
  MilpModel literal =
      build_milp(inst.bp, inst.graph, inst.robots, 400.0, WeightMode::Literal);
  CHECK(literal.weight == 400.0);
}

TEST_CASE("an unbounded horizon is rejected") {
  Instance inst = make_instance(1.2, 0.4, 2);
  CHECK_THROWS_AS(build_milp(inst.bp, inst.graph, inst.robots, kUnbounded), ConfigError);
}
