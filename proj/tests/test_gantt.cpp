#include <doctest.h>

#include <string>

#include "wallplan/gantt.hpp"
#include "wallplan/grasp.hpp"

using namespace wallplan;

namespace {

size_t count_occurrences(const std::string& text, const std::string& needle) {
  size_t count = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

}  // namespace

TEST_CASE("an empty plan renders as a header-only chart") {
  Plan plan;
  plan.robot_count = 3;
  const std::string text = render_gantt(plan, GanttFormat::Text);
  CHECK(text.find("T' = 0") != std::string::npos);
  CHECK(text.find('=') != std::string::npos);  // header carries the units note? no bars
  CHECK(count_occurrences(text, "\n") <= 2);
  const std::string svg = render_gantt(plan, GanttFormat::Svg);
  CHECK(svg.find("<rect") == std::string::npos);
}

TEST_CASE("the 18-brick plan draws three rows and eighteen bars") {
  WallBlueprint bp = generate_wall(2.4, 0.8, {});
  ConstraintGraph graph = build_graph(bp, 3, {3.2, 0.8});
  std::vector<Robot> robots = make_robots(3);
  GraspConfig config;
  config.seed = 1;
  config.upsilon = 1.0;
  SolutionRecord rec = grasp_optimize(bp, graph, robots, config);

  const std::string svg = render_gantt(rec.plan, GanttFormat::Svg);
  CHECK(count_occurrences(svg, "<rect") == 18);
  CHECK(count_occurrences(svg, "robot ") == 3);
  CHECK(svg.find("<script") == std::string::npos);

  const std::string text = render_gantt(rec.plan, GanttFormat::Text);
  CHECK(count_occurrences(text, "robot ") == 3);
}

TEST_CASE("battery swaps appear as distinct bars near the duty boundary") {
  WallBlueprint bp = generate_wall(2.4, 0.8, {});
  ConstraintGraph graph = build_graph(bp, 3, {3.2, 0.8});
  std::vector<Robot> robots = make_robots(3);
  for (Robot& r : robots) r.battery_budget = 200.0;
  GraspConfig config;
  config.seed = 7;
  config.upsilon = 1.0;
  SolutionRecord rec = grasp_optimize(bp, graph, robots, config);
  REQUIRE(rec.plan.swaps.size() >= 2);

  const std::string svg = render_gantt(rec.plan, GanttFormat::Svg);
  CHECK(count_occurrences(svg, ">swap<") == rec.plan.swaps.size());
  int near = 0;
  for (const SwapEvent& s : rec.plan.swaps)
    if (s.start >= 190.0 && s.start <= 250.0) ++near;
  CHECK(near >= 2);

  const std::string text = render_gantt(rec.plan, GanttFormat::Text);
  CHECK(text.find('#') != std::string::npos);
}
