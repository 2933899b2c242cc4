#include "wallplan/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "wallplan/baselines.hpp"
#include "wallplan/errors.hpp"
#include "wallplan/grasp.hpp"
#include "wallplan/wall.hpp"

namespace wallplan {

using nlohmann::json;

const std::vector<ExactReference>& exact_solver_reference() {
  static const std::vector<ExactReference> table = {
      {"wall_5", 100.0, 160.0, 44.00, 0.00},
      {"wall_18", 100.0, 360.0, 137.09, 0.01},
      {"wall_39", 100.0, 710.0, 7.2e6, 0.39},
      {"wall_68", 100.0, 1180.0, 7.2e6, 0.37},
      {"wall_105", 41.0, 1290.0, 7.2e6, 145.44},
      {"wall_150", 0.0, -1.0, 7.2e6, -1.0},
  };
  return table;
}

const std::vector<ComparisonReference>& planner_comparison_reference() {
  static const std::vector<ComparisonReference> table = {
      {"set_01", 120, 102, 193, 111, 115}, {"set_02", 98, 103, 156, 107, 103},
      {"set_03", 109, 107, 157, 119, 107}, {"set_04", 94, 102, 158, 107, 102},
      {"set_05", 80, 119, 158, 132, 118}, {"set_06", 119, 105, 170, 125, 126},
      {"set_07", 103, 96, 119, 107, 96},  {"set_08", 118, 102, 178, 129, 106},
      {"set_09", 87, 96, 144, 119, 98},   {"set_10", 104, 87, 133, 107, 99},
  };
  return table;
}

std::string default_fixture_dir() {
  if (const char* env = std::getenv("WALLPLAN_FIXTURES")) return env;
  return "fixtures";
}

namespace {

struct SeedOutcome {
  double t_prime = 0.0;
  int reward = 0;
  double runtime_ms = 0.0;
  int robots_used = 0;
  int swaps = 0;
};

ReportRow aggregate(const std::string& instance, const std::string& planner, int robots,
                    const std::vector<SeedOutcome>& runs, int total_reward) {
  ReportRow row;
  row.instance = instance;
  row.planner = planner;
  row.robots = robots;
  row.seeds = static_cast<int>(runs.size());
  row.t_min = kUnbounded;
  double sum = 0.0, sum_sq = 0.0, reward_sum = 0.0, runtime_sum = 0.0;
  for (const SeedOutcome& r : runs) {
    sum += r.t_prime;
    sum_sq += r.t_prime * r.t_prime;
    reward_sum += r.reward;
    runtime_sum += r.runtime_ms;
    row.t_min = std::min(row.t_min, r.t_prime);
    row.t_max = std::max(row.t_max, r.t_prime);
    row.robots_used = std::max(row.robots_used, r.robots_used);
    row.swap_count = std::max(row.swap_count, r.swaps);
  }
  const double n = static_cast<double>(runs.size());
  row.t_mean = sum / n;
  row.t_stddev = std::sqrt(std::max(0.0, sum_sq / n - row.t_mean * row.t_mean));
  row.reward_mean = reward_sum / n;
  row.runtime_ms_mean = runtime_sum / n;
  row.progress_pct = 100.0 * row.reward_mean / std::max(1, total_reward);
  return row;
}

SeedOutcome run_grasp_once(const WallBlueprint& bp, const ConstraintGraph& graph,
                           const std::vector<Robot>& robots, GraspConfig config) {
  const auto begin = std::chrono::steady_clock::now();
  SolutionRecord rec = grasp_optimize(bp, graph, robots, config);
  const auto end = std::chrono::steady_clock::now();
  SeedOutcome out;
  out.t_prime = rec.completion_time;
  out.reward = rec.reward;
  out.runtime_ms = std::chrono::duration<double, std::milli>(end - begin).count();
  out.robots_used = rec.plan.robots_used();
  out.swaps = static_cast<int>(rec.plan.swaps.size());
  return out;
}

ReportRow grasp_row(const WallBlueprint& bp, const ConstraintGraph& graph,
                    const std::vector<Robot>& robots, const std::string& instance,
                    const BenchConfig& bench, GraspConfig base) {
  std::vector<SeedOutcome> runs(static_cast<size_t>(bench.seeds));
#pragma omp parallel for schedule(dynamic, 1) if (bench.parallel_seeds)
  for (int s = 0; s < bench.seeds; ++s) {
    GraspConfig config = base;
    config.seed = mix_seed(bench.base_seed, static_cast<uint64_t>(s));
    runs[static_cast<size_t>(s)] = run_grasp_once(bp, graph, robots, config);
  }
  return aggregate(instance, "grasp", static_cast<int>(robots.size()), runs,
                   wall_reward_total(bp));
}

ReportRow naive_row(const WallBlueprint& bp, const ConstraintGraph& graph,
                    const std::vector<Robot>& robots, const std::string& instance) {
  const auto begin = std::chrono::steady_clock::now();
  Plan plan = naive_plan(bp, graph, robots);
  const auto end = std::chrono::steady_clock::now();
  SeedOutcome out;
  out.t_prime = plan.completion_time;
  out.reward = plan.reward;
  out.runtime_ms = std::chrono::duration<double, std::milli>(end - begin).count();
  out.robots_used = plan.robots_used();
  return aggregate(instance, "naive", static_cast<int>(robots.size()), {out},
                   wall_reward_total(bp));
}

bool wanted(const BenchConfig& config, const std::string& instance) {
  if (!config.instances) return true;
  return std::find(config.instances->begin(), config.instances->end(), instance) !=
         config.instances->end();
}

const std::vector<std::string>& dataset_walls() {
  static const std::vector<std::string> walls = {"wall_5",  "wall_18",  "wall_39",
                                                 "wall_68", "wall_105", "wall_150"};
  return walls;
}

}  // namespace

RunReport run_suite(const std::string& suite, const BenchConfig& config) {
  RunReport report;
  report.suite = suite;
  const ConcurrenceSpec conc{3.2, 0.8};

  if (suite == "table5") {
    for (const std::string& name : dataset_walls()) {
      if (!wanted(config, name)) continue;
      WallBlueprint bp = load_wall(config.fixture_dir + "/" + name + ".json");
      std::vector<Robot> robots = make_robots(3);
      ConstraintGraph graph = build_graph(bp, 3, conc);
      GraspConfig grasp;
      grasp.upsilon = 0.1;
      report.rows.push_back(grasp_row(bp, graph, robots, name, config, grasp));
      report.rows.push_back(naive_row(bp, graph, robots, name));
    }
  } else if (suite == "table7") {
    for (const std::string& name : dataset_walls()) {
      if (name == "wall_5" || !wanted(config, name)) continue;
      WallBlueprint bp = load_wall(config.fixture_dir + "/" + name + ".json");
      for (int r : {2, 4, 6, 8, 10}) {
        std::vector<Robot> robots = make_robots(r);
        ConstraintGraph graph = build_graph(bp, r, conc);
        GraspConfig grasp;
        grasp.upsilon = 0.1;
        report.rows.push_back(grasp_row(bp, graph, robots, name, config, grasp));
      }
    }
  } else if (suite == "battery") {
    const std::string name = "wall_18";
    WallBlueprint bp = load_wall(config.fixture_dir + "/" + name + ".json");
    std::vector<Robot> robots = make_robots(3);
    for (Robot& r : robots) r.battery_budget = 200.0;
    ConstraintGraph graph = build_graph(bp, 3, conc);
    GraspConfig grasp;
    grasp.upsilon = 1.0;
    report.rows.push_back(grasp_row(bp, graph, robots, name + "+battery", config, grasp));
    report.rows.push_back(naive_row(bp, graph, make_robots(3), name));
  } else {
    throw ConfigError("unknown benchmark suite \"" + suite +
                      "\" (expected table5, table7 or battery)");
  }
  return report;
}

std::string report_text(const RunReport& report) {
  std::ostringstream out;
  out << "suite: " << report.suite << "\n";
  out << "instance      planner  R   seeds  progress   T' mean    std      min..max     reward  runtime ms  R_used  swaps\n";
  for (const ReportRow& r : report.rows) {
    char line[256];
    std::snprintf(line, sizeof(line),
                  "%-13s %-7s %-3d %-6d %7.1f%% %9.1f %7.1f %7.0f..%-7.0f %6.1f %9.2f %6d %6d\n",
                  r.instance.c_str(), r.planner.c_str(), r.robots, r.seeds, r.progress_pct,
                  r.t_mean, r.t_stddev, r.t_min, r.t_max, r.reward_mean, r.runtime_ms_mean,
                  r.robots_used, r.swap_count);
    out << line;
  }
  if (report.suite == "table5") {
    out << "reference exact-solver results for these instances:\n";
    for (const ExactReference& e : exact_solver_reference()) {
      char line[160];
      std::snprintf(line, sizeof(line), "%-13s progress %5.1f%%  T' %7.1f  runtime %10.2f ms  gap %7.2f%%\n",
                    e.instance, e.progress_pct, e.t_prime, e.runtime_ms, e.gap_pct);
      out << line;
    }
  }
  return out.str();
}

std::string report_json_lines(const RunReport& report) {
  std::ostringstream out;
  for (const ReportRow& r : report.rows) {
    json j{{"suite", report.suite},
           {"instance", r.instance},
           {"planner", r.planner},
           {"robots", r.robots},
           {"seeds", r.seeds},
           {"progress_pct", r.progress_pct},
           {"t_mean_s", r.t_mean},
           {"t_stddev_s", r.t_stddev},
           {"t_min_s", r.t_min},
           {"t_max_s", r.t_max},
           {"reward_mean", r.reward_mean},
           {"runtime_ms_mean", r.runtime_ms_mean},
           {"robots_used", r.robots_used},
           {"swaps", r.swap_count}};
    out << j.dump() << "\n";
  }
  if (report.suite == "table5") {
    for (const ExactReference& e : exact_solver_reference()) {
      json j{{"suite", "table5"},
             {"instance", e.instance},
             {"planner", "exact-solver-reference"},
             {"progress_pct", e.progress_pct},
             {"t_s", e.t_prime},
             {"runtime_ms", e.runtime_ms},
             {"gap_pct", e.gap_pct}};
      out << j.dump() << "\n";
    }
    for (const ComparisonReference& c : planner_comparison_reference()) {
      json j{{"suite", "published-comparison"},
             {"instance", c.instance},
             {"cmcp_t_s", c.cmcp_t},
             {"cplex_t_s", c.cplex_t},
             {"gpgp_t_s", c.gpgp_t},
             {"gurobi_t_s", c.gurobi_t},
             {"auction_t_s", c.auction_t},
             {"note", "published results on the original ten-wall comparison; "
                      "those planners are not implemented here"}};
      out << j.dump() << "\n";
    }
  }
  return out.str();
}

}  // namespace wallplan
