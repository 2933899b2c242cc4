#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wallplan/engine.hpp"

namespace wallplan {

/// One benchmark result line: a planner run on an instance, aggregated
/// over seeds. Progress is 100% exactly when the mean reward equals the
/// wall's total reward.
struct ReportRow {
  std::string instance;
  std::string planner;
  int robots = 0;
  int seeds = 0;
  double progress_pct = 0.0;
  double t_mean = 0.0;
  double t_stddev = 0.0;
  double t_min = 0.0;
  double t_max = 0.0;
  double reward_mean = 0.0;
  double runtime_ms_mean = 0.0;
  int robots_used = 0;  // max over seeds
  int swap_count = 0;   // max over seeds
};

/// Reference completion times reported for these instances by an external
/// exact solver; reproduced here as constants for side-by-side tables.
struct ExactReference {
  const char* instance;
  double progress_pct;
  double t_prime;      // negative when the solver returned nothing
  double runtime_ms;
  double gap_pct;
};
const std::vector<ExactReference>& exact_solver_reference();

/// Published completion times of third-party planners on a ten-wall
/// benchmark of this scale (three brick types, 2 UAVs + 1 UGV). Those
/// planners are out of scope here; the constants exist only for reports.
struct ComparisonReference {
  const char* instance;
  double cmcp_t;
  double cplex_t;
  double gpgp_t;
  double gurobi_t;
  double auction_t;
};
const std::vector<ComparisonReference>& planner_comparison_reference();

struct BenchConfig {
  std::string fixture_dir;
  int seeds = 30;
  uint64_t base_seed = 1;
  bool parallel_seeds = false;
  std::optional<std::vector<std::string>> instances;  // filter by fixture name
};

struct RunReport {
  std::string suite;
  std::vector<ReportRow> rows;
};

/// table5: GRASP (upsilon 0.1) and the naive baseline on the six dataset
/// walls with 3 robots. table7: GRASP across fleet sizes {2,4,6,8,10} on
/// the dataset walls. battery: wall_18 with the 200 s duty budget.
RunReport run_suite(const std::string& suite, const BenchConfig& config);

std::string report_text(const RunReport& report);
std::string report_json_lines(const RunReport& report);

/// Default fixture directory: $WALLPLAN_FIXTURES or "fixtures".
std::string default_fixture_dir();

}  // namespace wallplan
