#include "wallplan/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "wallplan/baselines.hpp"
#include "wallplan/bench.hpp"
#include "wallplan/errors.hpp"
#include "wallplan/gantt.hpp"
#include "wallplan/grasp.hpp"
#include "wallplan/milp.hpp"
#include "wallplan/wall.hpp"

namespace wallplan {

namespace {

BrickDimensions parse_dims(const std::string& text) {
  // "full,width,height"; the half length is always full/2.
  BrickDimensions dims;
  std::stringstream ss(text);
  std::string part;
  std::vector<double> values;
  while (std::getline(ss, part, ',')) values.push_back(std::stod(part));
  if (values.size() != 3)
    throw DimensionError("--dims expects \"full,width,height\" (got \"" + text + "\")");
  dims.full_length = values[0];
  dims.half_length = values[0] / 2.0;
  dims.width = values[1];
  dims.height = values[2];
  return dims;
}

void write_text_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write: " + path);
  out << text;
  if (!out) throw IoError("failed while writing: " + path);
}

struct PlanArgs {
  std::string wall_path;
  int robots = 3;
  int ugv = 0;
  std::optional<uint64_t> seed;
  double upsilon = 0.1;
  int k_max = 1000;
  int k_stall = 100;
  double t_max = kUnbounded;
  double battery_budget = kUnbounded;
  double battery_swap = 40.0;
  std::optional<double> d_min;
  std::optional<double> d_place;
  std::string planner = "grasp";
  std::string out_path;
  std::string gantt_path;
  std::string gantt_format = "auto";
  bool parallel = false;
  bool verbose = false;
};

int do_plan(const PlanArgs& a) {
  WallBlueprint bp = load_wall(a.wall_path);
  ConcurrenceSpec conc;
  if (a.d_place) conc.d_place = *a.d_place;
  if (a.d_min || !a.d_place) conc.d_min = a.d_min.value_or(0.8);
  ConstraintGraph graph = build_graph(bp, a.robots, conc);
  std::vector<Robot> robots = make_robots(a.robots, a.ugv);
  for (Robot& r : robots) {
    r.battery_budget = a.battery_budget;
    r.battery_swap_time = a.battery_swap;
  }

  uint64_t seed = 0;
  if (a.seed) {
    seed = *a.seed;
  } else {
    seed = std::random_device{}();
    std::cout << "seed=" << seed << " (drawn from entropy; pass --seed to reproduce)\n";
  }

  const auto begin = std::chrono::steady_clock::now();
  Plan plan;
  std::string extra;
  if (a.planner == "grasp") {
    GraspConfig config;
    config.seed = seed;
    config.upsilon = a.upsilon;
    config.k_max = a.k_max;
    config.k_max_not_improved = a.k_stall;
    config.t_max = a.t_max;
    config.parallel = a.parallel;
    if (a.verbose)
      config.on_improve = [](int iter, int reward, double t) {
        std::cerr << "iter=" << iter << " reward=" << reward << " T=" << t << "\n";
      };
    plan = replan_from_partial(bp, graph, robots, config).plan;
  } else if (a.planner == "naive") {
    plan = naive_plan(bp, graph, robots);
  } else if (a.planner == "oracle") {
    OracleResult res = exact_oracle(bp, graph, robots);
    plan = res.plan;
    extra = " states=" + std::to_string(res.states_explored) +
            (res.certified ? " certified" : " NOT-certified");
  } else {
    throw ConfigError("unknown planner \"" + a.planner + "\"");
  }
  const auto end = std::chrono::steady_clock::now();
  const double ms = std::chrono::duration<double, std::milli>(end - begin).count();

  const auto violations = validate_plan(plan, graph, bp, robots, a.t_max);
  if (!violations.empty()) {
    for (const Violation& v : violations) std::cerr << "violation: " << v.message << "\n";
    throw InfeasibleError("planner produced an invalid plan (internal error)");
  }

  int preplaced_reward = 0;
  for (const Brick& b : bp.bricks)
    if (b.placed) preplaced_reward += b.reward;
  const double progress =
      100.0 * (plan.reward + preplaced_reward) / std::max(1, wall_reward_total(bp));

  std::cout << "planner=" << a.planner << " wall=" << a.wall_path << " robots=" << a.robots
            << " seed=" << seed << " progress=" << progress << "% T=" << plan.completion_time
            << " reward=" << plan.reward << " runtime_ms=" << ms << extra << "\n";

  if (!a.out_path.empty()) write_text_output(a.out_path, plan_to_json_text(plan));
  if (!a.gantt_path.empty()) {
    GanttFormat format = GanttFormat::Text;
    if (a.gantt_format == "svg" ||
        (a.gantt_format == "auto" && a.gantt_path.size() > 4 &&
         a.gantt_path.substr(a.gantt_path.size() - 4) == ".svg"))
      format = GanttFormat::Svg;
    write_text_output(a.gantt_path, render_gantt(plan, format));
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"wallplan: multi-robot brick wall construction planning"};
  app.require_subcommand(1);

  // generate ----------------------------------------------------------------
  auto* generate = app.add_subcommand("generate", "generate a wall blueprint");
  double g_length = 0, g_height = 0;
  std::string g_dims = "0.6,0.3,0.2", g_bond = "stretcher", g_out;
  generate->add_option("--length", g_length, "wall length in meters")->required();
  generate->add_option("--height", g_height, "wall height in meters")->required();
  generate->add_option("--dims", g_dims, "brick full,width,height in meters");
  generate->add_option("--bond", g_bond, "bond pattern (stretcher)");
  generate->add_option("--out", g_out, "output path or - for stdout")->required();

  // plan --------------------------------------------------------------------
  auto* plan_cmd = app.add_subcommand("plan", "plan construction of a wall");
  PlanArgs pa;
  uint64_t seed_opt = 0;
  plan_cmd->add_option("--wall", pa.wall_path, "wall JSON file")->required();
  plan_cmd->add_option("--robots", pa.robots, "number of robots");
  plan_cmd->add_option("--ugv", pa.ugv, "how many of the robots are slow ground units");
  auto* seed_flag = plan_cmd->add_option("--seed", seed_opt, "PRNG seed (omit for entropy)");
  plan_cmd->add_option("--upsilon", pa.upsilon, "snapshot coefficient in (0,1]");
  plan_cmd->add_option("--kmax", pa.k_max, "max GRASP iterations");
  plan_cmd->add_option("--kstall", pa.k_stall, "stop after this many unimproved iterations");
  plan_cmd->add_option("--tmax", pa.t_max, "time horizon in seconds (default unbounded)");
  plan_cmd->add_option("--battery-budget", pa.battery_budget, "duty seconds per battery");
  plan_cmd->add_option("--battery-swap", pa.battery_swap, "battery swap seconds");
  auto* dmin_flag = plan_cmd->add_option("--dmin", pa.d_min, "concurrence distance in meters");
  auto* dplace_flag =
      plan_cmd->add_option("--dplace", pa.d_place, "concurrence factor over the minimal pair distance");
  plan_cmd->add_option("--planner", pa.planner, "grasp | naive | oracle")
      ->check(CLI::IsMember({"grasp", "naive", "oracle"}));
  plan_cmd->add_option("--out", pa.out_path, "plan JSON path or -");
  plan_cmd->add_option("--gantt", pa.gantt_path, "Gantt chart path or -");
  plan_cmd->add_option("--gantt-format", pa.gantt_format, "svg | text | auto");
  plan_cmd->add_flag("--parallel", pa.parallel, "evaluate GRASP iterations with OpenMP");
  plan_cmd->add_flag("--verbose", pa.verbose, "log incumbent improvements");

  // bench -------------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "run a benchmark suite over the fixtures");
  std::string b_suite, b_out, b_fixtures = default_fixture_dir(), b_instances;
  int b_seeds = 30;
  uint64_t b_seed = 1;
  bool b_parallel = false;
  bench->add_option("--suite", b_suite, "table5 | table7 | battery")
      ->required()
      ->check(CLI::IsMember({"table5", "table7", "battery"}));
  bench->add_option("--seeds", b_seeds, "seeds per instance");
  bench->add_option("--seed", b_seed, "base seed");
  bench->add_option("--fixtures", b_fixtures, "fixture directory ($WALLPLAN_FIXTURES)");
  bench->add_option("--instances", b_instances, "comma separated instance filter");
  bench->add_option("--out", b_out, "write the report as JSON lines");
  bench->add_flag("--parallel", b_parallel, "fan seeds out across OpenMP workers");

  // export-milp ---------------------------------------------------------------
  auto* milp = app.add_subcommand("export-milp", "emit the exact model as an LP file");
  std::string m_wall, m_out, m_wmode = "reciprocal";
  int m_robots = 3;
  double m_tmax = 0;
  std::optional<double> m_dmin;
  milp->add_option("--wall", m_wall, "wall JSON file")->required();
  milp->add_option("--robots", m_robots, "number of robots");
  milp->add_option("--tmax", m_tmax, "finite horizon in seconds")->required();
  milp->add_option("--dmin", m_dmin, "concurrence distance in meters");
  milp->add_option("--w-mode", m_wmode, "reciprocal | literal objective time weight")
      ->check(CLI::IsMember({"reciprocal", "literal"}));
  milp->add_option("--out", m_out, "LP output path")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) {
      WallBlueprint bp = generate_wall(g_length, g_height, parse_dims(g_dims), g_bond);
      write_text_output(g_out, wall_to_json_text(bp));
      std::cerr << "generated " << bp.brick_count() << " bricks in "
                << bp.layers.size() << " layers\n";
      return 0;
    }
    if (plan_cmd->parsed()) {
      if (seed_flag->count() > 0) pa.seed = seed_opt;
      if (dmin_flag->count() == 0) pa.d_min.reset();
      if (dplace_flag->count() == 0) pa.d_place.reset();
      return do_plan(pa);
    }
    if (bench->parsed()) {
      BenchConfig config;
      config.fixture_dir = b_fixtures;
      config.seeds = b_seeds;
      config.base_seed = b_seed;
      config.parallel_seeds = b_parallel;
      if (!b_instances.empty()) {
        std::vector<std::string> list;
        std::stringstream ss(b_instances);
        std::string item;
        while (std::getline(ss, item, ',')) list.push_back(item);
        config.instances = list;
      }
      RunReport report = run_suite(b_suite, config);
      std::cout << report_text(report);
      if (!b_out.empty()) write_text_output(b_out, report_json_lines(report));
      return 0;
    }
    if (milp->parsed()) {
      WallBlueprint bp = load_wall(m_wall);
      ConcurrenceSpec conc;
      conc.d_min = m_dmin.value_or(0.8);
      ConstraintGraph graph = build_graph(bp, m_robots, conc);
      MilpModel model = build_milp(bp, graph, make_robots(m_robots), m_tmax,
                                   m_wmode == "literal" ? WeightMode::Literal
                                                        : WeightMode::Reciprocal);
      write_lp(model, m_out);
      write_text_output(m_out + ".vars.json", sidecar_json_text(model));
      std::cerr << "wrote " << model.vars.size() << " variables, " << model.rows.size()
                << " rows to " << m_out << "\n";
      return 0;
    }
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace wallplan
