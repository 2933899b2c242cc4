#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wallplan/cli.hpp"
#include "wallplan/engine.hpp"
#include "wallplan/wall.hpp"

using namespace wallplan;

namespace {

namespace fs = std::filesystem;

const char* fixture_dir() {
  if (const char* env = std::getenv("WALLPLAN_FIXTURES")) return env;
  return WALLPLAN_FIXTURE_DIR;
}

std::string fixture(const std::string& name) {
  return std::string(fixture_dir()) + "/" + name;
}

fs::path temp(const std::string& name) { return fs::temp_directory_path() / name; }

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("generate writes the requested wall") {
  const auto out = temp("cli_wall.json");
  const int code = run_cli({"generate", "--length", "2.4", "--height", "0.4", "--out",
                            out.string()});
  CHECK(code == 0);
  WallBlueprint bp = load_wall(out.string());
  CHECK(bp.brick_count() == 9);
  fs::remove(out);
}

TEST_CASE("generate rejects impossible dimensions with a usage exit") {
  const int code = run_cli({"generate", "--length", "1.0", "--height", "0.4", "--out",
                            temp("never.json").string()});
  CHECK(code == 2);
}

TEST_CASE("planning the fixture walls end to end") {
  const auto out = temp("cli_plan.json");

  SUBCASE("layer-wise baseline lands at 440 s") {
    const int code = run_cli({"plan", "--wall", fixture("wall_18.json"), "--robots", "3",
                              "--seed", "1", "--planner", "naive", "--out", out.string()});
    CHECK(code == 0);
    Plan plan = plan_from_json_text(slurp(out));
    CHECK(plan.completion_time == 440.0);
  }
  SUBCASE("oracle certifies the five-brick wall at 160 s") {
    const int code = run_cli({"plan", "--wall", fixture("wall_5.json"), "--robots", "3",
                              "--seed", "1", "--planner", "oracle", "--out", out.string()});
    CHECK(code == 0);
    Plan plan = plan_from_json_text(slurp(out));
    CHECK(plan.completion_time == 160.0);
  }
  SUBCASE("search planner with a fixed seed is reproducible byte for byte") {
    const auto out2 = temp("cli_plan2.json");
    const std::vector<std::string> args = {"plan",    "--wall", fixture("wall_18.json"),
                                           "--robots", "3",     "--seed", "99",
                                           "--upsilon", "1",    "--out"};
    auto with_out = [&](const fs::path& p) {
      std::vector<std::string> a = args;
      a.push_back(p.string());
      return a;
    };
    CHECK(run_cli(with_out(out)) == 0);
    CHECK(run_cli(with_out(out2)) == 0);
    CHECK(slurp(out) == slurp(out2));
    fs::remove(out2);
  }
  fs::remove(out);
}

TEST_CASE("gantt output follows the requested format") {
  const auto plan_out = temp("cli_plan_gantt.json");
  const auto gantt_out = temp("cli_gantt.svg");
  const int code = run_cli({"plan", "--wall", fixture("wall_5.json"), "--robots", "3",
                            "--seed", "4", "--planner", "naive", "--out", plan_out.string(),
                            "--gantt", gantt_out.string()});
  CHECK(code == 0);
  const std::string svg = slurp(gantt_out);
  CHECK(svg.rfind("<svg", 0) == 0);
  fs::remove(plan_out);
  fs::remove(gantt_out);
}

TEST_CASE("missing input files exit with the I/O code") {
  CHECK(run_cli({"plan", "--wall", "/nonexistent/wall.json"}) == 4);
}

TEST_CASE("an infeasible pre-placed wall exits with the infeasibility code") {
  // Brick 11 floats: it sits on the third course of an otherwise empty wall.
  WallBlueprint bp = generate_wall(2.4, 0.8, {});
  bp.bricks[10].placed = true;
  const auto path = temp("cli_floating.json");
  save_wall(bp, path.string());
  CHECK(run_cli({"plan", "--wall", path.string(), "--seed", "1"}) == 3);
  fs::remove(path);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli({"plan"}) == 2);                         // missing --wall
  CHECK(run_cli({"frobnicate"}) == 2);                   // unknown subcommand
  CHECK(run_cli({"plan", "--wall", "x", "--planner", "mystery"}) == 2);
}

TEST_CASE("milp export writes the model and its sidecar") {
  const auto out = temp("cli_model.lp");
  const int code = run_cli({"export-milp", "--wall", fixture("wall_5.json"), "--robots", "3",
                            "--tmax", "400", "--out", out.string()});
  CHECK(code == 0);
  const std::string lp = slurp(out);
  CHECK(lp.rfind("\\ wall construction team model", 0) == 0);
  CHECK(lp.find("Maximize") != std::string::npos);
  CHECK(lp.find("End") != std::string::npos);
  CHECK(fs::exists(out.string() + ".vars.json"));
  fs::remove(out);
  fs::remove(out.string() + ".vars.json");
}
