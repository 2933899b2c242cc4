// Compares the serial and OpenMP execution paths of the optimizer: the
// chunked reduction must make them bit-identical, and the parallel path
// should not be slower on multi-iteration workloads. Run with --check for
// the correctness-only mode used by ctest; without it, a timing table.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "wallplan/grasp.hpp"
#include "wallplan/wall.hpp"

using namespace wallplan;

namespace {

const char* fixture_dir() {
  if (const char* env = std::getenv("WALLPLAN_FIXTURES")) return env;
  return WALLPLAN_FIXTURE_DIR;
}

struct Timed {
  SolutionRecord record;
  double ms;
};

Timed run(const WallBlueprint& bp, const ConstraintGraph& graph,
          const std::vector<Robot>& robots, uint64_t seed, double upsilon, bool parallel) {
  GraspConfig config;
  config.seed = seed;
  config.upsilon = upsilon;
  config.k_max = 1000;
  config.parallel = parallel;
  const auto t0 = std::chrono::steady_clock::now();
  SolutionRecord rec = grasp_optimize(bp, graph, robots, config);
  const auto t1 = std::chrono::steady_clock::now();
  return {std::move(rec), std::chrono::duration<double, std::milli>(t1 - t0).count()};
}

}  // namespace

int main(int argc, char** argv) {
  const bool check_only = argc > 1 && std::strcmp(argv[1], "--check") == 0;
#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; parallel path runs serially\n");
#endif

  int mismatches = 0;
  const struct {
    const char* wall;
    double upsilon;
    int seeds;
  } cases[] = {
      {"wall_18", 1.0, 3},
      {"wall_39", 0.1, 2},
      {"wall_150", 0.1, check_only ? 1 : 2},
  };

  for (const auto& c : cases) {
    WallBlueprint bp = load_wall(std::string(fixture_dir()) + "/" + c.wall + ".json");
    ConstraintGraph graph = build_graph(bp, 3, {3.2, 0.8});
    std::vector<Robot> robots = make_robots(3);
    for (int seed = 0; seed < c.seeds; ++seed) {
      Timed serial = run(bp, graph, robots, static_cast<uint64_t>(seed), c.upsilon, false);
      Timed parallel = run(bp, graph, robots, static_cast<uint64_t>(seed), c.upsilon, true);
      const bool same =
          plan_to_json_text(serial.record.plan) == plan_to_json_text(parallel.record.plan);
      if (!same) ++mismatches;
      std::printf("%-9s seed=%d  T'=%6.0f  serial %8.1f ms  parallel %8.1f ms  speedup %4.2fx  %s\n",
                  c.wall, seed, serial.record.completion_time, serial.ms, parallel.ms,
                  serial.ms / std::max(parallel.ms, 1e-9), same ? "identical" : "MISMATCH");
    }
  }
  if (mismatches) {
    std::printf("%d mismatch(es) between serial and parallel results\n", mismatches);
    return 1;
  }
  std::printf("serial and parallel planners agree\n");
  return 0;
}
