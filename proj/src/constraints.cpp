#include "wallplan/constraints.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <sstream>

#include "wallplan/errors.hpp"

namespace wallplan {

namespace {
constexpr double kEps = 1e-9;
}

std::vector<PrecedenceRule> build_precedence(const WallBlueprint& bp) {
  std::vector<PrecedenceRule> rules;
  // Axis-aligned footprint overlap; yaw is uniform for straight walls, so
  // the corner containment test reduces to interval intersection in x.
  for (const Brick& below : bp.bricks) {
    const double below_top = below.center[2] + bp.dims.height;
    for (const Brick& above : bp.bricks) {
      if (std::abs(above.center[2] - below_top) > 1e-6) continue;
      const double lo = std::max(below.center[0] - below.length(bp.dims) / 2.0,
                                 above.center[0] - above.length(bp.dims) / 2.0);
      const double hi = std::min(below.center[0] + below.length(bp.dims) / 2.0,
                                 above.center[0] + above.length(bp.dims) / 2.0);
      if (hi - lo > kEps) rules.push_back({below.id, above.id});
    }
  }
  return rules;
}

double brick_distance(const WallBlueprint& bp, int a, int b) {
  const Brick& ba = bp.brick(a);
  const Brick& bb = bp.brick(b);
  const double dx = ba.center[0] - bb.center[0];
  const double dy = ba.center[1] - bb.center[1];
  const double dz = ba.center[2] - bb.center[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double min_pair_distance(const WallBlueprint& bp) {
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < bp.bricks.size(); ++i)
    for (size_t j = i + 1; j < bp.bricks.size(); ++j)
      best = std::min(best, brick_distance(bp, bp.bricks[i].id, bp.bricks[j].id));
  return best;
}

std::vector<ConcurrenceRule> build_concurrence(const WallBlueprint& bp, const ConcurrenceSpec& spec) {
  std::vector<ConcurrenceRule> rules;
  if (bp.bricks.size() < 2) return rules;
  double d_min;
  if (spec.d_min) {
    d_min = *spec.d_min;
  } else {
    if (spec.d_place <= 1.0)
      throw ConfigError("d_place must be greater than 1");
    d_min = spec.d_place * min_pair_distance(bp);
  }
  for (size_t i = 0; i < bp.bricks.size(); ++i)
    for (size_t j = i + 1; j < bp.bricks.size(); ++j)
      if (brick_distance(bp, bp.bricks[i].id, bp.bricks[j].id) <= d_min + kEps)
        rules.push_back({bp.bricks[i].id, bp.bricks[j].id});
  return rules;
}

ConstraintGraph build_graph(const WallBlueprint& bp, int robot_count, const ConcurrenceSpec& spec) {
  if (robot_count < 1) throw ConfigError("at least one robot is required");

  ConstraintGraph g;
  g.brick_count = bp.brick_count();
  g.robot_count = robot_count;
  g.precedence = build_precedence(bp);
  g.concurrence = build_concurrence(bp, spec);
  if (bp.bricks.size() >= 2)
    g.d_min = spec.d_min ? *spec.d_min : spec.d_place * min_pair_distance(bp);

  g.preds_of.assign(static_cast<size_t>(g.brick_count) + 1, {});
  g.succs_of.assign(static_cast<size_t>(g.brick_count) + 1, {});
  g.partners_of.assign(static_cast<size_t>(g.brick_count) + 1, {});
  for (const PrecedenceRule& r : g.precedence) {
    g.preds_of[static_cast<size_t>(r.above)].push_back(r.below);
    g.succs_of[static_cast<size_t>(r.below)].push_back(r.above);
  }
  for (const ConcurrenceRule& r : g.concurrence) {
    g.partners_of[static_cast<size_t>(r.a)].push_back(r.b);
    g.partners_of[static_cast<size_t>(r.b)].push_back(r.a);
  }
  for (auto& v : g.partners_of) std::sort(v.begin(), v.end());

  for (int r = 0; r < robot_count; ++r) g.start_nodes.push_back(g.brick_count + 1 + r);
  g.end_node = g.brick_count + robot_count + 1;
  for (const Brick& b : bp.bricks) {
    if (g.preds_of[static_cast<size_t>(b.id)].empty()) g.start_bricks.push_back(b.id);
    if (g.succs_of[static_cast<size_t>(b.id)].empty()) g.end_bricks.push_back(b.id);
  }
  return g;
}

std::string dump_graph(const ConstraintGraph& graph) {
  std::ostringstream out;
  for (const PrecedenceRule& r : graph.precedence) out << "P " << r.below << " " << r.above << "\n";
  for (const ConcurrenceRule& r : graph.concurrence) out << "C " << r.a << " " << r.b << "\n";
  return out.str();
}

std::vector<int> topological_order(const ConstraintGraph& graph) {
  std::vector<int> indegree(static_cast<size_t>(graph.brick_count) + 1, 0);
  for (int b = 1; b <= graph.brick_count; ++b)
    indegree[static_cast<size_t>(b)] = static_cast<int>(graph.preds_of[static_cast<size_t>(b)].size());
  std::deque<int> ready;
  for (int b = 1; b <= graph.brick_count; ++b)
    if (indegree[static_cast<size_t>(b)] == 0) ready.push_back(b);
  std::vector<int> order;
  while (!ready.empty()) {
    const int b = ready.front();
    ready.pop_front();
    order.push_back(b);
    for (int s : graph.succs_of[static_cast<size_t>(b)])
      if (--indegree[static_cast<size_t>(s)] == 0) ready.push_back(s);
  }
  if (static_cast<int>(order.size()) != graph.brick_count) {
    std::vector<int> stuck;
    for (int b = 1; b <= graph.brick_count; ++b)
      if (indegree[static_cast<size_t>(b)] > 0) stuck.push_back(b);
    throw InfeasibleError("precedence relation has a cycle", stuck);
  }
  return order;
}

}  // namespace wallplan
