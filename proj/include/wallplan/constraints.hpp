#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wallplan/wall.hpp"

namespace wallplan {

/// `above` may only be placed once `below` has been placed. Rules connect
/// consecutive layers whose footprints overlap.
struct PrecedenceRule {
  int below = 0;
  int above = 0;
};

/// Unordered pair of bricks too close to be worked at the same time
/// (stored with a < b).
struct ConcurrenceRule {
  int a = 0;
  int b = 0;
};

struct ConcurrenceSpec {
  double d_place = 3.2;          // scales the minimal pair distance
  std::optional<double> d_min;   // explicit threshold; overrides d_place
};

/// Planning graph: brick nodes plus one virtual start node per robot and a
/// single terminating node. Virtual nodes carry no precedence or
/// concurrence rules.
struct ConstraintGraph {
  int brick_count = 0;
  int robot_count = 0;
  std::vector<PrecedenceRule> precedence;
  std::vector<ConcurrenceRule> concurrence;
  double d_min = 0.0;

  std::vector<int> start_nodes;  // node ids of the per-robot start nodes
  int end_node = 0;
  std::vector<int> start_bricks;  // bricks with no precedence predecessor
  std::vector<int> end_bricks;    // bricks no other brick rests on

  // Derived adjacency, indexed by brick id (entry 0 unused).
  std::vector<std::vector<int>> preds_of;
  std::vector<std::vector<int>> succs_of;
  std::vector<std::vector<int>> partners_of;

  // Travel seconds per directed node pair; pairs not present cost 0.
  std::map<std::pair<int, int>, double> travel_times;

  int node_count() const { return brick_count + robot_count + 1; }
  double travel(int i, int j) const {
    auto it = travel_times.find({i, j});
    return it == travel_times.end() ? 0.0 : it->second;
  }
};

/// Footprint support test: a rule (below, above) exists iff `above` sits on
/// the next layer up and the two xy footprints overlap with positive area.
std::vector<PrecedenceRule> build_precedence(const WallBlueprint& bp);

/// Distance threshold rule set. The threshold is d_place times the minimal
/// center distance over all brick pairs unless an explicit d_min is given.
std::vector<ConcurrenceRule> build_concurrence(const WallBlueprint& bp, const ConcurrenceSpec& spec);

double min_pair_distance(const WallBlueprint& bp);
double brick_distance(const WallBlueprint& bp, int a, int b);

ConstraintGraph build_graph(const WallBlueprint& bp, int robot_count,
                            const ConcurrenceSpec& spec = {});

/// Text edge list ("P below above" / "C a b", one per line) for diffing.
std::string dump_graph(const ConstraintGraph& graph);

/// Bricks sorted so that every brick appears after its supports. Throws
/// InfeasibleError if the precedence relation has a cycle.
std::vector<int> topological_order(const ConstraintGraph& graph);

}  // namespace wallplan
