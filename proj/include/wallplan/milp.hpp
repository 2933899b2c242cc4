#pragma once

#include <string>
#include <vector>

#include "wallplan/engine.hpp"

namespace wallplan {

/// How the completion-time weight W in the objective is derived from the
/// horizon. Reciprocal keeps W * s_N inside [0, 1]; Literal sets W = T_max.
enum class WeightMode { Reciprocal, Literal };

enum class VarKind { Binary, Continuous };

struct MilpVar {
  std::string name;
  VarKind kind = VarKind::Binary;
  double lower = 0.0;
  double upper = 1.0;
  double objective = 0.0;
};

enum class RowSense { LessEqual, GreaterEqual, Equal };

struct MilpRow {
  std::string name;  // carries the constraint family it belongs to
  std::vector<std::pair<int, double>> terms;  // (variable index, coefficient)
  RowSense sense = RowSense::Equal;
  double rhs = 0.0;
};

/// The team-orienteering model for a wall: per-robot route binaries over
/// the planning graph, shared edge binaries, visit binaries, continuous
/// visit times, and one disjunction binary per concurrence pair. Node
/// indices: bricks keep their ids, start nodes follow, the terminating
/// node is last.
struct MilpModel {
  int brick_count = 0;
  int robot_count = 0;
  double t_max = 0.0;
  double big_m = 0.0;
  double weight = 0.0;
  std::vector<MilpVar> vars;
  std::vector<MilpRow> rows;

  int start_node(int robot) const { return brick_count + 1 + robot; }
  int end_node() const { return brick_count + robot_count + 1; }

  int var_index(const std::string& name) const;  // -1 when absent
};

/// Builds the full model. T_max must be finite (the big-M constant needs
/// it); throws ConfigError otherwise.
MilpModel build_milp(const WallBlueprint& bp, const ConstraintGraph& graph,
                     const std::vector<Robot>& robots, double t_max,
                     WeightMode mode = WeightMode::Reciprocal);

/// Deterministic LP text (Maximize / Subject To / Bounds / Binaries / End).
std::string lp_text(const MilpModel& model);
void write_lp(const MilpModel& model, const std::string& path);

/// Variable-name map for decoding solver output back into bricks/robots.
std::string sidecar_json_text(const MilpModel& model);

/// A complete variable assignment, indexed like model.vars.
struct MilpAssignment {
  std::vector<double> value;
};

/// Translates an engine plan into model variables (routes, visits, times,
/// disjunction binaries chosen from the realized order).
MilpAssignment assignment_from_plan(const MilpModel& model, const Plan& plan);

/// Names of rows the assignment violates (alongside the objective value).
std::vector<std::string> check_assignment(const MilpModel& model, const MilpAssignment& asg,
                                          double tolerance = 1e-6);
double objective_value(const MilpModel& model, const MilpAssignment& asg);

}  // namespace wallplan
