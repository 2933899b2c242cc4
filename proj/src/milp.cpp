#include "wallplan/milp.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "wallplan/errors.hpp"

namespace wallplan {

using nlohmann::json;

namespace {

std::string fmt(double v) {
  // Plain decimal, no exponent, trimmed; LP readers are picky.
  std::ostringstream out;
  out.precision(12);
  out << std::fixed << v;
  std::string s = out.str();
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  return s;
}

}  // namespace

int MilpModel::var_index(const std::string& name) const {
  for (size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<int>(i);
  return -1;
}

namespace {

struct ModelBuilder {
  MilpModel model;
  std::map<std::string, int> index;

  int add_var(const std::string& name, VarKind kind, double lo, double hi, double obj) {
    auto [it, inserted] = index.insert({name, static_cast<int>(model.vars.size())});
    if (inserted) model.vars.push_back({name, kind, lo, hi, obj});
    return it->second;
  }
  int var(const std::string& name) const { return index.at(name); }

  MilpRow& add_row(std::string name, RowSense sense, double rhs) {
    model.rows.push_back({std::move(name), {}, sense, rhs});
    return model.rows.back();
  }
};

std::string x_name(int robot, int i, int j) {
  return "x_r" + std::to_string(robot) + "_i" + std::to_string(i) + "_j" + std::to_string(j);
}
std::string z_name(int i, int j) { return "z_" + std::to_string(i) + "_" + std::to_string(j); }
std::string y_name(int i) { return "y_" + std::to_string(i); }
std::string s_name(int i) { return "s_" + std::to_string(i); }
std::string d_name(int a, int b) { return "d_" + std::to_string(a) + "_" + std::to_string(b); }

}  // namespace

MilpModel build_milp(const WallBlueprint& bp, const ConstraintGraph& graph,
                     const std::vector<Robot>& robots, double t_max, WeightMode mode) {
  if (!(t_max < kUnbounded))
    throw ConfigError("MILP export needs a finite T_max (the big-M constant depends on it)");
  if (robots.empty()) throw ConfigError("at least one robot is required");

  ModelBuilder b;
  MilpModel& m = b.model;
  m.brick_count = bp.brick_count();
  m.robot_count = static_cast<int>(robots.size());
  m.t_max = t_max;
  m.weight = (mode == WeightMode::Reciprocal) ? 1.0 / t_max : t_max;

  const int B = m.brick_count;
  const int R = m.robot_count;
  const int N = m.end_node();

  double max_duration = 0.0;
  for (const Brick& brick : bp.bricks) max_duration = std::max(max_duration, brick.duration_s);
  double max_travel = 0.0;
  for (const auto& [edge, seconds] : graph.travel_times) max_travel = std::max(max_travel, seconds);
  m.big_m = t_max + max_duration + max_travel;

  auto node_duration = [&](int node) {
    return node <= B ? bp.brick(node).duration_s : 0.0;
  };

  // Directed edges: per robot, its start node to every brick and to the
  // terminating node (empty routes are legal); brick to brick; brick to end.
  std::vector<std::pair<int, int>> shared_edges;
  for (int i = 1; i <= B; ++i) {
    for (int j = 1; j <= B; ++j)
      if (i != j) shared_edges.push_back({i, j});
    shared_edges.push_back({i, N});
  }
  for (int r = 0; r < R; ++r) {
    shared_edges.push_back({m.start_node(r), N});
    for (int j = 1; j <= B; ++j) shared_edges.push_back({m.start_node(r), j});
  }

  // Objective: total collected reward minus the weighted arrival time at
  // the terminating node. Virtual nodes carry no reward.
  for (int i = 1; i <= N; ++i)
    b.add_var(y_name(i), VarKind::Binary, 0, 1, i <= B ? bp.brick(i).reward : 0.0);
  for (int i = 1; i <= N; ++i)
    b.add_var(s_name(i), VarKind::Continuous, 0, t_max, i == N ? -m.weight : 0.0);
  for (const auto& [i, j] : shared_edges) b.add_var(z_name(i, j), VarKind::Binary, 0, 1, 0);
  for (int r = 0; r < R; ++r)
    for (const auto& [i, j] : shared_edges) {
      const bool start_edge = i > B;
      if (start_edge && i != m.start_node(r)) continue;  // robots leave their own start only
      b.add_var(x_name(r, i, j), VarKind::Binary, 0, 1, 0);
    }
  for (const ConcurrenceRule& rule : graph.concurrence)
    b.add_var(d_name(rule.a, rule.b), VarKind::Binary, 0, 1, 0);

  // Each robot leaves its start exactly once.
  for (int r = 0; r < R; ++r) {
    MilpRow& row = b.add_row("eq2_r" + std::to_string(r), RowSense::Equal, 1);
    for (int j = 1; j <= B; ++j) row.terms.push_back({b.var(x_name(r, m.start_node(r), j)), 1});
    row.terms.push_back({b.var(x_name(r, m.start_node(r), N)), 1});
  }
  // All robots arrive at the terminating node.
  {
    MilpRow& row = b.add_row("eq3", RowSense::Equal, R);
    for (int r = 0; r < R; ++r) {
      for (int i = 1; i <= B; ++i) row.terms.push_back({b.var(x_name(r, i, N)), 1});
      row.terms.push_back({b.var(x_name(r, m.start_node(r), N)), 1});
    }
  }
  // Start times pinned to zero; start and end nodes visited.
  for (int r = 0; r < R; ++r) {
    b.add_row("eq4_r" + std::to_string(r), RowSense::Equal, 0)
        .terms.push_back({b.var(s_name(m.start_node(r))), 1});
    b.add_row("eq5_r" + std::to_string(r), RowSense::Equal, 1)
        .terms.push_back({b.var(y_name(m.start_node(r))), 1});
  }
  b.add_row("eq6", RowSense::Equal, 1).terms.push_back({b.var(y_name(N)), 1});

  // Route flow conservation on brick nodes, per robot.
  for (int r = 0; r < R; ++r)
    for (int c = 1; c <= B; ++c) {
      MilpRow& row = b.add_row("eq7_r" + std::to_string(r) + "_c" + std::to_string(c),
                               RowSense::Equal, 0);
      for (int i = 1; i <= B; ++i)
        if (i != c) row.terms.push_back({b.var(x_name(r, i, c)), 1});
      row.terms.push_back({b.var(x_name(r, m.start_node(r), c)), 1});
      for (int j = 1; j <= B; ++j)
        if (j != c) row.terms.push_back({b.var(x_name(r, c, j)), -1});
      row.terms.push_back({b.var(x_name(r, c, N)), -1});
    }
  // A visited brick is entered by exactly one robot; the terminating node
  // collects all R arrivals (eq3 with eq6 covers it).
  for (int c = 1; c <= B; ++c) {
    MilpRow& row = b.add_row("eq8_c" + std::to_string(c), RowSense::Equal, 0);
    for (int r = 0; r < R; ++r) {
      for (int i = 1; i <= B; ++i)
        if (i != c) row.terms.push_back({b.var(x_name(r, i, c)), 1});
      row.terms.push_back({b.var(x_name(r, m.start_node(r), c)), 1});
    }
    row.terms.push_back({b.var(y_name(c)), -1});
  }
  // Per-robot edge use implies the shared edge binary.
  for (const auto& [i, j] : shared_edges) {
    MilpRow& row = b.add_row("eq9_" + std::to_string(i) + "_" + std::to_string(j),
                             RowSense::LessEqual, 0);
    for (int r = 0; r < R; ++r) {
      const bool start_edge = i > B;
      if (start_edge && i != m.start_node(r)) continue;
      row.terms.push_back({b.var(x_name(r, i, j)), 1});
    }
    row.terms.push_back({b.var(z_name(i, j)), -static_cast<double>(R)});
  }
  // Time continuity along used edges: s_i + t_i + e_ij <= s_j + M (1 - z_ij).
  for (const auto& [i, j] : shared_edges) {
    MilpRow& row = b.add_row("eq10_" + std::to_string(i) + "_" + std::to_string(j),
                             RowSense::LessEqual,
                             m.big_m - node_duration(i) - graph.travel(i, j));
    row.terms.push_back({b.var(s_name(i)), 1});
    row.terms.push_back({b.var(s_name(j)), -1});
    row.terms.push_back({b.var(z_name(i, j)), m.big_m});
  }
  // Precedence: support visited when the dependent is, and placed first.
  for (size_t k = 0; k < graph.precedence.size(); ++k) {
    const PrecedenceRule& rule = graph.precedence[k];
    MilpRow& r11 = b.add_row("eq11_p" + std::to_string(k), RowSense::GreaterEqual, 0);
    r11.terms.push_back({b.var(y_name(rule.below)), 1});
    r11.terms.push_back({b.var(y_name(rule.above)), -1});
    MilpRow& r12 = b.add_row("eq12_p" + std::to_string(k), RowSense::GreaterEqual, 0);
    r12.terms.push_back({b.var(s_name(rule.above)), 1});
    r12.terms.push_back({b.var(s_name(rule.below)), -1});
    r12.terms.push_back({b.var(y_name(rule.below)), -node_duration(rule.below)});
  }
  // Concurrence disjunction, big-M linearized with one indicator per pair:
  //   s_b >= s_a + y_a t_a - M d      s_a >= s_b + y_b t_b - M (1 - d)
  for (size_t k = 0; k < graph.concurrence.size(); ++k) {
    const ConcurrenceRule& rule = graph.concurrence[k];
    const int dvar = b.var(d_name(rule.a, rule.b));
    MilpRow& ra = b.add_row("eq13a_g" + std::to_string(k), RowSense::GreaterEqual, 0);
    ra.terms.push_back({b.var(s_name(rule.b)), 1});
    ra.terms.push_back({b.var(s_name(rule.a)), -1});
    ra.terms.push_back({b.var(y_name(rule.a)), -node_duration(rule.a)});
    ra.terms.push_back({dvar, m.big_m});
    MilpRow& rb = b.add_row("eq13b_g" + std::to_string(k), RowSense::GreaterEqual, -m.big_m);
    rb.terms.push_back({b.var(s_name(rule.a)), 1});
    rb.terms.push_back({b.var(s_name(rule.b)), -1});
    rb.terms.push_back({b.var(y_name(rule.b)), -node_duration(rule.b)});
    rb.terms.push_back({dvar, -m.big_m});
  }
  // 0 <= s_i <= T_max lives in the Bounds section via the variable bounds.
  return std::move(b.model);
}

std::string lp_text(const MilpModel& model) {
  std::ostringstream out;
  out << "\\ wall construction team model: " << model.brick_count << " bricks, "
      << model.robot_count << " robots, T_max " << fmt(model.t_max) << ", M "
      << fmt(model.big_m) << "\n";
  out << "Maximize\n obj:";
  bool first = true;
  for (const MilpVar& v : model.vars) {
    if (v.objective == 0.0) continue;
    out << (v.objective < 0 ? " - " : (first ? " " : " + "))
        << fmt(std::abs(v.objective)) << " " << v.name;
    first = false;
  }
  out << "\nSubject To\n";
  for (const MilpRow& row : model.rows) {
    out << " " << row.name << ":";
    bool lead = true;
    for (const auto& [var, coef] : row.terms) {
      if (coef == 0.0) continue;
      out << (coef < 0 ? " - " : (lead ? " " : " + "));
      if (std::abs(coef) != 1.0) out << fmt(std::abs(coef)) << " ";
      out << model.vars[static_cast<size_t>(var)].name;
      lead = false;
    }
    switch (row.sense) {
      case RowSense::LessEqual: out << " <= "; break;
      case RowSense::GreaterEqual: out << " >= "; break;
      case RowSense::Equal: out << " = "; break;
    }
    out << fmt(row.rhs) << "\n";
  }
  out << "Bounds\n";
  for (const MilpVar& v : model.vars)
    if (v.kind == VarKind::Continuous)
      out << " " << fmt(v.lower) << " <= " << v.name << " <= " << fmt(v.upper) << "\n";
  out << "Binaries\n";
  for (const MilpVar& v : model.vars)
    if (v.kind == VarKind::Binary) out << " " << v.name << "\n";
  out << "End\n";
  return out.str();
}

void write_lp(const MilpModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write LP file: " + path);
  out << lp_text(model);
  if (!out) throw IoError("failed while writing LP file: " + path);
}

std::string sidecar_json_text(const MilpModel& model) {
  json nodes;
  nodes["bricks"] = json::array();
  for (int i = 1; i <= model.brick_count; ++i) nodes["bricks"].push_back(i);
  nodes["start_nodes"] = json::object();
  for (int r = 0; r < model.robot_count; ++r)
    nodes["start_nodes"][std::to_string(r)] = model.start_node(r);
  nodes["end_node"] = model.end_node();

  json vars = json::object();
  for (const MilpVar& v : model.vars)
    vars[v.name] = v.kind == VarKind::Binary ? "binary" : "continuous";

  json out{{"nodes", std::move(nodes)},
           {"variables", std::move(vars)},
           {"t_max", model.t_max},
           {"big_m", model.big_m},
           {"objective_time_weight", model.weight},
           {"naming", {{"route", "x_r{robot}_i{from}_j{to}"},
                       {"edge", "z_{from}_{to}"},
                       {"visit", "y_{node}"},
                       {"visit_time", "s_{node}"},
                       {"concurrence_indicator", "d_{a}_{b}"}}}};
  return out.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

MilpAssignment assignment_from_plan(const MilpModel& model, const Plan& plan) {
  MilpAssignment asg;
  asg.value.assign(model.vars.size(), 0.0);
  auto set = [&](const std::string& name, double v) {
    const int idx = model.var_index(name);
    if (idx < 0) throw ConfigError("plan does not fit the model: no variable " + name);
    asg.value[static_cast<size_t>(idx)] = v;
  };

  const int N = model.end_node();
  std::vector<std::vector<const Placement*>> route(static_cast<size_t>(model.robot_count));
  for (const Placement& p : plan.placements)
    route[static_cast<size_t>(p.robot)].push_back(&p);
  for (auto& r : route)
    std::sort(r.begin(), r.end(),
              [](const Placement* a, const Placement* b) { return a->start < b->start; });

  double completion = 0.0;
  for (int r = 0; r < model.robot_count; ++r) {
    set(y_name(model.start_node(r)), 1);
    int prev = model.start_node(r);
    for (const Placement* p : route[static_cast<size_t>(r)]) {
      set(x_name(r, prev, p->brick), 1);
      set(z_name(prev, p->brick), 1);
      set(y_name(p->brick), 1);
      set(s_name(p->brick), p->start);
      completion = std::max(completion, p->placed_at);
      prev = p->brick;
    }
    set(x_name(r, prev, N), 1);
    set(z_name(prev, N), 1);
  }
  set(y_name(N), 1);
  set(s_name(N), std::max(plan.completion_time, completion));

  // Disjunction indicators follow the realized order when both endpoints
  // were placed; either branch satisfies the pair otherwise.
  std::vector<double> start_of(static_cast<size_t>(model.brick_count) + 1, -1.0);
  for (const Placement& p : plan.placements) start_of[static_cast<size_t>(p.brick)] = p.start;
  for (const MilpVar& v : model.vars) {
    if (v.name.rfind("d_", 0) != 0) continue;
    const size_t sep = v.name.find('_', 2);
    const int a = std::stoi(v.name.substr(2, sep - 2));
    const int bb = std::stoi(v.name.substr(sep + 1));
    const double sa = start_of[static_cast<size_t>(a)];
    const double sb = start_of[static_cast<size_t>(bb)];
    if (sa >= 0 && sb >= 0 && sb < sa) set(v.name, 1);  // a waits for b
  }
  return asg;
}

double objective_value(const MilpModel& model, const MilpAssignment& asg) {
  double total = 0.0;
  for (size_t i = 0; i < model.vars.size(); ++i)
    total += model.vars[i].objective * asg.value[i];
  return total;
}

std::vector<std::string> check_assignment(const MilpModel& model, const MilpAssignment& asg,
                                          double tolerance) {
  std::vector<std::string> violated;
  for (const MilpRow& row : model.rows) {
    double lhs = 0.0;
    for (const auto& [var, coef] : row.terms) lhs += coef * asg.value[static_cast<size_t>(var)];
    const bool ok = row.sense == RowSense::LessEqual    ? lhs <= row.rhs + tolerance
                    : row.sense == RowSense::GreaterEqual ? lhs >= row.rhs - tolerance
                                                          : std::abs(lhs - row.rhs) <= tolerance;
    if (!ok) violated.push_back(row.name);
  }
  for (size_t i = 0; i < model.vars.size(); ++i) {
    const MilpVar& v = model.vars[i];
    if (asg.value[i] < v.lower - tolerance || asg.value[i] > v.upper + tolerance)
      violated.push_back("bound_" + v.name);
  }
  return violated;
}

}  // namespace wallplan
