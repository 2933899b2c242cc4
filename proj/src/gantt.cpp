#include "wallplan/gantt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace wallplan {

namespace {

constexpr double kSecondsPerColumn = 10.0;

std::string render_text(const Plan& plan) {
  std::ostringstream out;
  out << "T' = " << plan.completion_time << " s, reward = " << plan.reward << "\n";
  double horizon = plan.completion_time;
  for (const SwapEvent& s : plan.swaps) horizon = std::max(horizon, s.end);
  const int cols = static_cast<int>(std::ceil(horizon / kSecondsPerColumn));
  if (cols == 0) return out.str();

  // Ruler with a tick every 100 s.
  out << "        ";
  for (int c = 0; c < cols; ++c) out << (c % 10 == 0 ? '+' : '-');
  out << "\n";

  for (int r = 0; r < plan.robot_count; ++r) {
    std::string row(static_cast<size_t>(cols), ' ');
    for (const Placement& p : plan.placements) {
      if (p.robot != r) continue;
      const int c0 = static_cast<int>(std::llround(p.start / kSecondsPerColumn));
      const int c1 = static_cast<int>(std::llround(p.placed_at / kSecondsPerColumn));
      for (int c = c0; c < c1 && c < cols; ++c) row[static_cast<size_t>(c)] = '=';
      const std::string label = std::to_string(p.brick);
      for (size_t k = 0; k < label.size() && c0 + static_cast<int>(k) < cols; ++k)
        row[static_cast<size_t>(c0) + k] = label[k];
    }
    for (const SwapEvent& s : plan.swaps) {
      if (s.robot != r) continue;
      const int c0 = static_cast<int>(std::llround(s.start / kSecondsPerColumn));
      const int c1 = static_cast<int>(std::llround(s.end / kSecondsPerColumn));
      for (int c = c0; c < c1 && c < cols; ++c) row[static_cast<size_t>(c)] = '#';
    }
    std::ostringstream head;
    head << "robot " << r;
    std::string h = head.str();
    h.resize(8, ' ');
    out << h << row << "\n";
  }
  out << "        ('=' placement bar starting with the brick id, '#' battery swap, "
      << kSecondsPerColumn << " s per column)\n";
  return out.str();
}

std::string render_svg(const Plan& plan) {
  constexpr double px_per_s = 2.0;
  constexpr int row_height = 26;
  constexpr int row_gap = 8;
  constexpr int left = 70;
  constexpr int top = 40;

  double horizon = plan.completion_time;
  for (const SwapEvent& s : plan.swaps) horizon = std::max(horizon, s.end);
  const int width = left + static_cast<int>(std::ceil(horizon * px_per_s)) + 20;
  const int height = top + plan.robot_count * (row_height + row_gap) + 30;

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << std::max(width, 240)
      << "\" height=\"" << std::max(height, 80) << "\" font-family=\"monospace\" font-size=\"11\">\n";
  out << "  <text x=\"8\" y=\"16\">T' = " << plan.completion_time << " s, reward = "
      << plan.reward << "</text>\n";

  auto row_y = [&](int r) { return top + r * (row_height + row_gap); };
  for (int r = 0; r < plan.robot_count; ++r)
    out << "  <text x=\"8\" y=\"" << row_y(r) + row_height - 8 << "\">robot " << r
        << "</text>\n";

  // Time grid every 100 s.
  for (double t = 0; t <= horizon + 1e-9; t += 100.0) {
    const double x = left + t * px_per_s;
    out << "  <line x1=\"" << x << "\" y1=\"" << top - 6 << "\" x2=\"" << x << "\" y2=\""
        << row_y(plan.robot_count) << "\" stroke=\"#cccccc\"/>\n";
    out << "  <text x=\"" << x + 2 << "\" y=\"" << top - 10 << "\">" << t << "</text>\n";
  }

  for (const Placement& p : plan.placements) {
    const double x = left + p.start * px_per_s;
    const double w = (p.placed_at - p.start) * px_per_s;
    out << "  <rect x=\"" << x << "\" y=\"" << row_y(p.robot) << "\" width=\"" << w
        << "\" height=\"" << row_height
        << "\" fill=\"#7fbf7f\" stroke=\"#2d5d2d\"/>\n";
    out << "  <text x=\"" << x + 4 << "\" y=\"" << row_y(p.robot) + row_height - 8 << "\">"
        << p.brick << "</text>\n";
  }
  for (const SwapEvent& s : plan.swaps) {
    const double x = left + s.start * px_per_s;
    const double w = (s.end - s.start) * px_per_s;
    out << "  <rect x=\"" << x << "\" y=\"" << row_y(s.robot) << "\" width=\"" << w
        << "\" height=\"" << row_height
        << "\" fill=\"#e0a050\" stroke=\"#7a4a10\"/>\n";
    out << "  <text x=\"" << x + 4 << "\" y=\"" << row_y(s.robot) + row_height - 8
        << "\">swap</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace

std::string render_gantt(const Plan& plan, GanttFormat format) {
  return format == GanttFormat::Text ? render_text(plan) : render_svg(plan);
}

}  // namespace wallplan
