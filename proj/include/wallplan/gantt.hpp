#pragma once

#include <string>

#include "wallplan/engine.hpp"

namespace wallplan {

enum class GanttFormat { Svg, Text };

/// Renders a plan as a Gantt chart: one row per robot, one bar per
/// placement labeled with its brick id, battery swaps drawn distinctly.
/// The text format uses a fixed 10-seconds-per-column scale; the SVG is
/// static markup. An empty plan yields a header-only chart.
std::string render_gantt(const Plan& plan, GanttFormat format);

}  // namespace wallplan
