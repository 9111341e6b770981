#pragma once

#include <string>
#include <vector>

#include "workwell/report.hpp"
#include "workwell/scheduler.hpp"

namespace workwell::cli {

// Static SVG renderers with fixed 800x420 canvases. Output is deterministic:
// coordinates are formatted with two decimals and colors from fixed palettes.

// Heatmap of a final Q-table (rows = states, columns = actions).
std::string render_qvalues_svg(const QTable& table, const std::string& arm_name);

// Grouped bars of per-group mean final productivity, one bar per arm.
std::string render_groups_svg(const MetricsReport& report);

// Intervention counts per content id over time (bucketed). An empty log
// renders an explicit "no interventions" label.
std::string render_interventions_svg(const std::vector<LogRow>& log,
                                     const std::vector<ArmConfig>& arms, std::int64_t ticks);

} // namespace workwell::cli
