#include "svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

namespace workwell::cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 420.0;

const char* kArmPalette[] = {"#4878a8", "#e49444", "#6a9f58", "#d1605e",
                             "#855c97", "#8c8c8c", "#c7ab60", "#76b7b2"};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string svg_open() {
    return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
           num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
}

std::string rect(double x, double y, double w, double h, const std::string& fill) {
    return "  <rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(w) + "\" height=\"" +
           num(h) + "\" fill=\"" + fill + "\"/>\n";
}

std::string text(double x, double y, const std::string& content, int size = 11,
                 const std::string& anchor = "start") {
    return "  <text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"monospace\" font-size=\"" +
           std::to_string(size) + "\" text-anchor=\"" + anchor + "\">" + content + "</text>\n";
}

std::string line(double x1, double y1, double x2, double y2, const std::string& stroke) {
    return "  <line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" +
           num(y2) + "\" stroke=\"" + stroke + "\" stroke-width=\"1\"/>\n";
}

// Linear white -> steel-blue ramp.
std::string heat_color(double t) {
    t = std::clamp(t, 0.0, 1.0);
    int r = static_cast<int>(std::lround(255.0 + t * (72.0 - 255.0)));
    int g = static_cast<int>(std::lround(255.0 + t * (120.0 - 255.0)));
    int b = static_cast<int>(std::lround(255.0 + t * (168.0 - 255.0)));
    char buf[10];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string action_label(int a) {
    if (a < kTaskCategoryCount) return std::string(to_string(static_cast<TaskCategory>(a)));
    return "break";
}

} // namespace

std::string render_qvalues_svg(const QTable& table, const std::string& arm_name) {
    std::string svg = svg_open();
    svg += rect(0, 0, kWidth, kHeight, "#ffffff");
    svg += text(20, 24, "final action values (arm: " + arm_name + ")", 14);

    double lo = table.at(0, 0), hi = table.at(0, 0);
    for (int s = 0; s < table.state_count(); ++s) {
        for (int a = 0; a < table.action_count(); ++a) {
            lo = std::min(lo, table.at(s, a));
            hi = std::max(hi, table.at(s, a));
        }
    }
    const double left = 120.0, top = 60.0;
    const double cw = (kWidth - left - 40.0) / table.action_count();
    const double ch = (kHeight - top - 60.0) / table.state_count();
    for (int s = 0; s < table.state_count(); ++s) {
        svg += text(left - 8, top + s * ch + ch / 2 + 4, "s" + std::to_string(s), 11, "end");
        for (int a = 0; a < table.action_count(); ++a) {
            double t = hi > lo ? (table.at(s, a) - lo) / (hi - lo) : 0.5;
            svg += rect(left + a * cw, top + s * ch, cw - 1.0, ch - 1.0, heat_color(t));
        }
    }
    for (int a = 0; a < table.action_count(); ++a) {
        svg += text(left + a * cw + cw / 2, kHeight - 34, action_label(a), 10, "middle");
    }
    svg += text(20, kHeight - 10,
                "q range [" + num(lo) + ", " + num(hi) + "], rows = states, columns = actions", 10);
    svg += "</svg>\n";
    return svg;
}

std::string render_groups_svg(const MetricsReport& report) {
    std::string svg = svg_open();
    svg += rect(0, 0, kWidth, kHeight, "#ffffff");
    svg += text(20, 24, "mean final productivity per group", 14);

    double max_value = 5.0;
    for (const auto& g : report.per_group) {
        for (double v : g.arm_mean_final) max_value = std::max(max_value, v);
    }
    const double left = 60.0, top = 50.0, bottom = kHeight - 70.0;
    const double span = bottom - top;
    const std::size_t arm_count = report.arms.size();

    for (int grid = 0; grid <= 5; ++grid) {
        double v = max_value * grid / 5.0;
        double y = bottom - span * grid / 5.0;
        svg += line(left, y, kWidth - 30.0, y, "#dddddd");
        svg += text(left - 6, y + 4, num(v), 10, "end");
    }

    const double group_w = (kWidth - left - 30.0) / std::max<std::size_t>(1, report.per_group.size());
    for (std::size_t gi = 0; gi < report.per_group.size(); ++gi) {
        const auto& g = report.per_group[gi];
        double x0 = left + gi * group_w;
        double bar_w = group_w * 0.8 / std::max<std::size_t>(1, arm_count);
        for (std::size_t a = 0; a < g.arm_mean_final.size(); ++a) {
            double h = span * (g.arm_mean_final[a] / max_value);
            svg += rect(x0 + group_w * 0.1 + a * bar_w, bottom - h, bar_w - 1.0, h,
                        kArmPalette[a % 8]);
        }
        svg += text(x0 + group_w / 2, bottom + 16, std::string(to_string(g.group)), 11, "middle");
    }

    double lx = left;
    for (std::size_t a = 0; a < arm_count; ++a) {
        svg += rect(lx, kHeight - 34, 10, 10, kArmPalette[a % 8]);
        svg += text(lx + 14, kHeight - 25, report.arms[a].name, 10);
        lx += 24 + 7.0 * report.arms[a].name.size();
    }
    svg += "</svg>\n";
    return svg;
}

std::string render_interventions_svg(const std::vector<LogRow>& log,
                                     const std::vector<ArmConfig>& arms, std::int64_t ticks) {
    std::string svg = svg_open();
    svg += rect(0, 0, kWidth, kHeight, "#ffffff");
    svg += text(20, 24, "interventions delivered over time", 14);

    // Bucketed counts per content id, summed over arms.
    const std::int64_t buckets = std::max<std::int64_t>(1, std::min<std::int64_t>(ticks, 60));
    std::map<ContentId, std::vector<double>> counts;
    std::int64_t total = 0;
    for (const auto& r : log) {
        if (r.content_id == ContentId::None) continue;
        auto& series = counts[r.content_id];
        if (series.empty()) series.assign(static_cast<std::size_t>(buckets), 0.0);
        std::int64_t b = std::min(buckets - 1, r.tick * buckets / std::max<std::int64_t>(1, ticks));
        series[static_cast<std::size_t>(b)] += 1.0;
        ++total;
    }
    if (total == 0) {
        svg += text(kWidth / 2, kHeight / 2, "no interventions", 18, "middle");
        svg += "</svg>\n";
        return svg;
    }

    double max_count = 1.0;
    for (const auto& [content, series] : counts) {
        for (double v : series) max_count = std::max(max_count, v);
    }
    const double left = 60.0, top = 50.0, bottom = kHeight - 70.0, right = kWidth - 30.0;
    const double span = bottom - top;
    for (int grid = 0; grid <= 4; ++grid) {
        double y = bottom - span * grid / 4.0;
        svg += line(left, y, right, y, "#dddddd");
        svg += text(left - 6, y + 4, num(max_count * grid / 4.0), 10, "end");
    }
    svg += text((left + right) / 2, kHeight - 44,
                "tick buckets (" + std::to_string(buckets) + " over " + std::to_string(ticks) +
                    " ticks, " + std::to_string(arms.size()) + " arms)",
                10, "middle");

    int color_index = 0;
    double lx = left;
    for (const auto& [content, series] : counts) {
        std::string color = kArmPalette[color_index % 8];
        std::string points;
        for (std::int64_t b = 0; b < buckets; ++b) {
            double x = left + (right - left) * (buckets == 1 ? 0.5 : b / double(buckets - 1));
            double y = bottom - span * (series[static_cast<std::size_t>(b)] / max_count);
            points += num(x) + "," + num(y) + " ";
        }
        svg += "  <polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\" points=\"" +
               points + "\"/>\n";
        svg += rect(lx, kHeight - 34, 10, 10, color);
        svg += text(lx + 14, kHeight - 25, std::string(to_string(content)), 10);
        lx += 24 + 7.0 * to_string(content).size();
        ++color_index;
    }
    svg += "</svg>\n";
    return svg;
}

} // namespace workwell::cli
