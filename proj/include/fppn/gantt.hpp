#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fppn/schedule.hpp"

namespace fppn {

namespace detail {

inline std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

/// Tick step in us: the smallest 1, 2 or 5 times a power of ten milliseconds
/// that needs at most 12 ticks over the span.
inline time_us tick_step(time_us span) {
  time_us scale = 1000;
  while (true) {
    for (time_us factor : {1, 2, 5}) {
      const time_us step = factor * scale;
      if (span / step <= 12) return step;
    }
    scale *= 10;
  }
}

}  // namespace detail

/// Deterministic SVG Gantt chart of a schedule table: one lane per core with
/// the engine core on top, compute blocks in full color, engine transitions
/// in the owning job's color at reduced opacity. Fills come from one style
/// class per process, so a reader can restyle by process id. All geometry is
/// integer. A table with no cores renders the axis alone.
inline std::string gantt_svg(const ScheduleTable& table,
                             const std::string& title = "schedule") {
  static const char* const palette[] = {
      "#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
      "#edc949", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};
  constexpr int palette_size = 10;

  const int margin_left = 110;
  const int margin_right = 30;
  const int margin_top = 56;
  const int chart_w = 900;
  const int lane_h = 34;
  const int bar_h = 22;
  const int axis_h = 34;

  const time_us span = std::max<time_us>(table.makespan(), 1);
  const int lanes = std::max(table.core_count, 0);
  const int width = margin_left + chart_w + margin_right;
  const int height = margin_top + lanes * lane_h + axis_h;

  auto x_of = [&](time_us t) {
    return margin_left + static_cast<int>(t * chart_w / span);
  };
  auto lane_y = [&](int core) { return margin_top + core * lane_h; };

  std::set<std::string> names;
  for (const auto& e : table.entries) names.insert(e.process);
  std::map<std::string, const char*> color;
  int idx = 0;
  for (const auto& name : names) color[name] = palette[idx++ % palette_size];

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "<style>\n";
  out << "rect.entry { stroke: #303030; stroke-width: 1; }\n";
  out << "rect.transition { fill-opacity: 0.45; stroke-dasharray: 2,2; }\n";
  for (const auto& name : names) {
    out << ".proc-" << name << " { fill: " << color[name] << "; }\n";
  }
  out << "</style>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  out << "<text x=\"" << margin_left << "\" y=\"22\" font-family=\"sans-serif\""
      << " font-size=\"15\" font-weight=\"bold\" fill=\"#202020\">"
      << detail::xml_escape(title) << "</text>\n";

  std::string subtitle = std::to_string(table.core_count) +
                         (table.core_count == 1 ? " core" : " cores") +
                         ", delta " + format_ms(table.delta) + " ms, " +
                         (table.verdict.feasible ? "feasible" : "infeasible");
  if (!table.verdict.reason.empty()) {
    subtitle += ": " + table.verdict.reason;
  }
  out << "<text x=\"" << margin_left << "\" y=\"40\" font-family=\"sans-serif\""
      << " font-size=\"12\" fill=\"#606060\">" << detail::xml_escape(subtitle)
      << "</text>\n";

  for (int core = 0; core < lanes; ++core) {
    const int y = lane_y(core);
    out << "<rect x=\"" << margin_left << "\" y=\"" << y << "\" width=\""
        << chart_w << "\" height=\"" << lane_h << "\" fill=\""
        << (core % 2 == 0 ? "#f7f7f7" : "#efefef") << "\"/>\n";
    std::string label = "core " + std::to_string(core);
    if (table.core_count > 1 && core == 0) label += " (engine)";
    out << "<text x=\"" << (margin_left - 8) << "\" y=\""
        << (y + lane_h / 2 + 4) << "\" font-family=\"sans-serif\""
        << " font-size=\"12\" fill=\"#202020\" text-anchor=\"end\">" << label
        << "</text>\n";
  }

  const time_us step = detail::tick_step(span);
  for (time_us t = 0; t <= span; t += step) {
    const int x = x_of(t);
    out << "<line x1=\"" << x << "\" y1=\"" << margin_top << "\" x2=\"" << x
        << "\" y2=\"" << (margin_top + lanes * lane_h)
        << "\" stroke=\"#c0c0c0\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << (margin_top + lanes * lane_h + 16)
        << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#404040\""
        << " text-anchor=\"middle\">" << format_ms(t) << "</text>\n";
  }
  out << "<text x=\"" << (margin_left + chart_w) << "\" y=\""
      << (margin_top + lanes * lane_h + 30)
      << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#404040\""
      << " text-anchor=\"end\">time (ms)</text>\n";

  for (const auto& e : table.entries) {
    const int x = x_of(e.start);
    const int w = std::max(x_of(e.end()) - x, 1);
    const int y = lane_y(e.core) + (lane_h - bar_h) / 2;
    const std::string label =
        e.process + "[" + std::to_string(e.k) + "]";
    if (e.kind == EntryKind::compute) {
      out << "<rect class=\"entry proc-" << e.process << "\" x=\"" << x
          << "\" y=\"" << y << "\" width=\"" << w << "\" height=\"" << bar_h
          << "\"/>\n";
      if (w >= 34) {
        out << "<text x=\"" << (x + w / 2) << "\" y=\"" << (y + bar_h / 2 + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#ffffff\""
            << " text-anchor=\"middle\">" << detail::xml_escape(label)
            << "</text>\n";
      }
    } else {
      out << "<rect class=\"entry transition proc-" << e.process << "\" x=\""
          << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
          << bar_h << "\"/>\n";
    }
  }

  out << "</svg>\n";
  return out.str();
}

}  // namespace fppn
