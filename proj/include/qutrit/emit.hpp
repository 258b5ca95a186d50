#ifndef QUTRIT_EMIT_HPP
#define QUTRIT_EMIT_HPP

// CSV and SVG writers for sweep results. CSV output is byte-stable: shortest
// round-trip numbers, '.' decimal separator, '\n' line endings, fixed header.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qutrit/errors.hpp"
#include "qutrit/format.hpp"
#include "qutrit/presets.hpp"
#include "qutrit/sweep.hpp"

namespace qutrit {

inline constexpr std::string_view kCsvHeader =
    "grid_param,grid_value,T,B,Dz,R,gamma,J,r,theta,Z,ground_energy,negativity";

/// One CSV line (no newline). R is empty when J is overridden, Z is empty at
/// T = 0 or when it overflows.
inline std::string csv_row(const SweepRow& row) {
  const auto f = format_number;
  std::string out;
  out.reserve(256);
  out += row.grid_param;
  out += ',';
  out += row.grid_param == "point" ? std::string() : f(row.grid_value);
  for (const std::string& field :
       {f(row.T), f(row.params.B), f(row.params.Dz), row.params.j_override ? std::string() : f(row.params.R),
        f(row.params.gamma), f(row.J), f(row.r), f(row.theta), row.Z ? f(*row.Z) : std::string(),
        f(row.ground_energy), f(row.negativity)}) {
    out += ',';
    out += field;
  }
  return out;
}

inline void write_csv(std::ostream& os, std::span<const SweepResult> results) {
  os << kCsvHeader << '\n';
  for (const SweepResult& r : results)
    for (const SweepRow& row : r.rows) os << csv_row(row) << '\n';
}

namespace detail {

inline std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

inline void finish_output(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace detail

inline void emit_csv(std::span<const SweepResult> results, const std::filesystem::path& path) {
  std::ofstream out = detail::open_output(path);
  write_csv(out, results);
  detail::finish_output(out, path);
}

inline void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  emit_csv(std::span<const SweepResult>(&result, 1), path);
}

inline void emit_csv(const FigureSet& set, const std::filesystem::path& path) { emit_csv(set.curves, path); }

/// Numeric value of a named CSV column; throws for non-numeric columns.
inline double row_value(const SweepRow& row, std::string_view column) {
  if (column == "grid_value") return row.grid_value;
  if (column == "T") return row.T;
  if (column == "B") return row.params.B;
  if (column == "Dz") return row.params.Dz;
  if (column == "R") return row.params.R;
  if (column == "gamma") return row.params.gamma;
  if (column == "J") return row.J;
  if (column == "r") return row.r;
  if (column == "theta") return row.theta;
  if (column == "Z") return row.Z.value_or(std::nan(""));
  if (column == "ground_energy") return row.ground_energy;
  if (column == "negativity") return row.negativity;
  throw InvalidArgument("unknown column '" + std::string(column) + "'");
}

namespace detail {

inline std::string svg_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

inline std::string fixed2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

inline std::string tick_label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", std::abs(x) < 1e-12 ? 0.0 : x);
  return buf;
}

}  // namespace detail

/// Line chart of `y_column` against the grid value, one polyline per curve.
inline std::string render_svg(const FigureSet& set, std::string_view y_column = {}) {
  const std::string y_name = y_column.empty() ? set.y_column : std::string(y_column);
  constexpr double width = 800, height = 500;
  constexpr double left = 80, right = 170, top = 50, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double xmin = INFINITY, xmax = -INFINITY, ymin = 0.0, ymax = -INFINITY;
  for (const SweepResult& c : set.curves)
    for (const SweepRow& row : c.rows) {
      const double y = row_value(row, y_name);
      xmin = std::min(xmin, row.grid_value);
      xmax = std::max(xmax, row.grid_value);
      if (std::isfinite(y)) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
    }
  if (!std::isfinite(xmin)) xmin = 0.0;  // no rows at all
  if (!(xmax > xmin)) xmax = xmin + 1.0;
  if (!(ymax > ymin)) ymax = ymin + 1.0;

  auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * plot_w; };
  auto py = [&](double y) { return top + plot_h - (y - ymin) / (ymax - ymin) * plot_h; };

  static constexpr std::string_view palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                                 "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
  const std::string x_name = set.curves.empty() ? "x" : set.curves.front().rows.empty()
                                                            ? "x"
                                                            : set.curves.front().rows.front().grid_param;

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << left << "\" y=\"25\" font-size=\"14\">" << detail::svg_escape(set.title) << "</text>\n";
  os << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\"" << plot_h
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 4; ++i) {
    const double xv = xmin + (xmax - xmin) * i / 4.0;
    const double yv = ymin + (ymax - ymin) * i / 4.0;
    os << "<text x=\"" << detail::fixed2(px(xv)) << "\" y=\"" << detail::fixed2(top + plot_h + 18)
       << "\" text-anchor=\"middle\">" << detail::tick_label(xv) << "</text>\n";
    os << "<text x=\"" << detail::fixed2(left - 8) << "\" y=\"" << detail::fixed2(py(yv) + 4)
       << "\" text-anchor=\"end\">" << detail::tick_label(yv) << "</text>\n";
  }
  os << "<text x=\"" << detail::fixed2(left + plot_w / 2) << "\" y=\"" << detail::fixed2(height - 15)
     << "\" text-anchor=\"middle\">" << detail::svg_escape(x_name) << "</text>\n";
  os << "<text x=\"20\" y=\"" << detail::fixed2(top + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 20 "
     << detail::fixed2(top + plot_h / 2) << ")\">" << detail::svg_escape(y_name) << "</text>\n";

  for (std::size_t c = 0; c < set.curves.size(); ++c) {
    const std::string_view color = palette[c % std::size(palette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const SweepRow& row : set.curves[c].rows) {
      const double y = row_value(row, y_name);
      if (!std::isfinite(y)) continue;
      if (!first) os << ' ';
      os << detail::fixed2(px(row.grid_value)) << ',' << detail::fixed2(py(y));
      first = false;
    }
    os << "\"/>\n";
    const double ly = top + 15 + 18.0 * static_cast<double>(c);
    os << "<line x1=\"" << detail::fixed2(left + plot_w + 15) << "\" y1=\"" << detail::fixed2(ly) << "\" x2=\""
       << detail::fixed2(left + plot_w + 40) << "\" y2=\"" << detail::fixed2(ly) << "\" stroke=\"" << color
       << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << detail::fixed2(left + plot_w + 45) << "\" y=\"" << detail::fixed2(ly + 4) << "\">"
       << detail::svg_escape(set.curves[c].label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline void emit_svg(const FigureSet& set, const std::filesystem::path& path, std::string_view y_column = {}) {
  std::ofstream out = detail::open_output(path);
  out << render_svg(set, y_column);
  detail::finish_output(out, path);
}

}  // namespace qutrit

#endif  // QUTRIT_EMIT_HPP
