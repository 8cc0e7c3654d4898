#pragma once

// Static SVG emission for the two aggregate charts. No plotting dependency:
// hand-written markup keeps the byte output reproducible for identical input.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "divlab/experiments.hpp"

namespace divlab::svg {

enum class FigureKind {
  kFigure1,  // delta_R, delta_W, d_R, d_W vs N, log-scaled x
  kFigure2,  // d_W vs N, linear axes
};

namespace detail {

struct Series {
  const char* label;
  const char* color;
  const std::vector<double>* values;
};

inline std::string fmt(double v, const char* spec = "%.2f") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

inline std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace detail

/// Renders the aggregates as a standalone SVG document. figure1 draws the
/// four cumulative series against N on a log-scaled x axis; figure2 draws
/// d_W alone on linear axes. Header-only input (no checkpoints) yields axes
/// and legend with zero polylines.
inline std::string render_svg(const experiments::AggregateSeries& agg, FigureKind kind) {
  constexpr double kWidth = 800.0, kHeight = 520.0;
  constexpr double kLeft = 80.0, kRight = 770.0, kTop = 50.0, kBottom = 450.0;

  const bool log_x = kind == FigureKind::kFigure1;
  std::vector<detail::Series> series;
  if (kind == FigureKind::kFigure1) {
    series = {{"Δ_R", "#1f77b4", &agg.delta_r},
              {"Δ_W", "#d62728", &agg.delta_w},
              {"d_R", "#2ca02c", &agg.d_r},
              {"d_W", "#ff7f0e", &agg.d_w}};
  } else {
    series = {{"d_W", "#ff7f0e", &agg.d_w}};
  }

  const std::size_t points = agg.checkpoints.size();
  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  if (points > 0) {
    x_min = log_x ? std::log10(static_cast<double>(agg.checkpoints.front()))
                  : static_cast<double>(agg.checkpoints.front());
    x_max = log_x ? std::log10(static_cast<double>(agg.checkpoints.back()))
                  : static_cast<double>(agg.checkpoints.back());
    y_min = y_max = (*series[0].values)[0];
    for (const auto& s : series) {
      for (double v : *s.values) {
        y_min = std::min(y_min, v);
        y_max = std::max(y_max, v);
      }
    }
  }
  if (x_max - x_min < 1e-12) {
    x_min -= 0.5;
    x_max += 0.5;
  }
  if (y_max - y_min < 1e-12) {
    y_min -= 1.0;
    y_max += 1.0;
  }
  const double y_pad = 0.05 * (y_max - y_min);
  y_min -= y_pad;
  y_max += y_pad;

  const auto to_x = [&](double v) {
    return kLeft + (v - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  const auto to_y = [&](double v) {
    return kBottom - (v - y_min) / (y_max - y_min) * (kBottom - kTop);
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::fmt(kWidth, "%.0f") +
         "\" height=\"" + detail::fmt(kHeight, "%.0f") + "\" viewBox=\"0 0 " +
         detail::fmt(kWidth, "%.0f") + " " + detail::fmt(kHeight, "%.0f") + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + detail::fmt(kWidth, "%.0f") + "\" height=\"" +
         detail::fmt(kHeight, "%.0f") + "\" fill=\"#ffffff\"/>\n";

  const std::string title = kind == FigureKind::kFigure1
                                ? "Cumulative errors Δ_R, Δ_W, d_R, d_W"
                                : "Cumulative signed error d_W";
  out += "<text x=\"" + detail::fmt(kWidth / 2) +
         "\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" text-anchor=\"middle\">" +
         detail::xml_escape(title) + "</text>\n";

  // axes
  out += "<line x1=\"" + detail::fmt(kLeft) + "\" y1=\"" + detail::fmt(kBottom) + "\" x2=\"" +
         detail::fmt(kRight) + "\" y2=\"" + detail::fmt(kBottom) +
         "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  out += "<line x1=\"" + detail::fmt(kLeft) + "\" y1=\"" + detail::fmt(kTop) + "\" x2=\"" +
         detail::fmt(kLeft) + "\" y2=\"" + detail::fmt(kBottom) +
         "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";

  // y ticks and grid
  constexpr int kYTicks = 6;
  for (int i = 0; i <= kYTicks; ++i) {
    const double v = y_min + (y_max - y_min) * i / kYTicks;
    const double y = to_y(v);
    out += "<line x1=\"" + detail::fmt(kLeft - 4) + "\" y1=\"" + detail::fmt(y) + "\" x2=\"" +
           detail::fmt(kLeft) + "\" y2=\"" + detail::fmt(y) + "\" stroke=\"#000000\"/>\n";
    out += "<line x1=\"" + detail::fmt(kLeft) + "\" y1=\"" + detail::fmt(y) + "\" x2=\"" +
           detail::fmt(kRight) + "\" y2=\"" + detail::fmt(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"0.5\"/>\n";
    out += "<text x=\"" + detail::fmt(kLeft - 8) + "\" y=\"" + detail::fmt(y + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
           detail::fmt(v, "%.6g") + "</text>\n";
  }

  // x ticks at checkpoints (thinned when crowded)
  if (points > 0) {
    const std::size_t step = points <= 10 ? 1 : (points + 9) / 10;
    for (std::size_t i = 0; i < points; i += step) {
      const double v = log_x ? std::log10(static_cast<double>(agg.checkpoints[i]))
                             : static_cast<double>(agg.checkpoints[i]);
      const double x = to_x(v);
      out += "<line x1=\"" + detail::fmt(x) + "\" y1=\"" + detail::fmt(kBottom) + "\" x2=\"" +
             detail::fmt(x) + "\" y2=\"" + detail::fmt(kBottom + 4) + "\" stroke=\"#000000\"/>\n";
      out += "<text x=\"" + detail::fmt(x) + "\" y=\"" + detail::fmt(kBottom + 18) +
             "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
             std::to_string(agg.checkpoints[i]) + "</text>\n";
    }
  }
  out += "<text x=\"" + detail::fmt((kLeft + kRight) / 2) + "\" y=\"" +
         detail::fmt(kBottom + 40) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" +
         (log_x ? "N (log scale)" : "N") + "</text>\n";

  // data polylines
  if (points > 0) {
    for (const auto& s : series) {
      std::string pts;
      for (std::size_t i = 0; i < points; ++i) {
        const double v = log_x ? std::log10(static_cast<double>(agg.checkpoints[i]))
                               : static_cast<double>(agg.checkpoints[i]);
        if (!pts.empty()) pts += " ";
        pts += detail::fmt(to_x(v)) + "," + detail::fmt(to_y((*s.values)[i]));
      }
      out += "<polyline fill=\"none\" stroke=\"" + std::string(s.color) +
             "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    }
  }

  // legend (line swatches, not polylines, so the polyline count stays a
  // data-only invariant)
  {
    const double lx = kLeft + 14.0;
    double ly = kTop + 14.0;
    for (const auto& s : series) {
      out += "<line x1=\"" + detail::fmt(lx) + "\" y1=\"" + detail::fmt(ly) + "\" x2=\"" +
             detail::fmt(lx + 24) + "\" y2=\"" + detail::fmt(ly) + "\" stroke=\"" +
             std::string(s.color) + "\" stroke-width=\"2\"/>\n";
      out += "<text x=\"" + detail::fmt(lx + 30) + "\" y=\"" + detail::fmt(ly + 4) +
             "\" font-family=\"sans-serif\" font-size=\"12\">" + detail::xml_escape(s.label) +
             "</text>\n";
      ly += 18.0;
    }
  }

  out += "</svg>\n";
  return out;
}

/// Reads an aggregates CSV (reporting malformed rows with their line number)
/// and writes the rendered SVG to out_path.
inline void render_svg_file(const std::string& aggregates_csv, FigureKind kind,
                            const std::string& out_path) {
  const experiments::AggregateSeries agg = experiments::read_aggregates_csv(aggregates_csv);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  out << render_svg(agg, kind);
  out.close();
  if (!out) throw std::runtime_error("write failure on '" + out_path + "'");
}

}  // namespace divlab::svg
