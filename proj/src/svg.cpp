#include "scatterlab/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace scatterlab::svg {
namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
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

std::string num(double v) { return fmt::format("{:.2f}", v); }

struct Rgb {
  double r, g, b;
};

std::string hex(Rgb c) {
  auto q = [](double v) { return static_cast<int>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0)); };
  return fmt::format("#{:02x}{:02x}{:02x}", q(c.r), q(c.g), q(c.b));
}

Rgb lerp(Rgb a, Rgb b, double t) { return {a.r + (b.r - a.r) * t, a.g + (b.g - a.g) * t, a.b + (b.b - a.b) * t}; }

template <std::size_t N>
std::string ramp(const std::array<Rgb, N>& stops, double t) {
  if (!std::isfinite(t)) t = 0.0;
  t = std::clamp(t, 0.0, 1.0) * static_cast<double>(N - 1);
  const auto i = std::min(static_cast<std::size_t>(t), N - 2);
  return hex(lerp(stops[i], stops[i + 1], t - static_cast<double>(i)));
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    } else if (lo == hi) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  double norm(double v) const { return (v - lo) / (hi - lo); }
};

}  // namespace

Document::Document(double width, double height) : width_(width), height_(height) {}

void Document::rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke) {
  body_ += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\" stroke=\"{}\"/>\n", num(x),
                       num(y), num(w), num(h), fill, stroke);
}

void Document::line(double x1, double y1, double x2, double y2, const std::string& stroke, double width) {
  body_ += fmt::format("<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{}\" stroke-width=\"{}\"/>\n", num(x1),
                       num(y1), num(x2), num(y2), stroke, num(width));
}

void Document::polyline(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& stroke,
                        double width) {
  std::string pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
    if (!pts.empty()) pts += ' ';
    pts += num(xs[i]) + "," + num(ys[i]);
  }
  body_ += fmt::format("<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"{}\"/>\n", pts, stroke,
                       num(width));
}

void Document::circle(double cx, double cy, double r, const std::string& fill) {
  body_ += fmt::format("<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{}\" stroke=\"#333333\" stroke-width=\"0.3\"/>\n",
                       num(cx), num(cy), num(r), fill);
}

void Document::text(double x, double y, const std::string& content, double size, const std::string& anchor,
                    double rotate) {
  std::string transform;
  if (rotate != 0.0) transform = fmt::format(" transform=\"rotate({} {} {})\"", num(rotate), num(x), num(y));
  body_ += fmt::format(
      "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"{}\" text-anchor=\"{}\"{}>{}</text>\n", num(x),
      num(y), num(size), anchor, transform, escape(content));
}

std::string Document::str() const {
  return fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
      num(width_), num(height_), num(width_), num(height_), body_);
}

std::string sequential_color(double t) {
  static constexpr std::array<Rgb, 5> stops{{{0.267, 0.005, 0.329},
                                             {0.230, 0.322, 0.546},
                                             {0.128, 0.567, 0.551},
                                             {0.369, 0.789, 0.383},
                                             {0.993, 0.906, 0.144}}};
  return ramp(stops, t);
}

std::string diverging_color(double t) {
  static constexpr std::array<Rgb, 3> stops{{{0.80, 0.10, 0.10}, {1.0, 1.0, 1.0}, {0.10, 0.25, 0.80}}};
  return ramp(stops, t);
}

std::string categorical_color(std::size_t i) {
  static constexpr std::array<const char*, 10> palette{"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                                       "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[i % palette.size()];
}

std::string render(const LinePlot& plot) {
  const double w = 640;
  const double h = 420;
  const double left = 70;
  const double right = 150;
  const double top = 40;
  const double bottom = 50;
  Document doc(w, h);
  doc.text(w / 2, 22, plot.title, 14, "middle");

  auto ty = [&](double v) { return plot.log_y ? (v > 0 ? std::log10(v) : std::numeric_limits<double>::quiet_NaN()) : v; };
  Range xr;
  Range yr;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      const double yv = ty(s.y[i]);
      if (!std::isfinite(yv)) continue;
      xr.add(s.x[i]);
      yr.add(yv);
    }
  }
  xr.pad();
  yr.pad();
  const double pw = w - left - right;
  const double ph = h - top - bottom;
  auto px = [&](double v) { return left + xr.norm(v) * pw; };
  auto py = [&](double v) { return top + (1.0 - yr.norm(v)) * ph; };

  doc.rect(left, top, pw, ph, "none", "#000000");
  for (int i = 0; i <= 4; ++i) {
    const double xv = xr.lo + (xr.hi - xr.lo) * i / 4.0;
    const double yv = yr.lo + (yr.hi - yr.lo) * i / 4.0;
    doc.text(px(xv), top + ph + 16, fmt::format("{:.3g}", xv), 10, "middle");
    doc.text(left - 6, py(yv) + 4, plot.log_y ? fmt::format("1e{:.1f}", yv) : fmt::format("{:.3g}", yv), 10, "end");
  }
  doc.text(left + pw / 2, h - 10, plot.x_label, 12, "middle");
  doc.text(16, top + ph / 2, plot.y_label, 12, "middle", -90);

  for (std::size_t s = 0; s < plot.series.size(); ++s) {
    const auto& series = plot.series[s];
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t i = 0; i < series.x.size(); ++i) {
      const double yv = ty(series.y[i]);
      if (!std::isfinite(yv)) continue;
      xs.push_back(px(series.x[i]));
      ys.push_back(py(yv));
    }
    doc.polyline(xs, ys, categorical_color(s));
    const double ly = top + 14.0 * static_cast<double>(s) + 8;
    doc.line(w - right + 10, ly, w - right + 30, ly, categorical_color(s), 2);
    doc.text(w - right + 34, ly + 4, series.label, 10);
  }
  return doc.str();
}

std::string render(const HeatmapGrid& grid) {
  const std::size_t cols = std::max<std::size_t>(1, std::min<std::size_t>(3, grid.panels.size()));
  const std::size_t rows = (grid.panels.size() + cols - 1) / cols;
  const double cell = 220;
  const double margin = 60;
  const double w = margin + static_cast<double>(cols) * (cell + margin);
  const double h = 50 + static_cast<double>(rows) * (cell + margin) + 30;
  Document doc(w, h);
  doc.text(w / 2, 22, grid.title, 14, "middle");

  for (std::size_t p = 0; p < grid.panels.size(); ++p) {
    const auto& panel = grid.panels[p];
    const double ox = margin + static_cast<double>(p % cols) * (cell + margin);
    const double oy = 50 + static_cast<double>(p / cols) * (cell + margin);
    const std::size_t ny = panel.values.size();
    const std::size_t nx = ny ? panel.values.front().size() : 0;
    if (nx == 0) continue;
    const double cw = cell / static_cast<double>(nx);
    const double ch = cell / static_cast<double>(ny);
    for (std::size_t r = 0; r < ny; ++r) {
      for (std::size_t c = 0; c < nx; ++c) {
        const double v = panel.values[r][c];
        if (!std::isfinite(v)) continue;
        // Row 0 at the bottom.
        doc.rect(ox + static_cast<double>(c) * cw, oy + cell - static_cast<double>(r + 1) * ch, cw + 0.05, ch + 0.05,
                 sequential_color(grid.vmax > 0 ? v / grid.vmax : 0.0));
      }
    }
    doc.rect(ox, oy, cell, cell, "none", "#000000");
    doc.text(ox + cell / 2, oy - 6, panel.title, 11, "middle");
    if (!panel.x.empty()) {
      doc.text(ox, oy + cell + 14, fmt::format("{:.2g}", panel.x.front()), 9, "start");
      doc.text(ox + cell, oy + cell + 14, fmt::format("{:.2g}", panel.x.back()), 9, "end");
    }
    if (!panel.y.empty()) {
      doc.text(ox - 4, oy + cell, fmt::format("{:.2g}", panel.y.front()), 9, "end");
      doc.text(ox - 4, oy + 9, fmt::format("{:.2g}", panel.y.back()), 9, "end");
    }
    doc.text(ox + cell / 2, oy + cell + 28, grid.x_label, 10, "middle");
    doc.text(ox - 30, oy + cell / 2, grid.y_label, 10, "middle", -90);
  }
  return doc.str();
}

std::string render(const ScatterGrid& grid) {
  const double cell = 260;
  const double margin = 30;
  const std::size_t cols = std::max<std::size_t>(1, std::min<std::size_t>(3, grid.panels.size()));
  const std::size_t rows = (grid.panels.size() + cols - 1) / cols;
  const double w = margin + static_cast<double>(cols) * (cell + margin);
  const double h = 50 + static_cast<double>(rows) * (cell + margin + 10);
  Document doc(w, h);
  doc.text(w / 2, 22, grid.title, 14, "middle");
  for (std::size_t p = 0; p < grid.panels.size(); ++p) {
    const auto& panel = grid.panels[p];
    const double ox = margin + static_cast<double>(p % cols) * (cell + margin);
    const double oy = 50 + static_cast<double>(p / cols) * (cell + margin + 10);
    Range xr;
    Range yr;
    Range cr;
    for (std::size_t i = 0; i < panel.x.size(); ++i) {
      xr.add(panel.x[i]);
      yr.add(panel.y[i]);
      cr.add(panel.color[i]);
    }
    xr.pad();
    yr.pad();
    cr.pad();
    doc.rect(ox, oy, cell, cell, "none", "#000000");
    doc.text(ox + cell / 2, oy - 6, panel.title, 11, "middle");
    for (std::size_t i = 0; i < panel.x.size(); ++i) {
      doc.circle(ox + 5 + xr.norm(panel.x[i]) * (cell - 10), oy + 5 + (1.0 - yr.norm(panel.y[i])) * (cell - 10), 2.5,
                 diverging_color(cr.norm(panel.color[i])));
    }
  }
  return doc.str();
}

}  // namespace scatterlab::svg
