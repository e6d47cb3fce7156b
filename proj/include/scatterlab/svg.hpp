#pragma once

#include <string>
#include <vector>

namespace scatterlab::svg {

/// Minimal SVG builder. Coordinates are in user units, origin top-left.
class Document {
 public:
  Document(double width, double height);

  void rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke = "none");
  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0);
  void polyline(const std::vector<double>& xs, const std::vector<double>& ys, const std::string& stroke,
                double width = 1.5);
  void circle(double cx, double cy, double r, const std::string& fill);
  void text(double x, double y, const std::string& content, double size = 12.0, const std::string& anchor = "start",
            double rotate = 0.0);

  std::string str() const;

 private:
  double width_;
  double height_;
  std::string body_;
};

// t in [0, 1] -> "#rrggbb".
std::string sequential_color(double t);
// Red (0) -> white (0.5) -> blue (1).
std::string diverging_color(double t);
std::string categorical_color(std::size_t i);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;
  std::vector<Series> series;
};

std::string render(const LinePlot& plot);

struct HeatmapPanel {
  std::string title;
  std::vector<double> x;  // column coordinates (drawn on a log axis)
  std::vector<double> y;  // row coordinates (drawn on a log axis)
  std::vector<std::vector<double>> values;  // values[row][col]; NaN cells are left blank
};

struct HeatmapGrid {
  std::string title;
  std::string x_label;
  std::string y_label;
  double vmax = 1.0;  // shared colour scale upper bound
  std::vector<HeatmapPanel> panels;
};

std::string render(const HeatmapGrid& grid);

struct ScatterPanel {
  std::string title;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> color;  // arbitrary scale, normalized per panel
};

struct ScatterGrid {
  std::string title;
  std::vector<ScatterPanel> panels;
};

std::string render(const ScatterGrid& grid);

}  // namespace scatterlab::svg
