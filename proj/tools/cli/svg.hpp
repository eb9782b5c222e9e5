#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace supint::cli {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Minimal SVG 1.1 plot: a data rectangle mapped onto the canvas, point sets,
/// polylines and axis labels. Output is byte-deterministic.
class SvgPlot {
 public:
  SvgPlot(int width, int height, double xmin, double xmax, double ymin, double ymax);

  void set_title(std::string title) { title_ = std::move(title); }
  void set_labels(std::string x, std::string y) {
    xlabel_ = std::move(x);
    ylabel_ = std::move(y);
  }
  void add_points(const std::vector<Point2>& pts, const std::string& color, double radius = 1.2,
                  const std::string& legend = "");
  void add_polyline(const std::vector<Point2>& pts, const std::string& color, double width = 1.0);
  /// Free-form comment placed in the document head (seed, config).
  void add_comment(const std::string& text) { comments_.push_back(text); }

  void write(std::ostream& os) const;
  std::string str() const;

 private:
  struct Layer {
    bool points = true;
    std::vector<Point2> pts;
    std::string color;
    double size = 1.0;
  };

  double px(double x) const;
  double py(double y) const;

  int width_;
  int height_;
  double xmin_, xmax_, ymin_, ymax_;
  std::string title_, xlabel_, ylabel_;
  std::vector<Layer> layers_;
  std::vector<std::pair<std::string, std::string>> legend_;
  std::vector<std::string> comments_;
};

/// Escapes &, <, >, " for text nodes and attributes.
std::string xml_escape(const std::string& s);

/// Distinct colors for point families.
const std::vector<std::string>& set_palette();

}  // namespace supint::cli
