#pragma once

#include <functional>
#include <vector>

#include "cli/svg.hpp"

namespace supint::cli {

/// Samples f on the node grid x_i = x0 + i dx, y_j = y0 + j dy.
struct Grid {
  double x0 = 0.0, dx = 1.0;
  double y0 = 0.0, dy = 1.0;
  int nx = 0, ny = 0;
  std::vector<double> values;  // row-major in j, NaN marks undefined nodes

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * nx + i]; }
  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
};

Grid sample_grid(const std::function<double(double x, double y)>& f, double x0, double x1, int nx, double y0,
                 double y1, int ny);

using Segment = std::pair<Point2, Point2>;

/// Marching squares at `level`. Cells touching a NaN node are skipped. When
/// `refine` is given, each crossing on a cell edge is polished by bisection on
/// refine(x, y) - level to `tol` along that edge.
std::vector<Segment> marching_squares(const Grid& g, double level,
                                      const std::function<double(double x, double y)>& refine = {},
                                      double tol = 1e-13);

/// Joins segments sharing endpoints (within `eps`) into polylines.
std::vector<std::vector<Point2>> join_segments(const std::vector<Segment>& segs, double eps = 1e-9);

}  // namespace supint::cli
