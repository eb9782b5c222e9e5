#include "cli/contour.hpp"

#include <cmath>
#include <map>
#include <optional>

namespace supint::cli {

Grid sample_grid(const std::function<double(double, double)>& f, double x0, double x1, int nx, double y0, double y1,
                 int ny) {
  Grid g;
  g.nx = nx;
  g.ny = ny;
  g.x0 = x0;
  g.y0 = y0;
  g.dx = (x1 - x0) / (nx - 1);
  g.dy = (y1 - y0) / (ny - 1);
  g.values.resize(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) g.values[static_cast<std::size_t>(j) * nx + i] = f(g.x(i), g.y(j));
  }
  return g;
}

namespace {

Point2 edge_point(Point2 a, double fa, Point2 b, double fb, double level,
                  const std::function<double(double, double)>& refine, double tol) {
  double t = (level - fa) / (fb - fa);
  Point2 p{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
  if (!refine) return p;
  double lo = 0.0, hi = 1.0;
  const double ga = refine(a.x, a.y) - level;
  if (!std::isfinite(ga) || ga == 0.0) return ga == 0.0 ? a : p;
  const double len = std::hypot(b.x - a.x, b.y - a.y);
  for (int it = 0; it < 200 && (hi - lo) * len > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double gm = refine(a.x + mid * (b.x - a.x), a.y + mid * (b.y - a.y)) - level;
    if (!std::isfinite(gm)) return p;
    if (gm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((gm > 0) == (ga > 0)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  t = 0.5 * (lo + hi);
  return {a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
}

}  // namespace

std::vector<Segment> marching_squares(const Grid& g, double level, const std::function<double(double, double)>& refine,
                                      double tol) {
  std::vector<Segment> out;
  for (int j = 0; j + 1 < g.ny; ++j) {
    for (int i = 0; i + 1 < g.nx; ++i) {
      // corners counter-clockwise from (i, j)
      const Point2 c[4] = {{g.x(i), g.y(j)}, {g.x(i + 1), g.y(j)}, {g.x(i + 1), g.y(j + 1)}, {g.x(i), g.y(j + 1)}};
      const double v[4] = {g.at(i, j), g.at(i + 1, j), g.at(i + 1, j + 1), g.at(i, j + 1)};
      bool skip = false;
      for (double x : v) skip = skip || !std::isfinite(x);
      if (skip) continue;
      int mask = 0;
      for (int k = 0; k < 4; ++k) mask |= (v[k] > level ? 1 : 0) << k;
      if (mask == 0 || mask == 15) continue;
      std::vector<Point2> hits;
      for (int k = 0; k < 4; ++k) {
        const int l = (k + 1) % 4;
        if ((v[k] > level) != (v[l] > level)) hits.push_back(edge_point(c[k], v[k], c[l], v[l], level, refine, tol));
      }
      if (hits.size() == 2) {
        out.emplace_back(hits[0], hits[1]);
      } else if (hits.size() == 4) {
        // Saddle: decide by the cell-centre average.
        const double centre = 0.25 * (v[0] + v[1] + v[2] + v[3]);
        if ((centre > level) == (v[0] > level)) {
          out.emplace_back(hits[0], hits[1]);
          out.emplace_back(hits[2], hits[3]);
        } else {
          out.emplace_back(hits[3], hits[0]);
          out.emplace_back(hits[1], hits[2]);
        }
      }
    }
  }
  return out;
}

std::vector<std::vector<Point2>> join_segments(const std::vector<Segment>& segs, double eps) {
  auto key = [eps](const Point2& p) {
    return std::make_pair(static_cast<long long>(std::llround(p.x / eps)), static_cast<long long>(std::llround(p.y / eps)));
  };
  std::multimap<std::pair<long long, long long>, std::size_t> ends;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    ends.emplace(key(segs[i].first), i);
    ends.emplace(key(segs[i].second), i);
  }
  std::vector<bool> used(segs.size(), false);
  std::vector<std::vector<Point2>> lines;
  auto take_next = [&](const Point2& tip) -> std::optional<Point2> {
    auto [lo, hi] = ends.equal_range(key(tip));
    for (auto it = lo; it != hi; ++it) {
      const std::size_t s = it->second;
      if (used[s]) continue;
      used[s] = true;
      return key(segs[s].first) == key(tip) ? segs[s].second : segs[s].first;
    }
    return std::nullopt;
  };
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    std::vector<Point2> line{segs[i].first, segs[i].second};
    while (auto n = take_next(line.back())) line.push_back(*n);
    while (auto n = take_next(line.front())) line.insert(line.begin(), *n);
    lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace supint::cli
