#pragma once

// Templated chart maps. Included from coords.hpp; not a public header.

#include <cmath>
#include <vector>

namespace supint::coords {

namespace detail {

std::vector<double> orthogonal_rows(int n);
std::vector<Chart> ancestors(Chart chart);
/// Sequence of charts from `from` to `to` through their common ancestor.
/// Throws ChartMismatchError when the charts are not connected at `dim`.
std::vector<Chart> chart_path(Chart from, Chart to, int dim);
/// True if `child` is the parent of nothing on this edge, i.e. a->b goes down.
inline bool is_parent(Chart a, Chart b) { return parent(b) == a; }

template <class T>
T hypot2(const T& a, const T& b) {
  using std::sqrt;
  return sqrt(a * a + b * b);
}

template <class T>
Vec<T> down(Chart child, const Vec<T>& q, int dim) {
  using std::cos;
  using std::sin;
  switch (child) {
    case Chart::kOrthogonalZ: {
      const auto m = orthogonal_rows(dim);
      Vec<T> x(static_cast<std::size_t>(dim), T(0.0));
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          const double mji = m[static_cast<std::size_t>(j * dim + i)];
          if (mji != 0.0) x[i] = x[i] + mji * q[j];
        }
      }
      return x;
    }
    case Chart::kCylindrical3:
    case Chart::kPolar2: {
      Vec<T> z{q[0] * cos(q[1]), q[0] * sin(q[1])};
      if (child == Chart::kCylindrical3) z.push_back(q[2]);
      return z;
    }
    case Chart::kSphericalCylindrical4: {
      const T s2 = sin(q[2]);
      return {q[0] * s2 * cos(q[1]), q[0] * s2 * sin(q[1]), q[0] * cos(q[2]), q[3]};
    }
    case Chart::kSpherical3: {
      const T st = sin(q[1]);
      return {q[0] * st * cos(q[2]), q[0] * st * sin(q[2]), q[0] * cos(q[1])};
    }
    default:
      throw ChartMismatchError("chart has no parent: " + std::string(to_string(child)));
  }
}

inline void check_radius(double r, double transverse, bool has_axis) {
  if (!(r > 1e-14)) throw SingularChartError("radial coordinate vanishes");
  if (has_axis && !(transverse > 1e-14 * r)) {
    throw SingularChartError("point on the polar axis (sin of polar angle vanishes)");
  }
}

template <class T>
Vec<T> up(Chart child, const Vec<T>& q, int dim) {
  using std::atan2;
  switch (child) {
    case Chart::kOrthogonalZ: {
      const auto m = orthogonal_rows(dim);
      Vec<T> z(static_cast<std::size_t>(dim), T(0.0));
      for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
          const double mij = m[static_cast<std::size_t>(i * dim + j)];
          if (mij != 0.0) z[i] = z[i] + mij * q[j];
        }
      }
      return z;
    }
    case Chart::kCylindrical3:
    case Chart::kPolar2: {
      const T r = hypot2(q[0], q[1]);
      check_radius(value_of(r), 1.0, false);
      Vec<T> out{r, atan2(q[1], q[0])};
      if (child == Chart::kCylindrical3) out.push_back(q[2]);
      return out;
    }
    case Chart::kSphericalCylindrical4:
    case Chart::kSpherical3: {
      const T rho = hypot2(q[0], q[1]);
      const T r = hypot2(rho, q[2]);
      check_radius(value_of(r), value_of(rho), true);
      const T azimuth = atan2(q[1], q[0]);
      const T polar = atan2(rho, q[2]);
      if (child == Chart::kSpherical3) return {r, polar, azimuth};
      return {r, azimuth, polar, q[3]};
    }
    default:
      throw ChartMismatchError("chart has no parent: " + std::string(to_string(child)));
  }
}

}  // namespace detail

template <class T>
std::vector<T> transform_position_generic(Chart from, Chart to, std::vector<T> q) {
  const int dim = static_cast<int>(q.size());
  const auto path = detail::chart_path(from, to, dim);
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (detail::is_parent(path[i], path[i - 1])) {
      q = detail::down(path[i - 1], q, dim);
    } else {
      q = detail::up(path[i], q, dim);
    }
  }
  return q;
}

}  // namespace supint::coords
