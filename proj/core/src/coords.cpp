#include "supint/coords.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace supint::coords {

namespace {

struct ChartInfo {
  Chart chart;
  std::string_view tag;
  int dim;  // 0: any dimension
};

constexpr std::array<ChartInfo, 7> kCharts{{
    {Chart::kCartesianLine, "cartesian-line", 0},
    {Chart::kOrthogonalZ, "orthogonal-z", 0},
    {Chart::kCylindrical3, "cylindrical-3", 3},
    {Chart::kSphericalCylindrical4, "spherical-cylindrical-4", 4},
    {Chart::kPolar2, "polar-2", 2},
    {Chart::kSpherical3, "spherical-3", 3},
    {Chart::kSphere2, "sphere-2", 2},
}};

const ChartInfo& info(Chart c) {
  for (const auto& i : kCharts) {
    if (i.chart == c) return i;
  }
  throw ParameterError("unknown chart");
}

Eigen::Map<const Eigen::VectorXd> as_vec(std::span<const double> v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

// d(parent coords) / d(child coords) evaluated at child coordinates q.
Eigen::MatrixXd edge_jacobian(Chart child, const Eigen::VectorXd& q) {
  const int n = static_cast<int>(q.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  switch (child) {
    case Chart::kOrthogonalZ:
      return orthogonal_matrix(n).transpose();
    case Chart::kCylindrical3:
    case Chart::kPolar2: {
      const double c = std::cos(q[1]), s = std::sin(q[1]), r = q[0];
      d(0, 0) = c;
      d(0, 1) = -r * s;
      d(1, 0) = s;
      d(1, 1) = r * c;
      if (n == 3) d(2, 2) = 1.0;
      return d;
    }
    case Chart::kSphericalCylindrical4: {
      const double r = q[0];
      const double c1 = std::cos(q[1]), s1 = std::sin(q[1]);
      const double c2 = std::cos(q[2]), s2 = std::sin(q[2]);
      d << s2 * c1, -r * s2 * s1, r * c2 * c1, 0.0,  //
          s2 * s1, r * s2 * c1, r * c2 * s1, 0.0,    //
          c2, 0.0, -r * s2, 0.0,                     //
          0.0, 0.0, 0.0, 1.0;
      return d;
    }
    case Chart::kSpherical3: {
      const double r = q[0];
      const double ct = std::cos(q[1]), st = std::sin(q[1]);
      const double cp = std::cos(q[2]), sp = std::sin(q[2]);
      d << st * cp, r * ct * cp, -r * st * sp,  //
          st * sp, r * ct * sp, r * st * cp,    //
          ct, -r * st, 0.0;
      return d;
    }
    default:
      throw ChartMismatchError("chart has no parent");
  }
}

Eigen::VectorXd to_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

std::string_view to_string(Chart chart) { return info(chart).tag; }

Chart chart_from_string(std::string_view tag) {
  for (const auto& i : kCharts) {
    if (i.tag == tag) return i.chart;
  }
  // Accept the generic spelling for the only dimension we support.
  if (tag == "spherical-cylindrical-n") return Chart::kSphericalCylindrical4;
  throw UnknownIdError("unknown chart tag: " + std::string(tag));
}

std::optional<int> fixed_dimension(Chart chart) {
  const int d = info(chart).dim;
  if (d == 0) return std::nullopt;
  return d;
}

std::vector<Chart> all_charts() {
  std::vector<Chart> out;
  for (const auto& i : kCharts) out.push_back(i.chart);
  return out;
}

std::vector<std::string> coordinate_names(Chart chart, int dim) {
  switch (chart) {
    case Chart::kCartesianLine:
    case Chart::kOrthogonalZ: {
      std::vector<std::string> names;
      const char* stem = chart == Chart::kCartesianLine ? "x" : "z";
      for (int i = 1; i <= dim; ++i) names.push_back(stem + std::to_string(i));
      return names;
    }
    case Chart::kCylindrical3:
      return {"r", "psi", "u"};
    case Chart::kSphericalCylindrical4:
      return {"r", "psi1", "psi2", "u"};
    case Chart::kPolar2:
      return {"r", "psi"};
    case Chart::kSpherical3:
      return {"r", "theta", "phi"};
    case Chart::kSphere2:
      return {"theta", "phi"};
  }
  return {};
}

void validate(const PhaseState& s) {
  const int n = s.dimension();
  if (s.p.size() != s.q.size()) throw ParameterError("q and p differ in length");
  if (auto d = fixed_dimension(s.chart); d && *d != n) {
    throw ParameterError(std::string(to_string(s.chart)) + " expects dimension " +
                         std::to_string(*d) + ", got " + std::to_string(n));
  }
  if (n < 1) throw ParameterError("empty phase state");
  if (s.chart == Chart::kOrthogonalZ && n < 2) throw ParameterError("orthogonal-z needs n >= 2");
  if (!s.q.allFinite() || !s.p.allFinite()) throw ParameterError("non-finite phase state");
}

Eigen::MatrixXd orthogonal_matrix(int n) {
  if (n < 2) throw ParameterError("orthogonal matrix needs n >= 2");
  const auto rows = detail::orthogonal_rows(n);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = rows[static_cast<std::size_t>(i * n + j)];
  }
  return m;
}

PhaseState line_to_orthogonal(const LineConfig& c) {
  const int n = static_cast<int>(c.x.size());
  if (n < 2 || c.p.size() != c.x.size()) throw ParameterError("line configuration needs n >= 2 and |p| = |x|");
  const Eigen::MatrixXd m = orthogonal_matrix(n);
  return {Chart::kOrthogonalZ, m * c.x, m * c.p};
}

LineConfig orthogonal_to_line(const PhaseState& s) {
  if (s.chart != Chart::kOrthogonalZ) {
    throw ChartMismatchError("orthogonal_to_line expects orthogonal-z, got " + std::string(to_string(s.chart)));
  }
  validate(s);
  const Eigen::MatrixXd m = orthogonal_matrix(s.dimension());
  return {m.transpose() * s.q, m.transpose() * s.p};
}

bool connected(Chart from, Chart to, int dim) {
  try {
    detail::chart_path(from, to, dim);
    return true;
  } catch (const ChartMismatchError&) {
    return false;
  }
}

Eigen::VectorXd transform_position(Chart from, Chart to, const Eigen::VectorXd& q) {
  return to_eigen(transform_position_generic<double>(from, to, to_std(q)));
}

Eigen::MatrixXd position_jacobian(Chart from, Chart to, const Eigen::VectorXd& q) {
  const int n = static_cast<int>(q.size());
  const auto path = detail::chart_path(from, to, n);
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(n, n);
  std::vector<double> cur = to_std(q);
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (detail::is_parent(path[i], path[i - 1])) {
      j = edge_jacobian(path[i - 1], to_eigen(cur)) * j;
      cur = detail::down(path[i - 1], cur, n);
    } else {
      cur = detail::up(path[i], cur, n);
      j = edge_jacobian(path[i], to_eigen(cur)).lu().solve(j);
    }
  }
  return j;
}

PhaseState chart_transform(const PhaseState& s, Chart target) {
  validate(s);
  if (s.chart == target) return s;
  const Eigen::MatrixXd j = position_jacobian(s.chart, target, s.q);
  PhaseState out;
  out.chart = target;
  out.q = transform_position(s.chart, target, s.q);
  // p_old = J^T p_new
  out.p = j.transpose().lu().solve(s.p);
  return out;
}

double kinetic_energy(const PhaseState& s) {
  validate(s);
  return kinetic_energy(s.chart, {s.q.data(), static_cast<std::size_t>(s.q.size())},
                        {s.p.data(), static_cast<std::size_t>(s.p.size())});
}

double kinetic_energy(Chart chart, std::span<const double> q, std::span<const double> p) {
  switch (chart) {
    case Chart::kCartesianLine:
    case Chart::kOrthogonalZ:
      return 0.5 * as_vec(p).squaredNorm();
    case Chart::kCylindrical3:
      return 0.5 * (p[0] * p[0] + p[1] * p[1] / (q[0] * q[0]) + p[2] * p[2]);
    case Chart::kPolar2:
      return 0.5 * (p[0] * p[0] + p[1] * p[1] / (q[0] * q[0]));
    case Chart::kSphericalCylindrical4: {
      const double r2 = q[0] * q[0];
      const double s2 = std::sin(q[2]);
      return 0.5 * (p[0] * p[0] + p[1] * p[1] / (r2 * s2 * s2) + p[2] * p[2] / r2 + p[3] * p[3]);
    }
    case Chart::kSpherical3: {
      const double r2 = q[0] * q[0];
      const double st = std::sin(q[1]);
      return 0.5 * (p[0] * p[0] + p[1] * p[1] / r2 + p[2] * p[2] / (r2 * st * st));
    }
    case Chart::kSphere2: {
      const double st = std::sin(q[0]);
      return 0.5 * (p[0] * p[0] + p[1] * p[1] / (st * st));
    }
  }
  return 0.0;
}

void kinetic_gradient(Chart chart, std::span<const double> q, std::span<const double> p,
                      std::span<double> dq, std::span<double> dp) {
  std::fill(dq.begin(), dq.end(), 0.0);
  switch (chart) {
    case Chart::kCartesianLine:
    case Chart::kOrthogonalZ:
      std::copy(p.begin(), p.end(), dp.begin());
      return;
    case Chart::kCylindrical3:
    case Chart::kPolar2: {
      const double r = q[0];
      dq[0] = -p[1] * p[1] / (r * r * r);
      dp[0] = p[0];
      dp[1] = p[1] / (r * r);
      if (chart == Chart::kCylindrical3) dp[2] = p[2];
      return;
    }
    case Chart::kSphericalCylindrical4: {
      const double r = q[0];
      const double s2 = std::sin(q[2]), c2 = std::cos(q[2]);
      const double a = p[1] * p[1] / (s2 * s2);
      dq[0] = -(a + p[2] * p[2]) / (r * r * r);
      dq[2] = -a * c2 / (s2 * r * r);
      dp[0] = p[0];
      dp[1] = p[1] / (r * r * s2 * s2);
      dp[2] = p[2] / (r * r);
      dp[3] = p[3];
      return;
    }
    case Chart::kSpherical3: {
      const double r = q[0];
      const double st = std::sin(q[1]), ct = std::cos(q[1]);
      const double a = p[2] * p[2] / (st * st);
      dq[0] = -(p[1] * p[1] + a) / (r * r * r);
      dq[1] = -a * ct / (st * r * r);
      dp[0] = p[0];
      dp[1] = p[1] / (r * r);
      dp[2] = p[2] / (r * r * st * st);
      return;
    }
    case Chart::kSphere2: {
      const double st = std::sin(q[0]), ct = std::cos(q[0]);
      dq[0] = -p[1] * p[1] * ct / (st * st * st);
      dp[0] = p[0];
      dp[1] = p[1] / (st * st);
      return;
    }
  }
}

double normalize_angle(double psi, double period) {
  if (!(period > 0.0)) throw ParameterError("period must be positive");
  double r = std::fmod(psi, period);
  if (r < 0.0) r += period;
  if (r >= period) r = 0.0;
  return r;
}

namespace detail {

std::optional<Chart> parent(Chart chart) {
  switch (chart) {
    case Chart::kOrthogonalZ:
    case Chart::kPolar2:
    case Chart::kSpherical3:
      return Chart::kCartesianLine;
    case Chart::kCylindrical3:
    case Chart::kSphericalCylindrical4:
      return Chart::kOrthogonalZ;
    default:
      return std::nullopt;
  }
}

std::vector<double> orthogonal_rows(int n) {
  std::vector<double> m(static_cast<std::size_t>(n * n), 0.0);
  for (int j = 1; j < n; ++j) {
    const double s = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
    double* row = &m[static_cast<std::size_t>((j - 1) * n)];
    for (int i = 0; i < j; ++i) row[i] = s;
    row[j] = -j * s;
  }
  const double s = 1.0 / std::sqrt(static_cast<double>(n));
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>((n - 1) * n + i)] = s;
  return m;
}

std::vector<Chart> ancestors(Chart chart) {
  std::vector<Chart> out{chart};
  while (auto p = parent(out.back())) out.push_back(*p);
  return out;
}

std::vector<Chart> chart_path(Chart from, Chart to, int dim) {
  auto check_dim = [dim](Chart c) {
    if (auto d = fixed_dimension(c); d && *d != dim) return false;
    return !(c == Chart::kOrthogonalZ && dim < 2);
  };
  const auto a = ancestors(from);
  const auto b = ancestors(to);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto it = std::find(b.begin(), b.end(), a[i]);
    if (it == b.end()) continue;
    std::vector<Chart> path(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    for (auto k = it; k != b.begin();) path.push_back(*--k);
    if (!std::all_of(path.begin(), path.end(), check_dim)) break;
    return path;
  }
  throw ChartMismatchError("no chart map from " + std::string(to_string(from)) + " to " +
                           std::string(to_string(to)) + " in dimension " + std::to_string(dim));
}

}  // namespace detail

}  // namespace supint::coords
