#include "supint/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace supint::potentials {

using coords::Chart;

namespace {

// Chart map restricted to parent-ward steps, usable with number types that
// lack atan2.
template <class T>
std::vector<T> descend(Chart from, Chart to, std::vector<T> q) {
  const int dim = static_cast<int>(q.size());
  const auto path = coords::detail::chart_path(from, to, dim);
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (!coords::detail::is_parent(path[i], path[i - 1])) {
      throw ChartMismatchError("jet evaluation needs a parent-ward chart path from " +
                               std::string(coords::to_string(from)) + " to " +
                               std::string(coords::to_string(to)));
    }
    q = coords::detail::down(path[i - 1], q, dim);
  }
  return q;
}

bool dim_fits(const ChartModel& m, int dim) {
  if (m.dim != 0) return m.dim == dim;
  if (auto d = coords::fixed_dimension(m.chart)) return *d == dim;
  return true;
}

}  // namespace

Potential::Potential(std::string id, ParamMap params, std::vector<ChartModel> models)
    : id_(std::move(id)), params_(std::move(params)), models_(std::move(models)) {}

double Potential::param(const std::string& name) const {
  const auto it = params_.find(name);
  if (it == params_.end()) throw ParameterError(id_ + " has no parameter " + name);
  return it->second;
}

const ScalarFunction& Potential::function(const std::string& name) const {
  const auto it = functions_.find(name);
  if (it == functions_.end()) throw ParameterError(id_ + " has no function " + name);
  return it->second;
}

std::vector<Chart> Potential::native_charts() const {
  std::vector<Chart> out;
  for (const auto& m : models_) out.push_back(m.chart);
  return out;
}

bool Potential::supports(Chart chart, int dim) const {
  try {
    select(chart, dim);
    return true;
  } catch (const ChartMismatchError&) {
    return false;
  }
}

const ChartModel& Potential::select(Chart chart, int dim) const {
  for (const auto& m : models_) {
    if (m.chart == chart && dim_fits(m, dim)) return m;
  }
  for (const auto& m : models_) {
    if (dim_fits(m, dim) && coords::connected(chart, m.chart, dim)) return m;
  }
  throw ChartMismatchError(id_ + " is not defined on " + std::string(coords::to_string(chart)) +
                           " (dimension " + std::to_string(dim) + ")");
}

void Potential::check_walls(const ChartModel& m, std::span<const double> q) const {
  if (!m.walls) return;
  const auto w = m.walls(q);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(std::abs(w[i]) > kWallTolerance)) {
      throw SingularityError(i < m.wall_names.size() ? m.wall_names[i] : "wall " + std::to_string(i));
    }
  }
}

double Potential::value(const coords::PhaseState& s) const {
  return value(s.chart, {s.q.data(), static_cast<std::size_t>(s.q.size())});
}

double Potential::value(Chart chart, std::span<const double> q) const {
  const int dim = static_cast<int>(q.size());
  const ChartModel& m = select(chart, dim);
  std::vector<double> nq(q.begin(), q.end());
  if (m.chart != chart) nq = coords::transform_position_generic<double>(chart, m.chart, nq);
  check_walls(m, nq);
  const double v = m.f(nq);
  if (!std::isfinite(v)) throw SingularityError("non-finite value of " + id_);
  return v;
}

Eigen::VectorXd Potential::gradient(Chart chart, std::span<const double> q) const {
  const int dim = static_cast<int>(q.size());
  const ChartModel& m = select(chart, dim);
  {
    std::vector<double> nq(q.begin(), q.end());
    if (m.chart != chart) nq = coords::transform_position_generic<double>(chart, m.chart, nq);
    check_walls(m, nq);
  }
  Eigen::VectorXd g(dim);
  // Seed kDualWidth coordinates per pass.
  for (int base = 0; base < dim; base += kDualWidth) {
    std::vector<Dual> x(q.begin(), q.end());
    for (int s = 0; s < kDualWidth && base + s < dim; ++s) {
      x[static_cast<std::size_t>(base + s)] = Dual::variable(q[static_cast<std::size_t>(base + s)], s);
    }
    if (m.chart != chart) x = coords::transform_position_generic<Dual>(chart, m.chart, x);
    const Dual v = m.f_dual(x);
    for (int s = 0; s < kDualWidth && base + s < dim; ++s) g[base + s] = v.d[static_cast<std::size_t>(s)];
  }
  if (!g.allFinite()) throw SingularityError("non-finite gradient of " + id_);
  return g;
}

PotentialValue Potential::eval(const coords::PhaseState& s, bool with_gradient) const {
  coords::validate(s);
  PotentialValue out;
  out.value = value(s);
  if (with_gradient) out.gradient = gradient(s.chart, {s.q.data(), static_cast<std::size_t>(s.q.size())});
  return out;
}

Jet Potential::value_jet(Chart chart, std::span<const Jet> q) const {
  const int dim = static_cast<int>(q.size());
  const ChartModel& m = select(chart, dim);
  std::vector<Jet> x(q.begin(), q.end());
  if (m.chart != chart) x = descend(chart, m.chart, std::move(x));
  return m.f_jet(x);
}

MultiJet Potential::value_multijet(Chart chart, std::span<const MultiJet> q) const {
  const int dim = static_cast<int>(q.size());
  const ChartModel& m = select(chart, dim);
  std::vector<MultiJet> x(q.begin(), q.end());
  if (m.chart != chart) x = descend(chart, m.chart, std::move(x));
  return m.f_multi(x);
}

std::vector<double> Potential::walls(Chart chart, std::span<const double> q) const {
  const ChartModel& m = select(chart, static_cast<int>(q.size()));
  if (!m.walls) return {};
  std::vector<double> nq(q.begin(), q.end());
  if (m.chart != chart) nq = coords::transform_position_generic<double>(chart, m.chart, nq);
  return m.walls(nq);
}

std::vector<std::string> Potential::wall_names(Chart chart, int dim) const {
  return select(chart, dim).wall_names;
}

ScalarFunction Potential::angular_profile() const {
  Chart chart = Chart::kPolar2;
  int dim = 2;
  if (!supports(chart, dim)) {
    chart = Chart::kCylindrical3;
    dim = 3;
    if (!supports(chart, dim)) throw ChartMismatchError(id_ + " has no polar form F(psi)/r^2");
  }
  const Potential self = *this;
  auto point = [dim](auto psi) {
    using T = decltype(psi);
    std::vector<T> q{T(1.0), psi};
    if (dim == 3) q.push_back(T(0.0));
    return q;
  };
  return ScalarFunction(
      [self, chart, point](double psi) { return self.value(chart, point(psi)); },
      [self, chart, point](const Dual& psi) {
        const auto q = point(psi);
        const auto& m = self.select(chart, static_cast<int>(q.size()));
        const auto nq = m.chart == chart ? q : coords::transform_position_generic<Dual>(chart, m.chart, q);
        return m.f_dual(nq);
      },
      [self, chart, point](const Jet& psi) { return self.value_jet(chart, point(psi)); },
      [self, chart, point](const MultiJet& psi) { return self.value_multijet(chart, point(psi)); });
}

PhaseFit derive_phase_constants(const Potential& pot_line, const Potential& pot_polar, unsigned seed,
                                int points) {
  if (!pot_line.supports(Chart::kCylindrical3, 3)) {
    throw ChartMismatchError(pot_line.id() + " is not a three-body potential");
  }
  const ScalarFunction g = pot_polar.angular_profile();
  const auto it = pot_polar.params().find("n");
  const double n = it == pot_polar.params().end() ? 1.0 : it->second;
  points = std::max(points, 10);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ur(0.5, 2.0), upsi(0.0, 2.0 * std::numbers::pi), uu(-1.0, 1.0);
  std::vector<double> rs, psis, vs;
  int guard = 0;
  while (static_cast<int>(rs.size()) < points) {
    if (++guard > 100 * points) throw ConventionMismatchError("no nonsingular fit points found");
    const double r = ur(rng), psi = upsi(rng), u = uu(rng);
    try {
      const double v = pot_line.value(Chart::kCylindrical3, std::vector<double>{r, psi, u});
      if (std::abs(v) < 1e-300) continue;
      rs.push_back(r);
      psis.push_back(psi);
      vs.push_back(v);
    } catch (const SingularityError&) {
    }
  }
  const std::size_t m = rs.size();

  // a_i(phi0) = g(psi_i + phi0/n) / (r_i^2 V_i); the model is c * a_i = 1.
  auto ratios = [&](double phi0, std::vector<double>& a, std::vector<double>* da) {
    a.resize(m);
    if (da) da->resize(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double w = 1.0 / (rs[i] * rs[i] * vs[i]);
      const Dual x = Dual::variable(psis[i] + phi0 / n, 0);
      const Dual gv = g(x);
      if (!std::isfinite(gv.v)) return false;
      a[i] = gv.v * w;
      if (da) (*da)[i] = gv.d[0] * w / n;
    }
    return true;
  };
  auto best_c = [](const std::vector<double>& a) {
    double num = 0.0, den = 0.0;
    for (double x : a) {
      num += x;
      den += x * x;
    }
    return den > 0.0 ? num / den : 0.0;
  };
  auto max_resid = [](const std::vector<double>& a, double c) {
    double r = 0.0;
    for (double x : a) r = std::max(r, std::abs(1.0 - c * x));
    return r;
  };

  constexpr int kGrid = 720;
  double best_phi = 0.0, best_res = std::numeric_limits<double>::infinity();
  std::vector<double> a, da;
  for (int j = 0; j < kGrid; ++j) {
    const double phi = std::numbers::pi * j / kGrid;
    try {
      if (!ratios(phi, a, nullptr)) continue;
    } catch (const Error&) {
      continue;
    }
    double ss = 0.0;
    const double c = best_c(a);
    for (double x : a) ss += (1.0 - c * x) * (1.0 - c * x);
    if (ss < best_res) {
      best_res = ss;
      best_phi = phi;
    }
  }
  if (!std::isfinite(best_res)) throw ConventionMismatchError("phase grid produced no finite model");

  // Gauss-Newton on (phi0, c) for residuals 1 - c a_i(phi0).
  double phi = best_phi;
  ratios(phi, a, &da);
  double c = best_c(a);
  for (int iter = 0; iter < 60; ++iter) {
    if (!ratios(phi, a, &da)) break;
    Eigen::MatrixXd jm(m, 2);
    Eigen::VectorXd res(m);
    for (std::size_t i = 0; i < m; ++i) {
      res[static_cast<Eigen::Index>(i)] = 1.0 - c * a[i];
      jm(static_cast<Eigen::Index>(i), 0) = -c * da[i];
      jm(static_cast<Eigen::Index>(i), 1) = -a[i];
    }
    const Eigen::Vector2d step = jm.colPivHouseholderQr().solve(-res);
    phi += step[0];
    c += step[1];
    if (std::abs(step[0]) < 1e-16 && std::abs(step[1]) < 1e-16 * (1.0 + std::abs(c))) break;
  }
  ratios(phi, a, nullptr);
  // Report c relative to unit couplings on both sides: V_line = c k / (r sin)^2
  // with k the line potential's own coupling.
  double k_polar = 1.0, k_line = 1.0;
  if (const auto kp = pot_polar.params().find("k"); kp != pot_polar.params().end() && kp->second != 0.0) {
    k_polar = kp->second;
  }
  if (pot_line.params().size() == 1 && pot_line.params().begin()->second != 0.0) {
    k_line = pot_line.params().begin()->second;
  }
  PhaseFit fit;
  fit.c = c * k_polar / k_line;
  fit.residual = max_resid(a, c);
  fit.points = static_cast<int>(m);
  fit.phi0 = coords::normalize_angle(phi, std::numbers::pi);
  if (std::numbers::pi - fit.phi0 < 1e-12) fit.phi0 = 0.0;
  if (!(fit.residual <= 1e-9)) {
    throw ConventionMismatchError(pot_line.id() + " is not of the form c k/(r sin(n psi + phi0))^2 (residual " +
                                  std::to_string(fit.residual) + ")");
  }
  return fit;
}

double ttw_half_angle(const Potential& ttw, const coords::PhaseState& s) {
  if (ttw.id() != "ttw") throw ParameterError("ttw_half_angle expects a ttw potential, got " + ttw.id());
  coords::validate(s);
  Chart target = s.dimension() == 3 ? Chart::kCylindrical3 : Chart::kPolar2;
  const Eigen::VectorXd q = s.chart == target ? s.q : coords::transform_position(s.chart, target, s.q);
  const double r = q[0], psi = q[1];
  const double h = ttw.param("p") / ttw.param("q");
  const double s2 = std::sin(2.0 * h * psi);
  if (!(std::abs(s2) > kWallTolerance)) throw SingularityError("sin(2 h psi)");
  const double k1 = ttw.param("k1"), k2 = ttw.param("k2"), k3 = ttw.param("k3");
  return (k1 + 2.0 * ((k2 + k3) + (k3 - k2) * std::cos(2.0 * h * psi)) / (s2 * s2)) / (r * r);
}

double higgs_tan_form(double a, double psi) {
  const double t = std::tan(psi);
  return a * t * t;
}

double higgs_sec_form(double a, double psi) {
  const double c = std::cos(psi);
  return a * (1.0 / (c * c) - 1.0);
}

Hamiltonian natural_hamiltonian(const Potential& pot, Chart chart, int dim) {
  if (!pot.supports(chart, dim)) {
    throw ChartMismatchError(pot.id() + " is not defined on " + std::string(coords::to_string(chart)));
  }
  auto span_of = [](const Eigen::VectorXd& v) {
    return std::span<const double>(v.data(), static_cast<std::size_t>(v.size()));
  };
  Hamiltonian h;
  h.chart = chart;
  h.dim = dim;
  h.value = [pot, chart, span_of](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
    return coords::kinetic_energy(chart, span_of(q), span_of(p)) + pot.value(chart, span_of(q));
  };
  h.gradient = [pot, chart, span_of](const Eigen::VectorXd& q, const Eigen::VectorXd& p, Eigen::VectorXd& dq,
                                     Eigen::VectorXd& dp) {
    dq.resize(q.size());
    dp.resize(p.size());
    coords::kinetic_gradient(chart, span_of(q), span_of(p), {dq.data(), static_cast<std::size_t>(dq.size())},
                             {dp.data(), static_cast<std::size_t>(dp.size())});
    dq += pot.gradient(chart, span_of(q));
  };
  if (chart == Chart::kCartesianLine || chart == Chart::kOrthogonalZ) {
    h.potential_gradient = [pot, chart, span_of](const Eigen::VectorXd& q) {
      return pot.gradient(chart, span_of(q));
    };
  }
  h.walls = [pot, chart, span_of](const Eigen::VectorXd& q) { return pot.walls(chart, span_of(q)); };
  return h;
}

}  // namespace supint::potentials
