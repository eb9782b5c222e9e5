#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "supint/dual.hpp"
#include "supint/errors.hpp"
#include "supint/jet.hpp"

namespace supint::coords {

/// Coordinate charts. Orderings (see CHARTS.md):
///   cartesian-line          (x1..xn)        particle positions / Euclidean Cartesian
///   orthogonal-z            (z1..zn)        z = M x, zn along (1,...,1)
///   cylindrical-3           (r, psi, u)     z1 = r cos psi, z2 = r sin psi, z3 = u
///   spherical-cylindrical-4 (r, psi1, psi2, u)
///                           z1 = r sin psi2 cos psi1, z2 = r sin psi2 sin psi1,
///                           z3 = r cos psi2, z4 = u
///   polar-2                 (r, psi)        x1 = r cos psi, x2 = r sin psi
///   spherical-3             (r, theta, phi) x = r sin theta cos phi, ...
///   sphere-2                (theta, phi)    unit sphere, no ambient chart
enum class Chart {
  kCartesianLine,
  kOrthogonalZ,
  kCylindrical3,
  kSphericalCylindrical4,
  kPolar2,
  kSpherical3,
  kSphere2,
};

std::string_view to_string(Chart chart);
Chart chart_from_string(std::string_view tag);
/// Dimension fixed by the chart tag, or nullopt for the n-dimensional charts.
std::optional<int> fixed_dimension(Chart chart);
std::vector<std::string> coordinate_names(Chart chart, int dim);
std::vector<Chart> all_charts();

struct LineConfig {
  Eigen::VectorXd x;
  Eigen::VectorXd p;
};

struct PhaseState {
  Chart chart = Chart::kCartesianLine;
  Eigen::VectorXd q;
  Eigen::VectorXd p;

  int dimension() const noexcept { return static_cast<int>(q.size()); }
};

/// Validates dimensions of q and p against the chart; throws ParameterError.
void validate(const PhaseState& s);

/// Orthogonal matrix M with z = M x (rows: z^j = (x1+...+xj - j x(j+1)) / sqrt(j(j+1)),
/// last row (1,...,1)/sqrt(n)).
Eigen::MatrixXd orthogonal_matrix(int n);

PhaseState line_to_orthogonal(const LineConfig& c);
LineConfig orthogonal_to_line(const PhaseState& s);

/// True if positions in `from` can be mapped to `to` at dimension `dim`.
bool connected(Chart from, Chart to, int dim);

/// Position map between connected charts.
Eigen::VectorXd transform_position(Chart from, Chart to, const Eigen::VectorXd& q);

/// Analytic Jacobian d q_to / d q_from evaluated at q (in `from` coordinates).
Eigen::MatrixXd position_jacobian(Chart from, Chart to, const Eigen::VectorXd& q);

/// Canonical point transformation: positions by the chart map, momenta as
/// covectors through the inverse-transpose Jacobian.
PhaseState chart_transform(const PhaseState& s, Chart target);

/// Kinetic energy 1/2 g^{ij} p_i p_j of the chart's flat (or unit-sphere) metric.
double kinetic_energy(const PhaseState& s);
double kinetic_energy(Chart chart, std::span<const double> q, std::span<const double> p);
/// Partial derivatives of the kinetic energy with respect to q and p.
void kinetic_gradient(Chart chart, std::span<const double> q, std::span<const double> p,
                      std::span<double> dq, std::span<double> dp);

/// psi reduced into [0, period).
double normalize_angle(double psi, double period);

namespace detail {

/// Charts form a forest rooted at cartesian-line(n); sphere-2 is isolated.
std::optional<Chart> parent(Chart chart);

template <class T>
using Vec = std::vector<T>;

/// child -> parent position map (templated so jets can flow through it).
template <class T>
Vec<T> down(Chart child, const Vec<T>& q, int dim);

/// parent -> child position map.
template <class T>
Vec<T> up(Chart child, const Vec<T>& q, int dim);

}  // namespace detail

/// Generic-number version of transform_position used to push jets through
/// chart maps.
template <class T>
std::vector<T> transform_position_generic(Chart from, Chart to, std::vector<T> q);

}  // namespace supint::coords

#include "supint/detail/coords_maps.hpp"
