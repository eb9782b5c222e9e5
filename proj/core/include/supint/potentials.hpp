#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "supint/coords.hpp"
#include "supint/dual.hpp"
#include "supint/hamiltonian.hpp"
#include "supint/jet.hpp"
#include "supint/multijet.hpp"
#include "supint/scalar_function.hpp"

namespace supint::potentials {

using ParamMap = std::map<std::string, double>;

/// Walls closer to zero than this (after the model's own normalization) are
/// treated as singular.
inline constexpr double kWallTolerance = 1e-12;

/// A potential written in one chart, evaluable on every number type the
/// library differentiates with. dim == 0 means "any dimension".
struct ChartModel {
  coords::Chart chart = coords::Chart::kCartesianLine;
  int dim = 0;
  std::function<double(std::span<const double>)> f;
  std::function<Dual(std::span<const Dual>)> f_dual;
  std::function<Jet(std::span<const Jet>)> f_jet;
  std::function<MultiJet(std::span<const MultiJet>)> f_multi;
  /// Normalized denominators; a sign change means a singular wall was crossed.
  std::function<std::vector<double>(std::span<const double>)> walls;
  std::vector<std::string> wall_names;
};

/// Builds a ChartModel from a generic formula `f(std::span<const T>) -> T` and
/// a wall function on doubles.
template <class F, class W>
ChartModel make_model(coords::Chart chart, int dim, F f, W walls, std::vector<std::string> names) {
  ChartModel m;
  m.chart = chart;
  m.dim = dim;
  m.f = [f](std::span<const double> q) -> double { return f(q); };
  m.f_dual = [f](std::span<const Dual> q) -> Dual { return f(q); };
  m.f_jet = [f](std::span<const Jet> q) -> Jet { return f(q); };
  m.f_multi = [f](std::span<const MultiJet> q) -> MultiJet { return f(q); };
  m.walls = [walls](std::span<const double> q) -> std::vector<double> { return walls(q); };
  m.wall_names = std::move(names);
  return m;
}

struct PotentialValue {
  double value = 0.0;
  std::optional<Eigen::VectorXd> gradient;
};

class Potential {
 public:
  Potential(std::string id, ParamMap params, std::vector<ChartModel> models);

  const std::string& id() const noexcept { return id_; }
  const ParamMap& params() const noexcept { return params_; }
  double param(const std::string& name) const;
  const std::vector<ChartModel>& models() const noexcept { return models_; }

  /// Charts with a native formula.
  std::vector<coords::Chart> native_charts() const;
  /// True if a native model is reachable from (chart, dim).
  bool supports(coords::Chart chart, int dim) const;

  double value(const coords::PhaseState& s) const;
  double value(coords::Chart chart, std::span<const double> q) const;
  Eigen::VectorXd gradient(coords::Chart chart, std::span<const double> q) const;
  PotentialValue eval(const coords::PhaseState& s, bool with_gradient = true) const;

  /// Evaluation on jets; the model chart must be reachable by descending
  /// chart maps only (polar/cylindrical charts toward Cartesian ones).
  Jet value_jet(coords::Chart chart, std::span<const Jet> q) const;
  /// Evaluation on multivariate jets in a native chart.
  MultiJet value_multijet(coords::Chart chart, std::span<const MultiJet> q) const;

  /// Wall functions in the native chart selected for (chart, q).
  std::vector<double> walls(coords::Chart chart, std::span<const double> q) const;
  std::vector<std::string> wall_names(coords::Chart chart, int dim) const;

  /// Named auxiliary functions (the Evans angular function is stored as "F").
  void set_function(const std::string& name, ScalarFunction f) { functions_[name] = std::move(f); }
  bool has_function(const std::string& name) const { return functions_.count(name) != 0; }
  const ScalarFunction& function(const std::string& name) const;

  /// F(psi) = r^2 V at r = 1 (u = 0) for potentials of the form F(psi)/r^2.
  /// Throws ChartMismatchError if no polar or cylindrical chart applies.
  ScalarFunction angular_profile() const;

 private:
  const ChartModel& select(coords::Chart chart, int dim) const;
  void check_walls(const ChartModel& m, std::span<const double> native_q) const;

  std::string id_;
  ParamMap params_;
  std::vector<ChartModel> models_;
  std::map<std::string, ScalarFunction> functions_;
};

struct ParamSpec {
  std::string name;
  std::optional<double> default_value;  // nullopt: required
  std::string description;
};

struct CatalogEntry {
  std::string id;
  std::string formula;
  std::vector<ParamSpec> params;
  std::vector<std::string> charts;
};

const std::vector<CatalogEntry>& catalog();

/// Builds a validated catalog potential. Throws UnknownIdError or
/// ParameterError.
///
/// ttw takes its rational frequency as integers p, q (h = p/q, gcd 1); an
/// integral "h" is accepted as shorthand for p = h, q = 1.
Potential make_potential(const std::string& id, const ParamMap& params = {});

/// Evans entries with a caller-supplied angular function F(psi1).
/// `kind` in 1..3.
Potential make_evans(int kind, double k, ScalarFunction f);

/// The default Evans angular function a + b / sin^2(psi1).
ScalarFunction evans_default_f(double a, double b);

/// Platonic invariants on the unit sphere, (theta, phi).
double platonic_f(int kind, double theta, double phi);
/// f3 exactly as printed (degree-5 polynomial in cos/sin of phi).
double platonic_f3_printed(double theta, double phi);

/// Result of fitting V_line(x) = c k / (r sin(n psi + phi0))^2.
struct PhaseFit {
  double phi0 = 0.0;  // in [0, pi)
  double c = 0.0;
  double residual = 0.0;  // max relative residual over the fit points
  int points = 0;
};

/// Fits the phase and scale relating a potential on the three-body line to a
/// sin-family potential in the cylindrical chart. c is normalized by both
/// couplings (the line potential's single parameter, the polar "k"), so
/// sin-family(k = c k_line, psi0 = phi0) reproduces pot_line. Throws
/// ConventionMismatchError when the residual stays above 1e-9.
PhaseFit derive_phase_constants(const Potential& pot_line, const Potential& pot_polar,
                                unsigned seed = 12345, int points = 16);

/// TTW value through the double-angle rewrite.
double ttw_half_angle(const Potential& ttw, const coords::PhaseState& s);

/// a tan^2 psi and a (1/cos^2 psi - 1).
double higgs_tan_form(double a, double psi);
double higgs_sec_form(double a, double psi);

/// Natural Hamiltonian 1/2 g^{ij} p_i p_j + V in `chart`.
Hamiltonian natural_hamiltonian(const Potential& pot, coords::Chart chart, int dim);

}  // namespace supint::potentials
