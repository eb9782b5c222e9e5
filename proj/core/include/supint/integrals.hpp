#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "supint/coords.hpp"
#include "supint/hamiltonian.hpp"
#include "supint/potentials.hpp"
#include "supint/scalar_function.hpp"

namespace supint::integrals {

/// p_r^a p_psi^b r^(-c) coeff.
struct Monomial {
  int a = 0;
  int b = 0;
  int c = 0;
  double coeff = 0.0;
};

/// A scalar function on phase space in a fixed chart. Evaluating on a state in
/// another chart transforms the state first.
class PhaseFunction {
 public:
  using Evaluator = std::function<double(const Eigen::VectorXd& q, const Eigen::VectorXd& p)>;

  PhaseFunction() = default;
  PhaseFunction(std::string name, coords::Chart chart, int dim, int degree, Evaluator f);

  const std::string& name() const noexcept { return name_; }
  coords::Chart chart() const noexcept { return chart_; }
  int dim() const noexcept { return dim_; }
  /// Total degree in the momenta.
  int degree() const noexcept { return degree_; }

  double operator()(const coords::PhaseState& s) const;
  double eval(const Eigen::VectorXd& q, const Eigen::VectorXd& p) const { return f_(q, p); }

 private:
  std::string name_;
  coords::Chart chart_ = coords::Chart::kCartesianLine;
  int dim_ = 0;
  int degree_ = 0;
  Evaluator f_;
};

double eval_phase_function(const PhaseFunction& f, const coords::PhaseState& s);

PhaseFunction hamiltonian_function(const Hamiltonian& h, std::string name = "H");

inline constexpr int kMaxLadderOrder = 16;

/// The ladder operator [p_r + (p_psi d/dpsi - F'(psi) d/dp_psi) / (n r)]^n
/// applied to cos(n psi + psi0), expanded at `psi`. Terms with equal exponents
/// are merged; zero coefficients are kept so the shape is fixed by n.
std::vector<Monomial> ladder_polynomial(int n, const ScalarFunction& f, double psi0, double psi);

/// L_n as a phase function in polar-2 (r, psi) or cylindrical-3 (r, psi, u).
PhaseFunction build_ladder_integral(int n, ScalarFunction f, double psi0,
                                    coords::Chart chart = coords::Chart::kPolar2);

/// F = k / sin^2(n psi + psi0) with jet support.
ScalarFunction sin_family_profile(double k, int n, double psi0);

struct StandardIntegralSet {
  std::string system;
  coords::Chart chart = coords::Chart::kCartesianLine;
  int dim = 0;
  /// members[0] is the Hamiltonian.
  std::vector<PhaseFunction> members;

  const PhaseFunction& hamiltonian() const { return members.front(); }
  const PhaseFunction& get(const std::string& name) const;
  void add(PhaseFunction f) { members.push_back(std::move(f)); }
};

/// {H, H1, H2, H3} in cylindrical-3 for V = F(psi)/r^2.
StandardIntegralSet three_body_integrals(ScalarFunction f, const std::string& system = "three-body");
/// {1/2 p_u^2 + H, H1, I_a, I_b, H5, H6} in spherical-cylindrical-4 for an
/// evans-1..4 potential. I_a and I_b are the two further quadratic integrals
/// of the three-dimensional system; evans-1 built from a custom F still gets
/// them, since they only involve F itself.
StandardIntegralSet evans_integrals(const potentials::Potential& evans);
/// {H} on sphere-2 for platonic-i, higgs and evans sphere parts.
StandardIntegralSet sphere_integrals(const potentials::Potential& pot);

/// Dispatches on the potential: polar-form entries give the three-body set,
/// evans-i the four-dimensional set, sphere-only entries the sphere set.
StandardIntegralSet standard_integrals(const potentials::Potential& pot);
/// Same, building the potential from the catalog first.
StandardIntegralSet standard_integrals(const std::string& system, const potentials::ParamMap& params = {});

using PhaseCallable = std::function<double(const coords::PhaseState&)>;

/// Relative base step of the difference scheme: cbrt(machine epsilon).
double default_bracket_step();

/// {f, g} = sum_i df/dq^i dg/dp_i - df/dp_i dg/dq^i in the chart of `s`, by
/// central differences (step h_i = step (1 + |x_i|)) with one Richardson step.
double poisson_bracket(const PhaseCallable& f, const PhaseCallable& g, const coords::PhaseState& s,
                       double step = default_bracket_step());

/// Gradient (d/dq, d/dp) of f at s by the same difference scheme.
void phase_gradient(const PhaseCallable& f, const coords::PhaseState& s, Eigen::VectorXd& dq, Eigen::VectorXd& dp,
                    double step = default_bracket_step());

}  // namespace supint::integrals
