#pragma once

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "supint/coords.hpp"
#include "supint/hamiltonian.hpp"
#include "supint/integrals.hpp"
#include "supint/multijet.hpp"
#include "supint/scalar_function.hpp"

namespace supint::extensions {

/// sin(sqrt(k) x)/sqrt(k), x, sinh(sqrt(-k) x)/sqrt(-k) for k >0, =0, <0.
double s_kappa(double kappa, double x);
/// d/dx s_kappa(kappa, x).
double s_kappa_prime(double kappa, double x);

/// Base manifolds with diagonal metrics.
///   euclidean-2 (x, y)          g = diag(1, 1),            K = 0
///   sphere-2    (theta, phi)    g = diag(1, sin^2 theta),  K = 1
///   circle-1    (psi)           g = 1; K is a free label since a curve has
///                               no intrinsic curvature
struct CurvedChart {
  enum class Tag { kEuclidean2, kSphere2, kCircle1 };

  Tag tag = Tag::kEuclidean2;
  int dim = 2;
  double K = 0.0;

  static CurvedChart euclidean2() { return {Tag::kEuclidean2, 2, 0.0}; }
  static CurvedChart sphere2() { return {Tag::kSphere2, 2, 1.0}; }
  static CurvedChart circle1(double K) { return {Tag::kCircle1, 1, K}; }

  std::string_view name() const;
  /// Chart of the cone u x base used for extended phase states:
  /// circle-1 -> polar-2 (r, psi), sphere-2 -> spherical-3 (r, theta, phi),
  /// euclidean-2 -> cartesian-line of dimension 3 (u, x, y).
  coords::Chart product_chart() const;

  /// Throws SingularChartError where the metric degenerates.
  void check(std::span<const double> q) const;

  Eigen::MatrixXd metric(std::span<const double> q) const;
  Eigen::MatrixXd inverse_metric(std::span<const double> q) const;
  /// gamma[k](i, j) = Gamma^k_ij.
  std::vector<Eigen::MatrixXd> christoffel(std::span<const double> q) const;

  /// Diagonal of g^{-1} on multivariate jets.
  std::vector<MultiJet> inverse_metric_diag(std::span<const MultiJet> q) const;
};

/// max |Gamma_analytic - Gamma from differenced metric|.
double christoffel_consistency(const CurvedChart& chart, std::span<const double> q);

/// || grad grad G + K g G ||_inf with second derivatives by central
/// differences.
double hessian_residual(const FieldFunction& g, const CurvedChart& chart, std::span<const double> q);

/// g^{ij} dV_i dG_j - 2 K V G.
double vteo_residual(const FieldFunction& v, const FieldFunction& g, double K, const CurvedChart& chart,
                     std::span<const double> q);

/// L = 1/2 g^{ij} p_i p_j + V(q) on a CurvedChart.
struct BaseHamiltonian {
  CurvedChart chart;
  FieldFunction V;

  double value(std::span<const double> q, std::span<const double> p) const;
  /// dL/dq and dL/dp.
  void gradient(std::span<const double> q, std::span<const double> p, std::span<double> dq,
                std::span<double> dp) const;
};

struct ExtensionSpec {
  BaseHamiltonian L;
  double K = 0.0;
  double kappa = 0.0;
  double u0 = 0.0;
  int m = 1;

  double c() const { return K / m; }
  /// Coefficient alpha(u) of L: -kappa for K = 0, K / S_kappa(c u + u0)^2 otherwise.
  double alpha(double u) const;
  double alpha_prime(double u) const;
};

/// H = 1/2 p_u^2 + alpha(u) L on coordinates (u, q) and momenta (p_u, p), tagged
/// with the base chart's product_chart(). Throws SingularityError where
/// S_kappa vanishes.
Hamiltonian extend_hamiltonian(const ExtensionSpec& spec);

inline constexpr int kMaxUOrder = 8;

/// U^m(G) with U = p_u + gamma(u) X_L, X_L f = {f, L}. Since neither p_u nor
/// gamma(u) is touched by X_L, U^m(G) = sum_k C(m,k) p_u^(m-k) gamma^k X_L^k G.
/// Powers of X_L are expanded as momentum polynomials with jet coefficients.
integrals::PhaseFunction build_U_ladder(FieldFunction g, ScalarFunction gamma, int m, BaseHamiltonian L);

/// X_L^k G at (q, p) for k = 0..m.
std::vector<double> lie_powers(const FieldFunction& g, const BaseHamiltonian& L, int m,
                               std::span<const double> q, std::span<const double> p);

}  // namespace supint::extensions
