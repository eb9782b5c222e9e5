#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "supint/extensions.hpp"
#include "supint/integrals.hpp"

namespace {

using namespace supint;
using namespace supint::extensions;
constexpr double kPi = std::numbers::pi;

FieldFunction zero_field() {
  return FieldFunction::generic([](auto q) { return 0.0 * q[0]; });
}

TEST(SKappa, Branches) {
  EXPECT_EQ(s_kappa(0, 2.5), 2.5);
  EXPECT_NEAR(s_kappa(1, kPi / 2), 1.0, 1e-15);
  EXPECT_NEAR(s_kappa(-1, 1), 1.1752011936438014, 1e-15);
  EXPECT_NEAR(s_kappa(4, 0.3), std::sin(0.6) / 2, 1e-15);
  EXPECT_NEAR(s_kappa_prime(-1, 1), std::cosh(1.0), 1e-15);
}

// The leading correction is -kappa x^3 / 6, so the gap closes linearly in kappa.
TEST(SKappa, ApproachesIdentity) {
  for (double x : {-10.0, -3.0, 0.5, 7.0, 10.0}) {
    for (double k : {1e-6, 1e-8, 1e-10}) {
      EXPECT_NEAR(s_kappa(k, x) - x, -k * x * x * x / 6, 1e-3 * k * std::abs(x * x * x) + 1e-14);
      EXPECT_NEAR(s_kappa(-k, x) - x, k * x * x * x / 6, 1e-3 * k * std::abs(x * x * x) + 1e-14);
    }
  }
}

TEST(CurvedChart, ChristoffelsMatchMetric) {
  const auto sphere = CurvedChart::sphere2();
  for (double t : {0.3, 1.0, 2.5}) {
    const std::vector<double> q{t, 0.7};
    EXPECT_LE(christoffel_consistency(sphere, q), 1e-8);
  }
  EXPECT_LE(christoffel_consistency(CurvedChart::euclidean2(), std::vector<double>{0.1, 0.2}), 1e-12);
  EXPECT_THROW(sphere.metric(std::vector<double>{0.0, 0.3}), SingularChartError);
}

TEST(Hessian, FlatAffineKernel) {
  const auto g = FieldFunction::generic([](auto q) { return 0.3 + 1.7 * q[0] - 0.4 * q[1]; });
  EXPECT_LE(hessian_residual(g, CurvedChart::euclidean2(), std::vector<double>{0.4, -1.2}), 1e-6);
}

TEST(Hessian, SphereLinearFunctions) {
  const auto sphere = CurvedChart::sphere2();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> th(0.3, kPi - 0.3), ph(0, 2 * kPi), a(-1, 1);
  for (int i = 0; i < 20; ++i) {
    const double a0 = a(rng), a1 = a(rng), a2 = a(rng);
    const auto g = FieldFunction::generic([=](auto q) {
      using std::cos;
      using std::sin;
      return a0 * sin(q[0]) * cos(q[1]) + a1 * sin(q[0]) * sin(q[1]) + a2 * cos(q[0]);
    });
    EXPECT_LE(hessian_residual(g, sphere, std::vector<double>{th(rng), ph(rng)}), 1e-6);
  }
}

TEST(Hessian, QuadraticControls) {
  const auto sphere = CurvedChart::sphere2();
  const auto c2 = FieldFunction::generic([](auto q) {
    using std::cos;
    return cos(q[0]) * cos(q[0]);
  });
  const auto xy = FieldFunction::generic([](auto q) {
    using std::cos;
    using std::sin;
    return sin(q[0]) * sin(q[0]) * cos(q[1]) * sin(q[1]);
  });
  for (double t : {0.4, 1.0, 2.0}) {
    EXPECT_GE(hessian_residual(c2, sphere, std::vector<double>{t, 0.3}), 1e-2);
    EXPECT_GE(hessian_residual(xy, sphere, std::vector<double>{t, 0.3}), 1e-2);
  }
}

TEST(Vteo, TrivialCases) {
  const auto g = FieldFunction::generic([](auto q) {
    using std::cos;
    return cos(q[0]);
  });
  EXPECT_EQ(vteo_residual(zero_field(), g, 1.0, CurvedChart::sphere2(), std::vector<double>{0.8, 0.2}), 0.0);
  const auto v = FieldFunction::generic([](auto q) { return 2.0 * q[0] + 0.0 * q[1]; });
  const auto w = FieldFunction::generic([](auto q) { return 0.0 * q[0] + 3.0 * q[1]; });
  EXPECT_NEAR(vteo_residual(v, w, 0.0, CurvedChart::euclidean2(), std::vector<double>{0.5, 0.7}), 0.0, 1e-12);
}

TEST(Vteo, SinFamilyOnCircle) {
  const int n = 3;
  const double k = 1.2, psi0 = 0.3;
  const auto v = FieldFunction::generic([=](auto q) {
    using std::sin;
    const auto s = sin(n * q[0] + psi0);
    return k / (s * s);
  });
  const auto g = FieldFunction::generic([=](auto q) {
    using std::cos;
    return cos(n * q[0] + psi0);
  });
  const auto circle = CurvedChart::circle1(double(n * n));
  for (double psi : {0.1, 0.4, 0.6}) {
    const std::vector<double> q{psi};
    EXPECT_LE(vteo_residual(v, g, n * n, circle, q), 1e-9);
    EXPECT_LE(hessian_residual(g, circle, q), 1e-6);
  }
}

TEST(Extend, SignConventionFlat) {
  ExtensionSpec spec;
  spec.L = {CurvedChart::euclidean2(), FieldFunction::generic([](auto q) { return q[0] * q[0] + 0.5 * q[1]; })};
  spec.K = 0;
  spec.kappa = -1;
  const auto h = extend_hamiltonian(spec);
  const Eigen::Vector3d q(0.3, 0.7, -0.2), p(1.1, 0.4, -0.6);
  const double l = 0.5 * (0.16 + 0.36) + 0.49 - 0.1;
  EXPECT_NEAR(h.value(q, p), 0.5 * 1.21 + l, 1e-15);
}

TEST(Extend, CurvedCoefficients) {
  ExtensionSpec spec;
  spec.L = {CurvedChart::circle1(1.0), zero_field()};
  spec.K = 1;
  spec.kappa = 0;
  EXPECT_NEAR(spec.alpha(1.7), 1 / (1.7 * 1.7), 1e-15);
  spec.kappa = 1;
  EXPECT_NEAR(spec.alpha(kPi / 4), 2.0, 1e-14);
  EXPECT_THROW(spec.alpha(0.0), SingularityError);
}

// K = n^2, m = n, kappa = 0 on the circle gives H = p_u^2/2 + L/u^2, the planar sin-family.
TEST(Extend, ReproducesPlanarHamiltonian) {
  const int n = 3;
  const double k = 1.4, psi0 = 0.2;
  ExtensionSpec spec;
  spec.L = {CurvedChart::circle1(double(n * n)), FieldFunction::generic([=](auto q) {
              using std::sin;
              const auto s = sin(n * q[0] + psi0);
              return k / (s * s);
            })};
  spec.K = n * n;
  spec.m = n;
  const auto h = extend_hamiltonian(spec);
  EXPECT_EQ(h.chart, coords::Chart::kPolar2);
  const auto hs = potentials::natural_hamiltonian(
      potentials::make_potential("sin-family", {{"k", k}, {"n", double(n)}, {"psi0", psi0}}), coords::Chart::kPolar2, 2);
  const Eigen::Vector2d q(1.3, 0.4), p(0.2, -0.7);
  EXPECT_NEAR(h.value(q, p), hs.value(q, p), 1e-14);
}

TEST(ULadder, ConventionWithoutDerivation) {
  const auto one = FieldFunction::generic([](auto q) { return 1.0 + 0.0 * q[0]; });
  const auto zero = ScalarFunction::generic([](const auto& u) { return 0.0 * u; });
  const auto u2 = build_U_ladder(one, zero, 2, {CurvedChart::sphere2(), zero_field()});
  const coords::PhaseState s{coords::Chart::kSpherical3, Eigen::Vector3d(1.2, 0.9, 0.4), Eigen::Vector3d(0.7, 0.3, -0.2)};
  EXPECT_NEAR(u2(s), 0.49, 1e-15);
  const auto g = FieldFunction::generic([](auto q) {
    using std::cos;
    return cos(q[0]);
  });
  EXPECT_NEAR(build_U_ladder(g, zero, 1, {CurvedChart::sphere2(), zero_field()})(s), 0.7 * std::cos(0.9), 1e-15);
}

TEST(ULadder, LiePowersOfLinearFunction) {
  // On the free sphere X_L cos(theta) = -p_theta sin(theta) and X_L^2 adds -2L cos(theta).
  const BaseHamiltonian l{CurvedChart::sphere2(), zero_field()};
  const auto g = FieldFunction::generic([](auto q) {
    using std::cos;
    return cos(q[0]);
  });
  const std::vector<double> q{0.8, 0.3}, p{0.5, 0.4};
  const auto xs = lie_powers(g, l, 2, q, p);
  ASSERT_EQ(xs.size(), 3u);
  EXPECT_NEAR(xs[0], std::cos(0.8), 1e-15);
  EXPECT_NEAR(xs[1], -0.5 * std::sin(0.8), 1e-14);
  const double energy = 0.5 * (0.25 + 0.16 / std::pow(std::sin(0.8), 2));
  EXPECT_NEAR(xs[2], -2 * energy * std::cos(0.8), 1e-13);
}

integrals::PhaseFunction planar_ladder(int n, double k, double psi0) {
  auto v = FieldFunction::generic([=](auto q) {
    using std::sin;
    const auto s = sin(n * q[0] + psi0);
    return k / (s * s);
  });
  auto g = FieldFunction::generic([=](auto q) {
    using std::cos;
    return cos(n * q[0] + psi0);
  });
  auto gamma = ScalarFunction::generic([n](const auto& u) { return 1.0 / (n * u); });
  return build_U_ladder(g, gamma, n, {CurvedChart::circle1(double(n * n)), v});
}

TEST(ULadder, AgreesWithLadder) {
  const double k = 1.5, psi0 = 0.2;
  for (int n = 1; n <= 3; ++n) {
    const auto u = planar_ladder(n, k, psi0);
    const auto l = integrals::build_ladder_integral(n, integrals::sin_family_profile(k, n, psi0), psi0);
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> a(0.2, 0.8), r(0.8, 1.5), p(-1, 1);
    for (int i = 0; i < 100; ++i) {
      const coords::PhaseState s{coords::Chart::kPolar2, Eigen::Vector2d(r(rng), kPi / n * a(rng) - psi0 / n),
                                 Eigen::Vector2d(p(rng), p(rng))};
      EXPECT_NEAR(u(s), l(s), 1e-12) << n;
    }
  }
}

TEST(ULadder, CommutesWithExtension) {
  const int n = 2;
  const double k = 0.9, psi0 = 0.1;
  const auto u = planar_ladder(n, k, psi0);
  ExtensionSpec spec;
  spec.L = {CurvedChart::circle1(double(n * n)), FieldFunction::generic([=](auto q) {
              using std::sin;
              const auto s = sin(n * q[0] + psi0);
              return k / (s * s);
            })};
  spec.K = n * n;
  spec.m = n;
  const auto h = integrals::hamiltonian_function(extend_hamiltonian(spec));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> a(0.2, 0.8), r(0.8, 1.5), p(-1, 1);
  for (int i = 0; i < 100; ++i) {
    const coords::PhaseState s{coords::Chart::kPolar2, Eigen::Vector2d(r(rng), kPi / n * a(rng) - psi0 / n),
                               Eigen::Vector2d(p(rng), p(rng))};
    EXPECT_LE(std::abs(integrals::poisson_bracket(u, h, s)), 1e-6);
  }
}

TEST(ULadder, OrderLimit) {
  const auto zero = ScalarFunction::generic([](const auto& u) { return 0.0 * u; });
  EXPECT_THROW(build_U_ladder(zero_field(), zero, kMaxUOrder + 1, {CurvedChart::sphere2(), zero_field()}), Error);
}

}  // namespace
