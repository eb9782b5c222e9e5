#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "supint/coords.hpp"

namespace {

using namespace supint::coords;
using Eigen::VectorXd;
constexpr double kPi = std::numbers::pi;

TEST(LineToOrthogonal, ThreePoints) {
  const auto s = line_to_orthogonal({Eigen::Vector3d(1, 0, -1), Eigen::Vector3d::Zero()});
  EXPECT_EQ(s.chart, Chart::kOrthogonalZ);
  EXPECT_NEAR(s.q[0], 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(s.q[1], 3 / std::sqrt(6.0), 1e-15);
  EXPECT_NEAR(s.q[2], 0.0, 1e-15);
}

TEST(LineToOrthogonal, DiagonalMapsToAxis) {
  auto s = line_to_orthogonal({Eigen::Vector3d(1, 1, 1), Eigen::Vector3d::Zero()});
  EXPECT_NEAR(s.q[0], 0.0, 1e-15);
  EXPECT_NEAR(s.q[1], 0.0, 1e-15);
  EXPECT_NEAR(s.q[2], std::sqrt(3.0), 1e-15);
  const double a = -0.37;
  s = line_to_orthogonal({VectorXd::Constant(4, a), VectorXd::Zero(4)});
  EXPECT_NEAR(s.q.head(3).norm(), 0.0, 1e-15);
  EXPECT_NEAR(s.q[3], 2 * a, 1e-15);
}

TEST(OrthogonalMatrix, Orthonormal) {
  for (int n = 2; n <= 8; ++n) {
    const auto m = orthogonal_matrix(n);
    const double err = (m * m.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    EXPECT_LE(err, 1e-14) << n;
  }
}

TEST(OrthogonalToLine, Inverse) {
  PhaseState s{Chart::kOrthogonalZ, Eigen::Vector3d(1 / std::sqrt(2.0), 3 / std::sqrt(6.0), 0), Eigen::Vector3d::Zero()};
  auto c = orthogonal_to_line(s);
  EXPECT_NEAR(c.x[0], 1.0, 1e-15);
  EXPECT_NEAR(c.x[1], 0.0, 1e-15);
  EXPECT_NEAR(c.x[2], -1.0, 1e-15);
  s.q.setZero();
  EXPECT_EQ(orthogonal_to_line(s).x.cwiseAbs().maxCoeff(), 0.0);
  s.chart = Chart::kCylindrical3;
  EXPECT_THROW(orthogonal_to_line(s), supint::ChartMismatchError);
}

TEST(OrthogonalToLine, RoundTrip) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int n = 2; n <= 5; ++n) {
    for (int i = 0; i < 100; ++i) {
      LineConfig c{VectorXd(n), VectorXd(n)};
      for (int j = 0; j < n; ++j) c.x[j] = u(rng), c.p[j] = u(rng);
      const auto back = orthogonal_to_line(line_to_orthogonal(c));
      EXPECT_LE((back.x - c.x).cwiseAbs().maxCoeff(), 1e-13);
      EXPECT_LE((back.p - c.p).cwiseAbs().maxCoeff(), 1e-13);
    }
  }
}

TEST(ChartTransform, CylindricalConvention) {
  PhaseState s{Chart::kOrthogonalZ, Eigen::Vector3d(1 / std::sqrt(2.0), std::sqrt(1.5), 0), Eigen::Vector3d::Zero()};
  const auto c = chart_transform(s, Chart::kCylindrical3);
  EXPECT_NEAR(c.q[0], std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(c.q[1], kPi / 3, 1e-15);
  EXPECT_NEAR(c.q[2], 0.0, 1e-15);
  EXPECT_EQ(c.p.cwiseAbs().maxCoeff(), 0.0);
}

TEST(ChartTransform, KineticEnergyCylindrical) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 100; ++i) {
    PhaseState s{Chart::kOrthogonalZ, Eigen::Vector3d(u(rng), u(rng), u(rng)), Eigen::Vector3d(u(rng), u(rng), u(rng))};
    const auto c = chart_transform(s, Chart::kCylindrical3);
    const double t_cyl = 0.5 * (c.p[0] * c.p[0] + c.p[1] * c.p[1] / (c.q[0] * c.q[0]) + c.p[2] * c.p[2]);
    EXPECT_NEAR(t_cyl, 0.5 * s.p.squaredNorm(), 1e-10);
  }
}

TEST(ChartTransform, SingularRadius) {
  PhaseState s{Chart::kOrthogonalZ, Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(1, 0, 0)};
  EXPECT_THROW(chart_transform(s, Chart::kCylindrical3), supint::SingularChartError);
}

struct Pair {
  Chart from;
  Chart to;
  int dim;
};

const Pair kPairs[] = {
    {Chart::kOrthogonalZ, Chart::kCylindrical3, 3},
    {Chart::kOrthogonalZ, Chart::kSphericalCylindrical4, 4},
    {Chart::kCartesianLine, Chart::kPolar2, 2},
    {Chart::kCartesianLine, Chart::kSpherical3, 3},
};

PhaseState random_state(Chart chart, int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.3, 1.5);
  std::bernoulli_distribution sign;
  PhaseState s{chart, VectorXd(n), VectorXd(n)};
  for (int j = 0; j < n; ++j) {
    s.q[j] = sign(rng) ? u(rng) : -u(rng);
    s.p[j] = sign(rng) ? u(rng) : -u(rng);
  }
  return s;
}

TEST(ChartTransform, RoundTripAndEnergy) {
  std::mt19937_64 rng(11);
  for (const auto& pr : kPairs) {
    for (int i = 0; i < 200; ++i) {
      const auto s = random_state(pr.from, pr.dim, rng);
      const auto t = chart_transform(s, pr.to);
      const auto b = chart_transform(t, pr.from);
      for (int j = 0; j < pr.dim; ++j) {
        EXPECT_NEAR(b.q[j], s.q[j], 1e-12 * (1 + std::abs(s.q[j])));
        EXPECT_NEAR(b.p[j], s.p[j], 1e-12 * (1 + std::abs(s.p[j])));
      }
      const double ts = kinetic_energy(s), tt = kinetic_energy(t);
      EXPECT_LE(std::abs(ts - tt), 1e-10 * (1 + std::abs(ts)));
    }
  }
}

// J^T Omega J = Omega for the full phase-space map, J by central differences.
TEST(ChartTransform, Canonical) {
  std::mt19937_64 rng(5);
  for (const auto& pr : kPairs) {
    const int n = pr.dim;
    Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    omega.topRightCorner(n, n).setIdentity();
    omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
    for (int i = 0; i < 20; ++i) {
      const auto s = random_state(pr.from, n, rng);
      auto image = [&](const VectorXd& z) {
        PhaseState x{pr.from, z.head(n), z.tail(n)};
        const auto y = chart_transform(x, pr.to);
        VectorXd out(2 * n);
        out << y.q, y.p;
        return out;
      };
      VectorXd z(2 * n);
      z << s.q, s.p;
      Eigen::MatrixXd jac(2 * n, 2 * n);
      for (int k = 0; k < 2 * n; ++k) {
        const double h = 1e-6 * (1 + std::abs(z[k]));
        VectorXd zp = z, zm = z;
        zp[k] += h;
        zm[k] -= h;
        jac.col(k) = (image(zp) - image(zm)) / (2 * h);
      }
      const double err = (jac.transpose() * omega * jac - omega).cwiseAbs().maxCoeff();
      EXPECT_LE(err, 1e-6) << to_string(pr.to);
    }
  }
}

TEST(NormalizeAngle, Examples) {
  EXPECT_NEAR(normalize_angle(7 * kPi / 3, 2 * kPi), kPi / 3, 1e-15);
  EXPECT_NEAR(normalize_angle(-kPi / 6, 2 * kPi), 11 * kPi / 6, 1e-15);
  EXPECT_EQ(normalize_angle(0.0, kPi), 0.0);
  const double r = normalize_angle(-1e-18, 2 * kPi);
  EXPECT_GE(r, 0.0);
  EXPECT_LT(r, 2 * kPi);
}

TEST(Charts, NamesRoundTrip) {
  for (auto c : all_charts()) EXPECT_EQ(chart_from_string(to_string(c)), c);
  EXPECT_THROW(chart_from_string("torus"), supint::Error);
}

}  // namespace
