#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "supint/potentials.hpp"
#include "supint/symmetry.hpp"

namespace {

using namespace supint;
using namespace supint::symmetry;
constexpr double kPi = std::numbers::pi;

TEST(Dihedral, Orders) {
  EXPECT_EQ(dihedral_group(1).order(), 4);
  EXPECT_EQ(dihedral_group(3).order(), 12);
  EXPECT_EQ(dihedral_group(4).order(), 16);
  EXPECT_EQ(dihedral_group(3, 0.7).order(), 12);
}

TEST(Dihedral, GroupAxioms) {
  const auto g = dihedral_group(5, 0.2);
  EXPECT_TRUE(g.has_identity());
  EXPECT_TRUE(g.closed());
  EXPECT_TRUE(g.has_inverses());
  for (const auto& e : g.elements()) EXPECT_LE(e.orthogonality_error(), 1e-12);
}

TEST(Platonic, Orders) {
  EXPECT_EQ(platonic_group(PlatonicKind::kTetra).order(), 12);
  EXPECT_EQ(platonic_group(PlatonicKind::kOcta).order(), 24);
  EXPECT_EQ(platonic_group(PlatonicKind::kIcosa).order(), 60);
}

TEST(Platonic, RotationsOnly) {
  for (auto kind : {PlatonicKind::kTetra, PlatonicKind::kOcta, PlatonicKind::kIcosa}) {
    const auto g = platonic_group(kind);
    EXPECT_TRUE(g.closed());
    EXPECT_TRUE(g.has_inverses());
    for (const auto& e : g.elements()) {
      EXPECT_NEAR(e.det(), 1.0, 1e-12);
      EXPECT_LE(e.orthogonality_error(), 1e-12);
    }
    EXPECT_EQ(platonic_kind_from_string(to_string(kind)), kind);
  }
}

// Rotation angles present in I_60: 15 half-turns, 20 third-turns, 24 fifth-turns.
TEST(Platonic, IcosahedralClasses) {
  const auto g = platonic_group(PlatonicKind::kIcosa);
  int counts[4] = {0, 0, 0, 0};
  for (const auto& e : g.elements()) {
    const double tr = e.matrix.trace();
    if (std::abs(tr - 3) < 1e-9) ++counts[0];
    else if (std::abs(tr + 1) < 1e-9) ++counts[1];
    else if (std::abs(tr) < 1e-9) ++counts[2];
    else ++counts[3];
  }
  EXPECT_EQ(counts[0], 1);
  EXPECT_EQ(counts[1], 15);
  EXPECT_EQ(counts[2], 20);
  EXPECT_EQ(counts[3], 24);
}

TEST(Generation, LimitExceeded) {
  GroupElement r{Eigen::Matrix2d(), "r"};
  const double a = 2 * kPi / 7;
  r.matrix.resize(2, 2);
  r.matrix << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  EXPECT_EQ(generate_group({r}, 7).order(), 7);
  EXPECT_THROW(generate_group({r}, 6), Error);
}

// Brute force over every element for the ambient forms xyz and (xyz)^2.
TEST(Invariance, BruteForce) {
  const auto f1 = on_sphere([](double t, double p) { return potentials::platonic_f(1, t, p); });
  const auto f2 = on_sphere([](double t, double p) { return potentials::platonic_f(2, t, p); });
  const auto f3 = on_sphere([](double t, double p) { return potentials::platonic_f(3, t, p); });
  EXPECT_LE(check_invariance(f1, platonic_group(PlatonicKind::kTetra), 100), 1e-12);
  EXPECT_LE(check_invariance(f2, platonic_group(PlatonicKind::kOcta), 100), 1e-12);
  EXPECT_LE(check_invariance(f3, platonic_group(PlatonicKind::kIcosa), 100), 1e-10);
  const Eigen::Vector3d x = Eigen::Vector3d(1, 2, 3) / std::sqrt(14.0);
  const auto g = platonic_group(PlatonicKind::kOcta);
  double worst = 0;
  for (const auto& e : g.elements()) worst = std::max(worst, std::abs(f1(e.matrix * x) - f1(x)));
  EXPECT_GT(worst, 0.1);
  EXPECT_GT(check_invariance(f1, g, 20), 1e-2);
}

TEST(Permutations, Isometry) {
  const auto id = permutation_isometry({0, 1, 2});
  EXPECT_LE((id.matrix - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
  const auto t = permutation_isometry({1, 0, 2});
  EXPECT_NEAR(t.det(), -1.0, 1e-14);
  const auto c = permutation_isometry({1, 2, 0});
  EXPECT_NEAR(c.det(), 1.0, 1e-14);
  EXPECT_NEAR(c.matrix.trace(), -1.0, 1e-14);
}

TEST(Permutations, Homomorphism) {
  for (int n : {3, 4}) {
    const auto perms = all_permutations(n);
    EXPECT_EQ(perms.size(), n == 3 ? 6u : 24u);
    for (const auto& a : perms) {
      for (const auto& b : perms) {
        const Eigen::MatrixXd lhs = permutation_isometry(compose(a, b)).matrix;
        const Eigen::MatrixXd rhs = permutation_isometry(a).matrix * permutation_isometry(b).matrix;
        EXPECT_LE((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
  }
}

TEST(Permutations, ThreeBodyInvariance) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const char* id : {"calogero", "wolfes"}) {
    const auto v = potentials::make_potential(id);
    for (int i = 0; i < 100; ++i) {
      const Eigen::Vector3d x(u(rng), u(rng), u(rng));
      double a = 0;
      try {
        a = v.value(coords::Chart::kCartesianLine, std::vector<double>{x[0], x[1], x[2]});
      } catch (const SingularityError&) {
        continue;
      }
      for (const auto& s : all_permutations(3)) {
        const Eigen::Vector3d y = permutation_matrix(s) * x;
        const double b = v.value(coords::Chart::kCartesianLine, std::vector<double>{y[0], y[1], y[2]});
        EXPECT_LE(std::abs(a - b), 1e-12 * (1 + std::abs(a))) << id;
      }
    }
  }
}

TEST(Permutations, ComposeOrder) {
  const Permutation a{1, 2, 0}, b{1, 0, 2};
  const auto ab = compose(a, b);
  const Eigen::MatrixXd lhs = permutation_matrix(ab);
  const Eigen::MatrixXd rhs = permutation_matrix(a) * permutation_matrix(b);
  EXPECT_EQ((lhs - rhs).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Labels, IdentityFirst) {
  const auto g = platonic_group(PlatonicKind::kOcta);
  const auto& e = g.elements().front();
  EXPECT_EQ(e.label, "e");
  EXPECT_LE((e.matrix - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff(), 1e-15);
}

}  // namespace
