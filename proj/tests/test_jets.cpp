#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "supint/dual.hpp"
#include "supint/jet.hpp"
#include "supint/multijet.hpp"

namespace {

using supint::Elementary;
using supint::Jet;
using supint::MultiJet;

TEST(Jet, SinMaclaurin) {
  const Jet s = supint::jet_elementary(Elementary::kSin, 0.0, 3);
  EXPECT_DOUBLE_EQ(s[0], 0.0);
  EXPECT_DOUBLE_EQ(s[1], 1.0);
  EXPECT_DOUBLE_EQ(s[2], 0.0);
  EXPECT_DOUBLE_EQ(s[3], -1.0 / 6.0);
}

TEST(Jet, CosMaclaurin) {
  const Jet c = supint::jet_elementary(Elementary::kCos, 0.0, 2);
  EXPECT_DOUBLE_EQ(c[0], 1.0);
  EXPECT_DOUBLE_EQ(c[1], 0.0);
  EXPECT_DOUBLE_EQ(c[2], -0.5);
}

TEST(Jet, InvSinSqAtHalfPi) {
  const Jet f = supint::jet_elementary(Elementary::kInvSinSq, std::numbers::pi / 2, 1);
  EXPECT_NEAR(f[0], 1.0, 1e-15);
  EXPECT_NEAR(f[1], 0.0, 1e-15);
}

// Coefficients of csc^2 at a point against finite differences of the closed form.
TEST(Jet, InvSinSqMatchesDifferences) {
  const double x = 0.7;
  const Jet f = supint::inv_sin_sq(Jet::variable(x, 4));
  auto g = [](double t) { return 1.0 / (std::sin(t) * std::sin(t)); };
  const double h = 1e-5;
  const double d1 = (g(x + h) - g(x - h)) / (2 * h);
  const double k = 1e-4;
  const double d2 = (g(x + k) - 2 * g(x) + g(x - k)) / (k * k);
  EXPECT_NEAR(f[0], g(x), 1e-14);
  EXPECT_NEAR(f[1], d1, 1e-5);
  EXPECT_NEAR(2 * f[2], d2, 1e-4);
}

TEST(Jet, ArithmeticAgreesWithComposition) {
  const Jet x = Jet::variable(0.3, 6);
  const Jet a = supint::sin(x) * supint::sin(x) + supint::cos(x) * supint::cos(x);
  EXPECT_NEAR(a[0], 1.0, 1e-15);
  for (int j = 1; j <= 6; ++j) EXPECT_NEAR(a[j], 0.0, 1e-14) << j;
  const Jet q = supint::exp(x) / supint::exp(x);
  for (int j = 1; j <= 6; ++j) EXPECT_NEAR(q[j], 0.0, 1e-13) << j;
}

TEST(Jet, DerivativeShiftsCoefficients) {
  const Jet x = Jet::variable(0.0, 5);
  const Jet e = supint::exp(x);
  for (int j = 0; j <= 5; ++j) EXPECT_NEAR(e.derivative_value(j), 1.0, 1e-14);
  const Jet d = e.derivative();
  EXPECT_EQ(d.order(), 4);
  EXPECT_NEAR(d[3], 1.0 / 6.0, 1e-15);
  EXPECT_NEAR(e.evaluate(0.1), std::exp(0.1), 1e-7);
}

TEST(Jet, PowAndSqrt) {
  const Jet x = Jet::variable(2.0, 3);
  const Jet p = supint::pow(x, 3.0);
  EXPECT_NEAR(p[0], 8.0, 1e-14);
  EXPECT_NEAR(p[1], 12.0, 1e-13);
  EXPECT_NEAR(p[2], 6.0, 1e-13);
  EXPECT_NEAR(p[3], 1.0, 1e-13);
  const Jet s = supint::sqrt(x);
  EXPECT_NEAR(s[1], 0.5 / std::sqrt(2.0), 1e-15);
}

TEST(Dual, ProductRule) {
  const supint::Dual x = supint::Dual::variable(0.4, 0);
  const supint::Dual y = sin(x) * x;
  EXPECT_NEAR(y.d[0], std::cos(0.4) * 0.4 + std::sin(0.4), 1e-15);
}

TEST(MultiJet, MixedPartials) {
  const MultiJet x = MultiJet::variable(0.5, 0, 2, 3);
  const MultiJet y = MultiJet::variable(-0.2, 1, 2, 3);
  const MultiJet f = supint::sin(x) * supint::cos(y);
  const int a11[2] = {1, 1};
  EXPECT_NEAR(f.coeff(a11), -std::cos(0.5) * std::sin(-0.2), 1e-15);
  const int a21[2] = {2, 1};
  EXPECT_NEAR(f.coeff(a21), std::sin(0.5) / 2 * std::sin(-0.2), 1e-15);
  const MultiJet fx = f.partial(0);
  EXPECT_EQ(fx.order(), 2);
  EXPECT_NEAR(fx.value(), std::cos(0.5) * std::cos(-0.2), 1e-15);
}

TEST(MultiJet, DivisionInvertsProduct) {
  const MultiJet x = MultiJet::variable(1.3, 0, 3, 4);
  const MultiJet y = MultiJet::variable(0.8, 1, 3, 4);
  const MultiJet z = MultiJet::variable(-0.4, 2, 3, 4);
  const MultiJet a = x * y + z;
  const MultiJet r = (a * supint::sin(y)) / a;
  const MultiJet d = r - supint::sin(y);
  const int idx[3][3] = {{1, 0, 0}, {0, 2, 0}, {1, 1, 2}};
  for (const auto& i : idx) EXPECT_NEAR(d.coeff(i), 0.0, 1e-13);
}

}  // namespace
