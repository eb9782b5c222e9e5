#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "supint/potentials.hpp"

namespace {

using namespace supint;
using namespace supint::potentials;
using coords::Chart;
constexpr double kPi = std::numbers::pi;

double value_at(const Potential& v, Chart chart, std::vector<double> q) { return v.value(chart, q); }

TEST(MakePotential, Construction) {
  const auto c = make_potential("calogero", {{"k", 1.0}});
  EXPECT_TRUE(c.supports(Chart::kCartesianLine, 3));
  EXPECT_TRUE(c.supports(Chart::kCylindrical3, 3));
  EXPECT_NO_THROW(make_potential("ttw", {{"k1", 0}, {"k2", 1}, {"k3", 1}, {"p", 3}, {"q", 2}}));
  EXPECT_THROW(make_potential("sin-family", {{"n", 0}}), ParameterError);
  EXPECT_THROW(make_potential("ttw", {{"p", 2}, {"q", 4}}), ParameterError);
  EXPECT_THROW(make_potential("ttw", {{"h", 1.5}}), ParameterError);
  EXPECT_THROW(make_potential("calogero", {{"kk", 1.0}}), ParameterError);
  EXPECT_THROW(make_potential("kepler"), UnknownIdError);
}

TEST(MakePotential, CatalogComplete) {
  std::vector<std::string> ids;
  for (const auto& e : catalog()) ids.push_back(e.id);
  for (const char* id : {"calogero", "wolfes", "sin-family", "ttw", "evans-1", "evans-2", "evans-3", "evans-4",
                         "higgs-cuboctahedral", "platonic-1", "platonic-2", "platonic-3"}) {
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
    EXPECT_NO_THROW(make_potential(id)) << id;
  }
}

TEST(Value, DirectEvaluation) {
  EXPECT_NEAR(value_at(make_potential("calogero"), Chart::kCartesianLine, {1, 0, -1}), 2.25, 1e-15);
  const auto ttw = make_potential("ttw", {{"k1", 0}, {"k2", 1}, {"k3", 1}, {"h", 1}});
  EXPECT_NEAR(value_at(ttw, Chart::kPolar2, {1, kPi / 4}), 4.0, 1e-14);
}

TEST(Value, SingularWalls) {
  EXPECT_THROW(value_at(make_potential("wolfes"), Chart::kCartesianLine, {2, 0, -2}), SingularityError);
  const auto p1 = make_potential("platonic-1");
  for (double phi : {0.3, 1.1, 2.0}) {
    EXPECT_THROW(value_at(p1, Chart::kSphere2, {kPi / 2, phi}), SingularityError);
  }
  try {
    value_at(make_potential("calogero"), Chart::kCartesianLine, {1, 1, -1});
    FAIL();
  } catch (const SingularityError& e) {
    EXPECT_FALSE(e.denominator().empty());
  }
}

TEST(Value, TranslationInvariance) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3, 3);
  for (const char* id : {"calogero", "wolfes"}) {
    const auto v = make_potential(id);
    for (int i = 0; i < 100; ++i) {
      std::vector<double> x{u(rng), u(rng), u(rng)};
      const double c = u(rng);
      std::vector<double> y{x[0] + c, x[1] + c, x[2] + c};
      double a = 0;
      try {
        a = v.value(Chart::kCartesianLine, x);
      } catch (const SingularityError&) {
        continue;
      }
      if (a > 1e3) continue;
      EXPECT_LE(std::abs(v.value(Chart::kCartesianLine, y) - a), 1e-12 * (1 + std::abs(a))) << id;
    }
  }
}

TEST(Gradient, SinFamilyAngular) {
  const auto v = make_potential("sin-family", {{"k", 1}, {"n", 3}, {"psi0", 0}});
  const std::vector<double> q{1.0, kPi / 12};
  const auto g = v.gradient(Chart::kPolar2, q);
  const double s = std::sqrt(0.5);
  EXPECT_NEAR(g[1], -6 * s / (s * s * s), 1e-12);
  EXPECT_NEAR(g[1], -12.0, 1e-12);
}

TEST(Gradient, SymmetricCriticalPoints) {
  for (int h : {1, 2, 3}) {
    const auto ttw = make_potential("ttw", {{"k1", 0.5}, {"k2", 2}, {"k3", 2}, {"h", double(h)}});
    const auto g = ttw.gradient(Chart::kPolar2, std::vector<double>{1.3, kPi / (4 * h)});
    EXPECT_NEAR(g[1], 0.0, 1e-12) << h;
  }
  const auto e1 = make_potential("evans-1", {{"a", 2.0}, {"b", 0.0}});
  const auto g = e1.gradient(Chart::kSphericalCylindrical4, std::vector<double>{1.2, 0.7, 1.1, 0.3});
  EXPECT_EQ(g[1], 0.0);
}

// Analytic gradients against Richardson-extrapolated central differences.
TEST(Gradient, MatchesDifferences) {
  struct Case {
    const char* id;
    Chart chart;
    std::vector<double> q;
  };
  const std::vector<Case> cases{
      {"calogero", Chart::kCartesianLine, {1.1, 0.2, -0.8}},
      {"calogero", Chart::kCylindrical3, {1.3, 0.4, 0.2}},
      {"wolfes", Chart::kCartesianLine, {1.1, 0.5, -0.8}},
      {"sin-family", Chart::kPolar2, {0.9, 0.3}},
      {"ttw", Chart::kPolar2, {1.2, 0.6}},
      {"evans-1", Chart::kSphericalCylindrical4, {1.2, 0.7, 1.1, 0.3}},
      {"evans-2", Chart::kSphericalCylindrical4, {1.2, 0.7, 1.1, 0.3}},
      {"evans-3", Chart::kSphericalCylindrical4, {1.2, 0.7, 1.1, 0.3}},
      {"evans-4", Chart::kSphericalCylindrical4, {1.2, 0.7, 1.1, 0.3}},
      {"higgs-cuboctahedral", Chart::kSphere2, {0.8, 0.3}},
      {"platonic-1", Chart::kSphere2, {0.8, 0.3}},
      {"platonic-2", Chart::kSpherical3, {1.1, 0.8, 0.3}},
      {"platonic-3", Chart::kSphere2, {0.4, 0.3}},
  };
  for (const auto& c : cases) {
    const auto v = make_potential(c.id);
    const auto g = v.gradient(c.chart, c.q);
    for (std::size_t i = 0; i < c.q.size(); ++i) {
      auto diff = [&](double h) {
        auto qp = c.q, qm = c.q;
        qp[i] += h;
        qm[i] -= h;
        return (v.value(c.chart, qp) - v.value(c.chart, qm)) / (2 * h);
      };
      const double h = 1e-4 * (1 + std::abs(c.q[i]));
      const double fd = (4 * diff(h / 2) - diff(h)) / 3;
      EXPECT_NEAR(g[static_cast<Eigen::Index>(i)], fd, 1e-6 * (1 + std::abs(fd))) << c.id << " " << i;
    }
  }
}

TEST(PhaseConstants, Calogero) {
  const auto cal = make_potential("calogero");
  const auto fit = derive_phase_constants(cal, make_potential("sin-family", {{"n", 3}}));
  EXPECT_NEAR(fit.phi0, kPi / 2, 1e-9);
  EXPECT_NEAR(fit.c, 4.5, 1e-9);
  EXPECT_LE(fit.residual, 1e-9);
  // x = (1,0,-1): r^2 = 2, 3 psi = pi, so V = 4.5 / 2
  EXPECT_NEAR(fit.c / 2.0, cal.value(Chart::kCartesianLine, std::vector<double>{1, 0, -1}), 1e-12);
}

TEST(PhaseConstants, WolfesIsRotatedCalogero) {
  const auto sf = make_potential("sin-family", {{"n", 3}});
  const auto a = derive_phase_constants(make_potential("calogero"), sf);
  const auto b = derive_phase_constants(make_potential("wolfes"), sf);
  double d = std::remainder(a.phi0 - b.phi0, kPi);
  EXPECT_NEAR(std::abs(d), kPi / 2, 1e-9);
}

TEST(PhaseConstants, SinFamilyReproducesCalogero) {
  const double k = 1.7;
  const auto cal = make_potential("calogero", {{"k", k}});
  const auto fit = derive_phase_constants(cal, make_potential("sin-family", {{"n", 3}}));
  const auto sf = make_potential("sin-family", {{"k", fit.c * k}, {"n", 3}, {"psi0", fit.phi0}});
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2, 2);
  int checked = 0;
  while (checked < 100) {
    coords::PhaseState s{Chart::kCartesianLine, Eigen::Vector3d(u(rng), u(rng), u(rng)), Eigen::Vector3d::Zero()};
    double a = 0;
    try {
      a = cal.value(s);
    } catch (const SingularityError&) {
      continue;
    }
    if (a > 1e6) continue;
    const auto z = coords::line_to_orthogonal({s.q, s.p});
    const auto cyl = coords::chart_transform(z, Chart::kCylindrical3);
    const double b = sf.value(Chart::kPolar2, std::vector<double>{cyl.q[0], cyl.q[1]});
    EXPECT_NEAR(a, b, 1e-10 * (1 + std::abs(a)));
    const double sn = std::sin(3 * cyl.q[1] + fit.phi0);
    EXPECT_NEAR(cyl.q[0] * cyl.q[0] * a * sn * sn / fit.c, k, 1e-10 * (1 + a));
    ++checked;
  }
}

TEST(Ttw, HalfAngleForm) {
  const auto ttw = make_potential("ttw", {{"k1", 0}, {"k2", 1}, {"k3", 1}, {"h", 1}});
  coords::PhaseState s{Chart::kPolar2, Eigen::Vector2d(1, kPi / 4), Eigen::Vector2d::Zero()};
  EXPECT_NEAR(ttw_half_angle(ttw, s), 4.0, 1e-14);
  const auto one = make_potential("ttw", {{"k1", 1}, {"k2", 0}, {"k3", 0}, {"h", 1}});
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  for (int i = 0; i < 50; ++i) {
    coords::PhaseState t{Chart::kPolar2, Eigen::Vector2d(u(rng), u(rng)), Eigen::Vector2d::Zero()};
    const double r2 = t.q[0] * t.q[0];
    EXPECT_NEAR(one.value(t), 1 / r2, 1e-14);
    EXPECT_NEAR(ttw_half_angle(one, t), 1 / r2, 1e-14);
    const auto gen = make_potential("ttw", {{"k1", 0.3}, {"k2", 0.7}, {"k3", 1.9}, {"p", 3}, {"q", 2}});
    EXPECT_NEAR(ttw_half_angle(gen, t), gen.value(t), 1e-10 * (1 + gen.value(t)));
  }
}

TEST(Ttw, Periodicity) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int q : {1, 2, 3, 4}) {
    const auto v = make_potential("ttw", {{"k1", 0.2}, {"k2", 1.0}, {"k3", 2.5}, {"p", 1}, {"q", double(q)}});
    const double period = (q % 2 == 0 ? 1 : 2) * q * kPi;
    for (int i = 0; i < 100; ++i) {
      const double psi = u(rng);
      double a = 0;
      try {
        a = value_at(v, Chart::kPolar2, {1.0, psi});
      } catch (const SingularityError&) {
        continue;
      }
      const double b = value_at(v, Chart::kPolar2, {1.0, psi + period});
      const double c = value_at(v, Chart::kPolar2, {1.0, -psi});
      EXPECT_NEAR(a, b, 1e-9 * (1 + a)) << q;
      EXPECT_NEAR(a, c, 1e-9 * (1 + a)) << q;
    }
  }
}

TEST(SinFamily, DihedralInvariance) {
  const double psi0 = 0.3;
  for (int n = 1; n <= 4; ++n) {
    const auto v = make_potential("sin-family", {{"k", 1.3}, {"n", double(n)}, {"psi0", psi0}});
    std::mt19937_64 rng(n);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 100; ++i) {
      const double r = 0.5 + std::abs(u(rng)), psi = u(rng);
      double a = 0;
      try {
        a = value_at(v, Chart::kPolar2, {r, psi});
      } catch (const SingularityError&) {
        continue;
      }
      EXPECT_NEAR(value_at(v, Chart::kPolar2, {r, psi + kPi / n}), a, 1e-12 * a);
      EXPECT_NEAR(value_at(v, Chart::kPolar2, {r, -psi - 2 * psi0 / n}), a, 1e-12 * a);
    }
  }
}

TEST(Higgs, TangentIdentity) {
  for (double psi : {0.1, 0.7, 1.3, 2.9}) {
    EXPECT_NEAR(higgs_tan_form(2.5, psi), higgs_sec_form(2.5, psi), 1e-12 * (1 + higgs_tan_form(2.5, psi)));
  }
}

TEST(Platonic, F3PrintedEqualsSimplified) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> th(0, kPi), ph(0, 2 * kPi);
  for (int i = 0; i < 200; ++i) {
    const double t = th(rng), p = ph(rng);
    const double c = std::cos(t), s = std::sin(t);
    const double simple = -c * (std::pow(c, 5) - 5 * s * s * std::pow(c, 3) + 5 * std::pow(s, 4) * c +
                                2 * std::pow(s, 5) * std::cos(5 * p));
    EXPECT_NEAR(platonic_f3_printed(t, p), simple, 1e-13);
    EXPECT_NEAR(platonic_f(3, t, p), simple, 1e-13);
  }
}

TEST(Platonic, F1IsXyz) {
  for (double t : {0.3, 1.0, 2.2}) {
    for (double p : {0.4, 2.0, 5.1}) {
      const double x = std::sin(t) * std::cos(p), y = std::sin(t) * std::sin(p), z = std::cos(t);
      EXPECT_NEAR(platonic_f(1, t, p), x * y * z, 1e-15);
      EXPECT_NEAR(platonic_f(2, t, p), x * y * z * x * y * z, 1e-15);
    }
  }
}

TEST(Natural, HamiltonianValue) {
  const auto h = natural_hamiltonian(make_potential("calogero"), Chart::kCartesianLine, 3);
  EXPECT_TRUE(h.separable());
  const double v = h.value(Eigen::Vector3d(1, 0, -1), Eigen::Vector3d(1, 2, 2));
  EXPECT_NEAR(v, 2.25 + 4.5, 1e-14);
  const auto hs = natural_hamiltonian(make_potential("platonic-1"), Chart::kSphere2, 2);
  EXPECT_FALSE(hs.separable());
  const double t = 0.9, p = 0.7;
  EXPECT_NEAR(hs.value(Eigen::Vector2d(t, p), Eigen::Vector2d(0.3, 0.4)),
              0.5 * (0.09 + 0.16 / std::pow(std::sin(t), 2)) + 1 / platonic_f(1, t, p), 1e-13);
}

}  // namespace
