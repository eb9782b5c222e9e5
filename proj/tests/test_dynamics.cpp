#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "supint/dynamics.hpp"
#include "supint/integrals.hpp"

namespace {

using namespace supint;
using namespace supint::dynamics;
using coords::Chart;
constexpr double kPi = std::numbers::pi;

Hamiltonian calogero_h() {
  return potentials::natural_hamiltonian(potentials::make_potential("calogero"), Chart::kCartesianLine, 3);
}

Hamiltonian sphere_h(const char* id) {
  return potentials::natural_hamiltonian(potentials::make_potential(id), Chart::kSphere2, 2);
}

// H = (p^2 + q^2) / 2 in one dimension, written as a generic Hamiltonian.
Hamiltonian quadratic_h() {
  Hamiltonian h;
  h.chart = Chart::kCartesianLine;
  h.dim = 1;
  h.value = [](const Eigen::VectorXd& q, const Eigen::VectorXd& p) { return 0.5 * (p[0] * p[0] + q[0] * q[0]); };
  h.gradient = [](const Eigen::VectorXd& q, const Eigen::VectorXd& p, Eigen::VectorXd& dq, Eigen::VectorXd& dp) {
    dq = q;
    dp = p;
  };
  return h;
}

TEST(Verlet, FreeFlight) {
  const auto free = potentials::make_potential("free");
  const PhaseState s{Chart::kCartesianLine, Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(0.5, -1, 2)};
  const auto t = step_verlet(s, 0.1, free);
  EXPECT_NEAR(t.q[0], 1.05, 1e-15);
  EXPECT_NEAR(t.q[1], 1.9, 1e-15);
  EXPECT_NEAR(t.q[2], 3.2, 1e-15);
  EXPECT_EQ(t.p, s.p);
}

TEST(Verlet, Reversible) {
  const auto h = calogero_h();
  const PhaseState s{Chart::kCartesianLine, Eigen::Vector3d(1.1, 0.05, -0.9), Eigen::Vector3d(0.3, -0.1, 0.2)};
  PhaseState t = s;
  for (int i = 0; i < 100; ++i) t = step_verlet(t, 1e-3, h);
  for (int i = 0; i < 100; ++i) t = step_verlet(t, -1e-3, h);
  EXPECT_LE((t.q - s.q).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((t.p - s.p).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Verlet, CalogeroEnergy) {
  const auto h = calogero_h();
  PhaseState s{Chart::kCartesianLine, Eigen::Vector3d(1, 0, -1), Eigen::Vector3d::Zero()};
  const double h0 = h(s);
  for (int i = 0; i < 100000; ++i) s = step_verlet(s, 1e-3, h);
  EXPECT_LE(std::abs(h(s) - h0) / std::abs(h0), 1e-8);
}

TEST(Verlet, FourthOrderCalogeroEnergy) {
  const auto h = calogero_h();
  PhaseState s{Chart::kCartesianLine, Eigen::Vector3d(1, 0, -1), Eigen::Vector3d::Zero()};
  const double h0 = h(s);
  double worst = 0;
  for (int i = 0; i < 100000; ++i) {
    s = step(Scheme::kVerlet4, s, 1e-3, h);
    worst = std::max(worst, std::abs(h(s) - h0) / std::abs(h0));
  }
  EXPECT_LE(worst, 1e-8);
}

TEST(Verlet, RejectsWallCrossing) {
  const auto h = calogero_h();
  const PhaseState s{Chart::kCartesianLine, Eigen::Vector3d(0.001, 0, -1), Eigen::Vector3d(-5, 5, 0)};
  EXPECT_THROW(step_verlet(s, 0.01, h), StepRejectedError);
  const PhaseState t{Chart::kCylindrical3, Eigen::Vector3d(1, 0.3, 0), Eigen::Vector3d::Zero()};
  EXPECT_THROW(step_verlet(t, 0.01, h), Error);
}

TEST(Midpoint, QuadraticEnergyExact) {
  const auto h = quadratic_h();
  PhaseState s{Chart::kCartesianLine, Eigen::VectorXd::Constant(1, 0.7), Eigen::VectorXd::Constant(1, -0.4)};
  const double h0 = h(s);
  for (int i = 0; i < 1000; ++i) {
    const double before = h(s);
    s = step_implicit_midpoint(s, 0.05, h);
    EXPECT_LE(std::abs(h(s) - before), 1e-12);
  }
  EXPECT_LE(std::abs(h(s) - h0), 1e-11);
}

TEST(Midpoint, FreeSphereCyclicMomentum) {
  const auto free = potentials::natural_hamiltonian(potentials::make_potential("free"), Chart::kSphere2, 2);
  PhaseState s{Chart::kSphere2, Eigen::Vector2d(1.0, 0.2), Eigen::Vector2d(0.3, 0.45)};
  for (int i = 0; i < 2000; ++i) {
    s = step_implicit_midpoint(s, 1e-2, free);
    EXPECT_NEAR(s.p[1], 0.45, 1e-13);
  }
}

TEST(Midpoint, Reversible) {
  const auto h = sphere_h("platonic-1");
  const PhaseState s{Chart::kSphere2, Eigen::Vector2d(0.97, kPi / 4), Eigen::Vector2d(0.01, 0.05)};
  PhaseState t = s;
  for (int i = 0; i < 100; ++i) t = step_implicit_midpoint(t, 1e-3, h);
  for (int i = 0; i < 100; ++i) t = step_implicit_midpoint(t, -1e-3, h);
  EXPECT_LE((t.q - s.q).cwiseAbs().maxCoeff(), 1e-10);
  EXPECT_LE((t.p - s.p).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Midpoint, PlatonicEnergy) {
  const auto h = sphere_h("platonic-1");
  const auto set = integrals::standard_integrals("platonic-1");
  IntegrateOptions opts;
  opts.scheme = Scheme::kMidpoint;
  opts.dt = 1e-3;
  opts.t_end = 100;
  opts.record_every = 50;
  const PhaseState s{Chart::kSphere2, Eigen::Vector2d(1.0, 0.7), Eigen::Vector2d(0.02, 0.04)};
  const auto traj = integrate(s, h, opts);
  ASSERT_FALSE(traj.truncated) << traj.reason;
  const auto d = drift_report(traj, {set.hamiltonian()});
  EXPECT_LE(d[0].max_drift, 1e-7);
}

// ||J^T Omega J - Omega|| for one step, J by central differences.
double symplecticity_defect(Scheme scheme, const Hamiltonian& h, const PhaseState& s, double dt) {
  const int n = s.dimension();
  Eigen::MatrixXd omega = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n).setIdentity();
  omega.bottomLeftCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd z(2 * n);
  z << s.q, s.p;
  Eigen::MatrixXd jac(2 * n, 2 * n);
  for (int k = 0; k < 2 * n; ++k) {
    const double e = 1e-5;
    Eigen::VectorXd zp = z, zm = z;
    zp[k] += e;
    zm[k] -= e;
    const auto a = step(scheme, {s.chart, zp.head(n), zp.tail(n)}, dt, h);
    const auto b = step(scheme, {s.chart, zm.head(n), zm.tail(n)}, dt, h);
    Eigen::VectorXd da(2 * n);
    da << a.q - b.q, a.p - b.p;
    jac.col(k) = da / (2 * e);
  }
  return (jac.transpose() * omega * jac - omega).cwiseAbs().maxCoeff();
}

TEST(Symplectic, JacobianProxy) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-0.2, 0.2);
  const auto hc = calogero_h();
  const auto hs = sphere_h("platonic-1");
  for (int i = 0; i < 10; ++i) {
    const PhaseState c{Chart::kCartesianLine, Eigen::Vector3d(1.1 + u(rng), u(rng), -1 + u(rng)),
                       Eigen::Vector3d(u(rng), u(rng), u(rng))};
    EXPECT_LE(symplecticity_defect(Scheme::kVerlet, hc, c, 1e-2), 1e-6);
    EXPECT_LE(symplecticity_defect(Scheme::kMidpoint, hc, c, 1e-2), 1e-6);
    const PhaseState s{Chart::kSphere2, Eigen::Vector2d(0.95 + u(rng), 0.8 + u(rng)), Eigen::Vector2d(u(rng), u(rng))};
    EXPECT_LE(symplecticity_defect(Scheme::kMidpoint, hs, s, 1e-2), 1e-6);
    EXPECT_LE(symplecticity_defect(Scheme::kMidpoint4, hs, s, 1e-2), 1e-6);
  }
}

TEST(Integrate, FreeParticleStraightLine) {
  const auto free = potentials::natural_hamiltonian(potentials::make_potential("free"), Chart::kCartesianLine, 3);
  IntegrateOptions opts;
  opts.scheme = Scheme::kVerlet;
  opts.dt = 1e-3;
  opts.t_end = 1;
  const PhaseState s{Chart::kCartesianLine, Eigen::Vector3d(0.1, -0.2, 0.3), Eigen::Vector3d(1.5, 0.25, -2)};
  const auto traj = integrate(s, free, opts);
  ASSERT_FALSE(traj.truncated);
  EXPECT_NEAR(traj.t.back(), 1.0, 1e-12);
  for (int j = 0; j < 3; ++j) EXPECT_NEAR(traj.states.back().q[j], s.q[j] + s.p[j], 1e-12);
  for (std::size_t i = 1; i < traj.t.size(); ++i) EXPECT_GT(traj.t[i], traj.t[i - 1]);
}

TEST(Integrate, SectorConfinement) {
  const double psi0 = 0.25;
  const auto pot = potentials::make_potential("sin-family", {{"k", 0.5}, {"n", 3}, {"psi0", psi0}});
  const auto h = potentials::natural_hamiltonian(pot, Chart::kCartesianLine, 2);
  IntegrateOptions opts;
  opts.dt = 1e-3;
  opts.t_end = 30;
  const double psi = 0.4, r = 1.0;
  const PhaseState s{Chart::kCartesianLine, Eigen::Vector2d(r * std::cos(psi), r * std::sin(psi)), Eigen::Vector2d(1.5, -2.0)};
  auto sector = [&](const PhaseState& b) { return std::floor((3 * std::atan2(b.q[1], b.q[0]) + psi0) / kPi); };
  const double sector0 = sector(s);
  bool same = true;
  const auto traj = integrate(s, h, opts, [&](double, const PhaseState&, double, const PhaseState& b) {
    same = same && sector(b) == sector0;
  });
  ASSERT_FALSE(traj.truncated) << traj.reason;
  EXPECT_TRUE(same);
}

TEST(Integrate, CalogeroOrdering) {
  const auto h = calogero_h();
  IntegrateOptions opts;
  opts.t_end = 50;
  const PhaseState s{Chart::kCartesianLine, Eigen::Vector3d(1.1, 0.05, -0.9), Eigen::Vector3d(-2.0, 2.5, 1.0)};
  bool ordered = true;
  const auto traj = integrate(s, h, opts, [&](double, const PhaseState&, double, const PhaseState& b) {
    ordered = ordered && b.q[0] > b.q[1] && b.q[1] > b.q[2];
  });
  ASSERT_FALSE(traj.truncated) << traj.reason;
  EXPECT_TRUE(ordered);
}

TEST(Integrate, WallSignsConstant) {
  for (const char* id : {"platonic-1", "platonic-2", "platonic-3"}) {
    const auto pot = potentials::make_potential(id);
    const auto h = potentials::natural_hamiltonian(pot, Chart::kSphere2, 2);
    IntegrateOptions opts;
    opts.scheme = Scheme::kMidpoint4;
    opts.dt = 2e-3;
    opts.t_end = 20;
    const PhaseState s{Chart::kSphere2, Eigen::Vector2d(id[9] == '3' ? 0.7 : 0.98, id[9] == '3' ? kPi / 5 : kPi / 4),
                       Eigen::Vector2d(0.05, 0.1)};
    const auto w0 = pot.walls(Chart::kSphere2, std::vector<double>{s.q[0], s.q[1]});
    bool same = true;
    const auto traj = integrate(s, h, opts, [&](double, const PhaseState&, double, const PhaseState& b) {
      const auto w = pot.walls(Chart::kSphere2, std::vector<double>{b.q[0], b.q[1]});
      for (std::size_t i = 0; i < w.size(); ++i) same = same && (w[i] > 0) == (w0[i] > 0);
    });
    ASSERT_FALSE(traj.truncated) << id << " " << traj.reason;
    EXPECT_TRUE(same) << id;
  }
}

TEST(Integrate, TruncatesAtWall) {
  const auto h = potentials::natural_hamiltonian(potentials::make_potential("calogero", {{"k", 1e-12}}),
                                                 Chart::kCartesianLine, 3);
  IntegrateOptions opts;
  opts.t_end = 5;
  const PhaseState s{Chart::kCartesianLine, Eigen::Vector3d(0.5, 0, -0.5), Eigen::Vector3d(-3, 3, 0)};
  const auto traj = integrate(s, h, opts);
  EXPECT_TRUE(traj.truncated);
  EXPECT_FALSE(traj.reason.empty());
  EXPECT_LT(traj.t.back(), 5.0);
}

TEST(Section, LinearEstimate) {
  EXPECT_NEAR(linear_crossing_estimate(0.9, -0.1, 1.1, 0.1), 1.0, 1e-15);
  EXPECT_NEAR(linear_crossing_estimate(0.0, -1.0, 1.0, 3.0), 0.25, 1e-15);
}

// Unit circle in the plane: q1 = cos t rises through 0 at t = 3 pi / 2 + 2 pi k.
TEST(Section, CircularMotion) {
  SectionJob job;
  job.s0 = {Chart::kCartesianLine, Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)};
  job.h = potentials::natural_hamiltonian(potentials::make_potential("oscillator"), Chart::kCartesianLine, 2);
  job.opts.scheme = Scheme::kVerlet4;
  job.opts.dt = 1e-3;
  job.opts.t_end = 40;
  SectionDef sec;
  sec.coordinate = 0;
  sec.value = 0;
  sec.q_rec = 1;
  sec.p_rec = 1;
  const auto out = poincare_section({job}, sec);
  ASSERT_EQ(out.points.size(), 6u);
  for (std::size_t k = 0; k < out.points.size(); ++k) {
    EXPECT_NEAR(out.points[k].t, 1.5 * kPi + 2 * kPi * double(k), 1e-10);
    EXPECT_LE(out.points[k].residual, 1e-10);
    EXPECT_NEAR(out.points[k].q, -1.0, 1e-9);
    EXPECT_NEAR(out.points[k].p, 0.0, 1e-9);
  }
  sec.direction = Direction::kBoth;
  EXPECT_EQ(poincare_section({job}, sec).points.size(), 13u);
  sec.direction = Direction::kNegative;
  EXPECT_NEAR(poincare_section({job}, sec).points.front().t, 0.5 * kPi, 1e-10);
  sec.q_rec = 0;
  EXPECT_THROW(poincare_section({job}, sec), Error);
}

TEST(Section, ThreadCountIndependent) {
  std::vector<SectionJob> jobs;
  for (int i = 0; i < 4; ++i) {
    SectionJob j;
    j.set_id = i;
    j.s0 = {Chart::kSphere2, Eigen::Vector2d(0.9553166 + 0.02 * (i + 1), kPi / 4), Eigen::Vector2d(0.0, 0.05)};
    j.h = sphere_h("platonic-1");
    j.opts.scheme = Scheme::kMidpoint4;
    j.opts.dt = 2e-3;
    j.opts.t_end = 30;
    jobs.push_back(j);
  }
  SectionDef sec;
  sec.coordinate = 1;
  sec.value = kPi / 4;
  sec.period = 2 * kPi;
  const auto a = poincare_section(jobs, sec, 1);
  const auto b = poincare_section(jobs, sec, 3);
  ASSERT_EQ(a.points.size(), b.points.size());
  ASSERT_GT(a.points.size(), 4u);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].set_id, b.points[i].set_id);
    EXPECT_EQ(a.points[i].q, b.points[i].q);
    EXPECT_EQ(a.points[i].p, b.points[i].p);
    EXPECT_LE(a.points[i].residual, 1e-10);
  }
}

TEST(Section, OffsetWrapsAngles) {
  SectionDef sec;
  sec.coordinate = 1;
  sec.value = 0.5;
  sec.period = 2 * kPi;
  const PhaseState s{Chart::kSphere2, Eigen::Vector2d(1.0, 0.5 + 2 * kPi + 0.1), Eigen::Vector2d::Zero()};
  EXPECT_NEAR(section_offset(sec, s), 0.1, 1e-12);
}

TEST(CurveFit, Ellipse) {
  std::vector<Eigen::Vector2d> pts;
  for (int i = 0; i < 400; ++i) {
    const double a = 2 * kPi * std::fmod(i * 0.618033988749895, 1.0);
    pts.emplace_back(2 * std::cos(a) + 1, 0.5 * std::sin(a));
  }
  const auto f = closed_curve_deviation(pts);
  EXPECT_NEAR(f.diameter, 4.0, 1e-3);
  EXPECT_LE(f.relative(), 2e-3);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1, 1);
  std::vector<Eigen::Vector2d> cloud;
  for (int i = 0; i < 400; ++i) cloud.emplace_back(u(rng), u(rng));
  EXPECT_GT(closed_curve_deviation(cloud).relative(), 0.02);
}

TEST(Schemes, Names) {
  for (auto s : {Scheme::kVerlet, Scheme::kVerlet4, Scheme::kMidpoint, Scheme::kMidpoint4}) {
    EXPECT_EQ(scheme_from_string(to_string(s)), s);
  }
  EXPECT_EQ(default_scheme(calogero_h()), Scheme::kVerlet4);
  EXPECT_EQ(default_scheme(sphere_h("platonic-1")), Scheme::kMidpoint4);
}

}  // namespace
