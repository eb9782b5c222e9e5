#include "cli/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "cli/config.hpp"
#include "supint/extensions.hpp"
#include "supint/integrals.hpp"
#include "supint/potentials.hpp"
#include "supint/symmetry.hpp"

namespace supint::cli {

namespace {

using coords::Chart;
using coords::PhaseState;
constexpr double kPi = std::numbers::pi;

CheckResult at_most(std::string name, double value, double threshold) {
  return {std::move(name), value, "<=", threshold, value <= threshold};
}

CheckResult at_least(std::string name, double value, double threshold) {
  return {std::move(name), value, ">=", threshold, value >= threshold};
}

CheckResult equals(std::string name, double value, double expected) {
  return {std::move(name), value, "==", expected, value == expected};
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng_); }

 private:
  std::mt19937_64 rng_;
};

double max_bracket(const integrals::PhaseCallable& f, const integrals::PhaseCallable& g,
                   const std::function<PhaseState()>& draw, int samples) {
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) worst = std::max(worst, std::abs(integrals::poisson_bracket(f, g, draw())));
  return worst;
}

/// Line states near (1, 0, -1): every gap well away from zero.
PhaseState line_state(Sampler& s) {
  PhaseState st{Chart::kCartesianLine, Eigen::Vector3d(1, 0, -1), Eigen::Vector3d::Zero()};
  for (int i = 0; i < 3; ++i) {
    st.q(i) += s.uniform(-0.2, 0.2);
    st.p(i) = s.uniform(-1, 1);
  }
  return st;
}

/// Polar states inside one sector of sin(n psi + psi0), away from its walls.
PhaseState sector_state(Sampler& s, int n, double psi0) {
  const double w = kPi / n;
  const double psi = w * s.uniform(0.2, 0.8) - psi0 / n;
  return {Chart::kPolar2, Eigen::Vector2d(s.uniform(0.8, 1.5), psi), Eigen::Vector2d(s.uniform(-1, 1), s.uniform(-1, 1))};
}

PhaseState evans_state(Sampler& s) {
  PhaseState st{Chart::kSphericalCylindrical4, Eigen::Vector4d(s.uniform(0.8, 1.5), s.uniform(0.4, 1.2),
                                                                s.uniform(0.4, 1.2), s.uniform(-1, 1)),
                Eigen::Vector4d::Zero()};
  for (int i = 0; i < 4; ++i) st.p(i) = s.uniform(-1, 1);
  return st;
}

std::vector<CheckResult> integrals_suite(std::uint64_t seed) {
  std::vector<CheckResult> out;
  Sampler s(seed);
  const auto cal = potentials::make_potential("calogero", {{"k", 1.0}});
  const auto set = integrals::standard_integrals(cal);
  const auto h_line = integrals::hamiltonian_function(potentials::natural_hamiltonian(cal, Chart::kCartesianLine, 3));
  auto draw_line = [&] { return line_state(s); };
  for (const char* name : {"H1", "H2", "H3"}) {
    out.push_back(at_most(fmt::format("calogero {{{},H}}", name), max_bracket(set.get(name), h_line, draw_line, 50), 1e-6));
  }
  const auto fit = potentials::derive_phase_constants(cal, potentials::make_potential("sin-family", {{"n", 3.0}}));
  const auto l3 =
      integrals::build_ladder_integral(3, integrals::sin_family_profile(fit.c * cal.param("k"), 3, fit.phi0), fit.phi0, Chart::kCylindrical3);
  out.push_back(at_most("calogero {L_3,H}", max_bracket(l3, h_line, draw_line, 50), 1e-6));

  const double k = 1.5, psi0 = 0.2;
  for (int n = 1; n <= 4; ++n) {
    const auto pot = potentials::make_potential("sin-family", {{"k", k}, {"n", double(n)}, {"psi0", psi0}});
    const auto h = integrals::hamiltonian_function(potentials::natural_hamiltonian(pot, Chart::kPolar2, 2));
    const auto ln = integrals::build_ladder_integral(n, integrals::sin_family_profile(k, n, psi0), psi0);
    out.push_back(at_most(fmt::format("sin-family n={} {{L_{},H_S}}", n, n),
                          max_bracket(ln, h, [&] { return sector_state(s, n, psi0); }, 50), 1e-6));
  }
  {
    const auto l1 = integrals::build_ladder_integral(1, integrals::sin_family_profile(k, 1, psi0), psi0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto st = sector_state(s, 1, psi0);
      const double r = st.q(0), psi = st.q(1);
      const double closed = st.p(0) * std::cos(psi + psi0) - st.p(1) * std::sin(psi + psi0) / r;
      worst = std::max(worst, std::abs(l1(st) - closed));
    }
    out.push_back(at_most("L_1 closed form", worst, 1e-12));
  }
  for (const char* id : {"evans-1", "evans-2", "evans-3"}) {
    const auto ev = integrals::standard_integrals(potentials::make_potential(id));
    for (const char* name : {"H1", "H5", "H6"}) {
      out.push_back(at_most(fmt::format("{} {{{},H}}", id, name),
                            max_bracket(ev.get(name), ev.hamiltonian(), [&] { return evans_state(s); }, 30), 1e-6));
    }
  }
  return out;
}

std::vector<CheckResult> symmetry_suite(std::uint64_t seed) {
  using namespace symmetry;
  std::vector<CheckResult> out;
  const auto tetra = platonic_group(PlatonicKind::kTetra);
  const auto octa = platonic_group(PlatonicKind::kOcta);
  const auto icosa = platonic_group(PlatonicKind::kIcosa);
  out.push_back(equals("|T_12|", tetra.order(), 12));
  out.push_back(equals("|O_24|", octa.order(), 24));
  out.push_back(equals("|I_60|", icosa.order(), 60));
  out.push_back(equals("|D_3 prism|", dihedral_group(3).order(), 12));
  auto f = [](int kind) { return on_sphere([kind](double t, double p) { return potentials::platonic_f(kind, t, p); }); };
  out.push_back(at_most("f1 under T_12", check_invariance(f(1), tetra, 200, seed), 1e-10));
  out.push_back(at_most("f2 under O_24", check_invariance(f(2), octa, 200, seed), 1e-10));
  out.push_back(at_most("f3 under I_60", check_invariance(f(3), icosa, 200, seed), 1e-10));
  double hom = 0.0;
  for (int n : {3, 4}) {
    const auto perms = all_permutations(n);
    for (const auto& a : perms) {
      for (const auto& b : perms) {
        const Eigen::MatrixXd lhs = permutation_isometry(compose(a, b)).matrix;
        const Eigen::MatrixXd rhs = permutation_isometry(a).matrix * permutation_isometry(b).matrix;
        hom = std::max(hom, (lhs - rhs).cwiseAbs().maxCoeff());
      }
    }
  }
  out.push_back(at_most("permutation homomorphism S_3, S_4", hom, 1e-12));
  Sampler s(seed);
  for (const char* id : {"calogero", "wolfes"}) {
    const auto pot = potentials::make_potential(id);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const auto st = line_state(s);
      const double v = pot.value(st);
      for (const auto& perm : all_permutations(3)) {
        const Eigen::VectorXd x = permutation_matrix(perm) * st.q;
        const double q[3] = {x(0), x(1), x(2)};
        worst = std::max(worst, std::abs(pot.value(Chart::kCartesianLine, q) - v) / (1 + std::abs(v)));
      }
    }
    out.push_back(at_most(fmt::format("{} permutation invariance", id), worst, 1e-12));
  }
  for (int n = 1; n <= 4; ++n) {
    const double psi0 = 0.3;
    const auto pot = potentials::make_potential("sin-family", {{"n", double(n)}, {"psi0", psi0}});
    auto v = [&pot](const Eigen::VectorXd& x) {
      const double q[2] = {x(0), x(1)};
      return pot.value(Chart::kCartesianLine, q);
    };
    out.push_back(at_most(fmt::format("sin-family n={} dihedral invariance", n),
                          check_invariance(v, dihedral_group(n, psi0), 100, seed), 1e-12));
  }
  return out;
}

std::vector<CheckResult> extensions_suite(std::uint64_t seed) {
  using namespace extensions;
  std::vector<CheckResult> out;
  out.push_back(at_most("S_0(2.5) = 2.5", std::abs(s_kappa(0, 2.5) - 2.5), 1e-15));
  out.push_back(at_most("S_1(pi/2) = 1", std::abs(s_kappa(1, kPi / 2) - 1), 1e-15));
  out.push_back(at_most("S_-1(1) = sinh 1", std::abs(s_kappa(-1, 1) - std::sinh(1.0)), 1e-15));
  double cont = 0.0;
  for (double x = -10; x <= 10; x += 0.25) {
    cont = std::max({cont, std::abs(s_kappa(1e-8, x) - x), std::abs(s_kappa(-1e-8, x) - x)});
  }
  out.push_back(at_most("S_kappa continuity at kappa = 0", cont, 1e-7));
  const auto sphere = CurvedChart::sphere2();
  Sampler s(seed);
  const std::vector<std::pair<std::string, FieldFunction>> linear{
      {"cos theta", FieldFunction::generic([](auto q) {
         using std::cos;
         return cos(q[0]);
       })},
      {"sin theta cos phi", FieldFunction::generic([](auto q) {
         using std::cos;
         using std::sin;
         return sin(q[0]) * cos(q[1]);
       })},
      {"sin theta sin phi", FieldFunction::generic([](auto q) {
         using std::sin;
         return sin(q[0]) * sin(q[1]);
       })}};
  std::vector<std::array<double, 2>> pts;
  for (int i = 0; i < 20; ++i) pts.push_back({s.uniform(0.3, kPi - 0.3), s.uniform(0, 2 * kPi)});
  for (const auto& [name, g] : linear) {
    double worst = 0.0;
    for (const auto& q : pts) worst = std::max(worst, hessian_residual(g, sphere, q));
    out.push_back(at_most("Hessian residual " + name, worst, 1e-6));
  }
  const auto sq = FieldFunction::generic([](auto q) {
    using std::cos;
    return cos(q[0]) * cos(q[0]);
  });
  double least = 1e300;
  for (const auto& q : pts) least = std::min(least, hessian_residual(sq, sphere, q));
  out.push_back(at_least("Hessian residual cos^2 theta (control)", least, 1e-2));
  const double k = 1.5, psi0 = 0.2;
  for (int n = 1; n <= 3; ++n) {
    auto v = FieldFunction::generic([=](auto q) {
      using std::sin;
      const auto sn = sin(n * q[0] + psi0);
      return k / (sn * sn);
    });
    auto g = FieldFunction::generic([=](auto q) {
      using std::cos;
      return cos(n * q[0] + psi0);
    });
    auto gamma = ScalarFunction::generic([n](const auto& u) { return 1.0 / (n * u); });
    const auto u = build_U_ladder(g, gamma, n, {CurvedChart::circle1(double(n * n)), v});
    const auto l = integrals::build_ladder_integral(n, integrals::sin_family_profile(k, n, psi0), psi0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const auto st = sector_state(s, n, psi0);
      worst = std::max(worst, std::abs(u(st) - l(st)));
    }
    out.push_back(at_most(fmt::format("U-ladder vs L_{}", n), worst, 1e-12));
  }
  ExtensionSpec spec;
  spec.K = 1;
  spec.kappa = 1;
  spec.m = 1;
  out.push_back(at_most("K/S_1^2(pi/4) = 2", std::abs(spec.alpha(kPi / 4) - 2), 1e-12));
  return out;
}

}  // namespace

std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "integrals") return integrals_suite(seed);
  if (suite == "symmetry") return symmetry_suite(seed);
  if (suite == "extensions") return extensions_suite(seed);
  throw UsageError("unknown check suite: " + suite);
}

int cmd_check(const std::string& suite, std::uint64_t seed, std::ostream& os) {
  const auto results = run_suite(suite, seed);
  bool ok = true;
  for (const auto& r : results) {
    os << fmt::format("[{}] {:<44} {:.3e} {} {:.3e}\n", r.pass ? "PASS" : "FAIL", r.name, r.value, r.relation,
                      r.threshold);
    ok = ok && r.pass;
  }
  os << fmt::format("{}: {}/{} checks passed\n", suite,
                    std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; }),
                    results.size());
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace supint::cli
