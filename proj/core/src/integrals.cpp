#include "supint/integrals.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <tuple>

namespace supint::integrals {

using coords::Chart;
using coords::PhaseState;

PhaseFunction::PhaseFunction(std::string name, Chart chart, int dim, int degree, Evaluator f)
    : name_(std::move(name)), chart_(chart), dim_(dim), degree_(degree), f_(std::move(f)) {}

double PhaseFunction::operator()(const PhaseState& s) const {
  if (!f_) throw ParameterError("empty phase function");
  if (s.chart == chart_) {
    if (s.dimension() != dim_) throw ChartMismatchError(name_ + ": state dimension mismatch");
    return f_(s.q, s.p);
  }
  if (!coords::connected(s.chart, chart_, s.dimension()) || s.dimension() != dim_) {
    throw ChartMismatchError(name_ + " is defined on " + std::string(coords::to_string(chart_)) + ", state is on " +
                             std::string(coords::to_string(s.chart)));
  }
  const PhaseState t = coords::chart_transform(s, chart_);
  return f_(t.q, t.p);
}

double eval_phase_function(const PhaseFunction& f, const PhaseState& s) { return f(s); }

PhaseFunction hamiltonian_function(const Hamiltonian& h, std::string name) {
  return PhaseFunction(std::move(name), h.chart, h.dim, 2, h.value);
}

std::vector<Monomial> ladder_polynomial(int n, const ScalarFunction& f, double psi0, double psi) {
  if (n < 1 || n > kMaxLadderOrder) {
    throw ParameterError("ladder order must be in [1, " + std::to_string(kMaxLadderOrder) + "]");
  }
  const double dn = n;
  const Jet fp = f(Jet::variable(psi, n + 1)).derivative();
  using Key = std::tuple<int, int, int>;
  std::map<Key, Jet> terms;
  terms[{0, 0, 0}] = cos(Jet::variable(psi, n) * dn + psi0);
  for (int step = 0; step < n; ++step) {
    std::map<Key, Jet> next;
    auto add = [&next](const Key& k, const Jet& g) {
      auto it = next.find(k);
      if (it == next.end()) {
        next.emplace(k, g);
      } else {
        it->second += g;
      }
    };
    for (const auto& [key, g] : terms) {
      const auto [a, b, c] = key;
      add({a + 1, b, c}, g);
      if (g.order() == 0) continue;
      // Both halves of the derivation drop one order so terms sharing c share
      // a jet order.
      add({a, b + 1, c + 1}, g.derivative() * (1.0 / dn));
      if (b > 0) add({a, b - 1, c + 1}, (fp * g).truncated(g.order() - 1) * (-b / dn));
    }
    terms = std::move(next);
  }
  std::vector<Monomial> out;
  out.reserve(terms.size());
  for (const auto& [key, g] : terms) {
    const auto [a, b, c] = key;
    out.push_back({a, b, c, g[0]});
  }
  return out;
}

namespace {

double eval_monomials(const std::vector<Monomial>& terms, double r, double pr, double ppsi) {
  double acc = 0.0;
  for (const auto& m : terms) {
    acc += m.coeff * std::pow(pr, m.a) * std::pow(ppsi, m.b) * std::pow(r, -m.c);
  }
  return acc;
}

void require_radius(double r, const std::string& who) {
  if (!(r > 0.0)) throw SingularChartError(who + ": r <= 0");
}

}  // namespace

PhaseFunction build_ladder_integral(int n, ScalarFunction f, double psi0, Chart chart) {
  if (n < 1 || n > kMaxLadderOrder) {
    throw ParameterError("ladder order must be in [1, " + std::to_string(kMaxLadderOrder) + "]");
  }
  if (chart != Chart::kPolar2 && chart != Chart::kCylindrical3) {
    throw ChartMismatchError("ladder integrals live on polar-2 or cylindrical-3");
  }
  const int dim = chart == Chart::kPolar2 ? 2 : 3;
  return PhaseFunction("L" + std::to_string(n), chart, dim, n,
                       [n, f = std::move(f), psi0](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
                         require_radius(q[0], "ladder integral");
                         const auto terms = ladder_polynomial(n, f, psi0, q[1]);
                         return eval_monomials(terms, q[0], p[0], p[1]);
                       });
}

ScalarFunction sin_family_profile(double k, int n, double psi0) {
  if (n < 1) throw ParameterError("sin-family order must be >= 1");
  const double dn = n;
  return ScalarFunction::generic([k, dn, psi0](const auto& psi) {
    using std::sin;
    using T = std::decay_t<decltype(psi)>;
    if (k == 0.0) return T(0.0);
    const T s = sin(dn * psi + psi0);
    return k / (s * s);
  });
}

const PhaseFunction& StandardIntegralSet::get(const std::string& name) const {
  for (const auto& m : members) {
    if (m.name() == name) return m;
  }
  throw UnknownIdError(system + " has no integral named " + name);
}

StandardIntegralSet three_body_integrals(ScalarFunction f, const std::string& system) {
  StandardIntegralSet set;
  set.system = system;
  set.chart = Chart::kCylindrical3;
  set.dim = 3;
  auto h1 = [f](const Eigen::VectorXd& q, const Eigen::VectorXd& p) { return 0.5 * p[1] * p[1] + f(q[1]); };
  set.add(PhaseFunction("H", Chart::kCylindrical3, 3, 2, [f](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
    require_radius(q[0], "H");
    const double r2 = q[0] * q[0];
    return 0.5 * (p[0] * p[0] + p[1] * p[1] / r2 + p[2] * p[2]) + f(q[1]) / r2;
  }));
  set.add(PhaseFunction("H1", Chart::kCylindrical3, 3, 2, h1));
  set.add(PhaseFunction("H2", Chart::kCylindrical3, 3, 2,
                        [](const Eigen::VectorXd&, const Eigen::VectorXd& p) { return 0.5 * p[2] * p[2]; }));
  set.add(PhaseFunction("H3", Chart::kCylindrical3, 3, 2, [h1](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
    require_radius(q[0], "H3");
    const double r = q[0], u = q[2];
    const double a = r * p[2] - u * p[0];
    return 0.5 * a * a + (u * u) / (r * r) * h1(q, p);
  }));
  return set;
}

StandardIntegralSet evans_integrals(const potentials::Potential& pot) {
  const std::string& id = pot.id();
  if (id != "evans-1" && id != "evans-2" && id != "evans-3" && id != "evans-4") {
    throw UnknownIdError("not an Evans potential: " + id);
  }
  const int kind = id.back() - '0';
  constexpr Chart kChart = Chart::kSphericalCylindrical4;
  StandardIntegralSet set;
  set.system = "evans-4d(" + id + ")";
  set.chart = kChart;
  set.dim = 4;

  // Coordinates (r, psi1, psi2, u); momenta (p_r, p_psi1, p_psi2, p_u).
  auto v = [pot](const Eigen::VectorXd& q) {
    return pot.value(kChart, std::span<const double>(q.data(), 4));
  };
  auto h1 = [v](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
    const double s2 = std::sin(q[2]);
    return 0.5 * (p[2] * p[2] + p[1] * p[1] / (s2 * s2)) + q[0] * q[0] * v(q);
  };
  // Three-dimensional Hamiltonian (no u part).
  auto h3d = [v](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
    const double r2 = q[0] * q[0];
    const double s2 = std::sin(q[2]);
    return 0.5 * (p[0] * p[0] + p[2] * p[2] / r2 + p[1] * p[1] / (r2 * s2 * s2)) + v(q);
  };
  auto p_z = [](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
    return std::cos(q[2]) * p[0] - std::sin(q[2]) * p[2] / q[0];
  };

  set.add(PhaseFunction("H", kChart, 4, 2, [h3d](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
    require_radius(q[0], "H");
    return 0.5 * p[3] * p[3] + h3d(q, p);
  }));
  set.add(PhaseFunction("H1", kChart, 4, 2, h1));

  if (kind <= 3) {
    const ScalarFunction f = pot.function("F");
    const double k = kind == 1 ? 0.0 : pot.param("k");
    set.add(PhaseFunction("Ia", kChart, 4, 2, [f](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
      return 0.5 * p[1] * p[1] + f(q[1]);
    }));
    if (kind == 1) {
      set.add(PhaseFunction("Ib", kChart, 4, 2, [p_z](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
        const double pz = p_z(q, p);
        return 0.5 * pz * pz;
      }));
    } else if (kind == 2) {
      set.add(PhaseFunction("Ib", kChart, 4, 2, [p_z, k](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
        const double pz = p_z(q, p);
        const double z = q[0] * std::cos(q[2]);
        return 0.5 * pz * pz + (k == 0.0 ? 0.0 : k / (z * z));
      }));
    } else {
      // Separation constant in parabolic coordinates xi = r + z, eta = r - z.
      set.add(PhaseFunction("Ib", kChart, 4, 2,
                            [f, k, p_z, h3d](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
                              const double r = q[0], c2 = std::cos(q[2]), s2 = std::sin(q[2]);
                              const double xi = r * (1.0 + c2);
                              if (!(xi > 0.0)) throw SingularityError("r + z");
                              const double p_rho = s2 * p[0] + c2 * p[2] / r;
                              const double p_xi = 0.5 * ((1.0 - c2) / s2 * p_rho + p_z(q, p));
                              return 2.0 * xi * p_xi * p_xi + (0.5 * p[1] * p[1] + f(q[1]) - k) / xi -
                                     xi * h3d(q, p);
                            }));
    }
  } else {
    const double k1 = pot.param("k1"), k2 = pot.param("k2"), k3 = pot.param("k3");
    set.add(PhaseFunction("Ia", kChart, 4, 2, [k2, k3](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
      double acc = 0.5 * p[1] * p[1];
      if (k2 != 0.0) acc += k2 / std::pow(std::cos(q[1]), 2);
      if (k3 != 0.0) acc += k3 / std::pow(std::sin(q[1]), 2);
      return acc;
    }));
    set.add(PhaseFunction("Ib", kChart, 4, 2, [k1, k3](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
      const PhaseState c = coords::chart_transform({kChart, q, p}, Chart::kOrthogonalZ);
      const double y = c.q[1], z = c.q[2];
      const double lx = y * c.p[2] - z * c.p[1];
      double acc = 0.5 * lx * lx;
      if (k3 != 0.0) acc += k3 * (y * y + z * z) / (y * y);
      if (k1 != 0.0) acc += k1 * (y * y + z * z) / (z * z);
      return acc;
    }));
  }

  set.add(PhaseFunction("H5", kChart, 4, 2,
                        [](const Eigen::VectorXd&, const Eigen::VectorXd& p) { return p[3] * p[3]; }));
  set.add(PhaseFunction("H6", kChart, 4, 2, [h1](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
    require_radius(q[0], "H6");
    const double r = q[0], u = q[3];
    const double a = u * p[0] - r * p[3];
    return 0.5 * a * a + (u * u) / (r * r) * h1(q, p);
  }));
  return set;
}

StandardIntegralSet sphere_integrals(const potentials::Potential& pot) {
  if (!pot.supports(Chart::kSphere2, 2)) throw ChartMismatchError(pot.id() + " has no sphere-2 form");
  StandardIntegralSet set;
  set.system = "sphere(" + pot.id() + ")";
  set.chart = Chart::kSphere2;
  set.dim = 2;
  set.add(hamiltonian_function(potentials::natural_hamiltonian(pot, Chart::kSphere2, 2), "H"));
  return set;
}

StandardIntegralSet standard_integrals(const potentials::Potential& pot) {
  const std::string& id = pot.id();
  if (id.rfind("evans-", 0) == 0) return evans_integrals(pot);
  if (id.rfind("platonic-", 0) == 0 || id == "higgs-cuboctahedral") return sphere_integrals(pot);
  return three_body_integrals(pot.angular_profile(), "three-body(" + id + ")");
}

StandardIntegralSet standard_integrals(const std::string& system, const potentials::ParamMap& params) {
  return standard_integrals(potentials::make_potential(system, params));
}

double default_bracket_step() { return std::cbrt(std::numeric_limits<double>::epsilon()); }

void phase_gradient(const PhaseCallable& f, const PhaseState& s, Eigen::VectorXd& dq, Eigen::VectorXd& dp,
                    double base) {
  const int n = s.dimension();
  dq.resize(n);
  dp.resize(n);
  auto central = [&](bool momentum, int i, double h) {
    PhaseState a = s, b = s;
    Eigen::VectorXd& va = momentum ? a.p : a.q;
    Eigen::VectorXd& vb = momentum ? b.p : b.q;
    va[i] += h;
    vb[i] -= h;
    // Divide by the step actually taken so that linear functions come out exact.
    return (f(a) - f(b)) / (va[i] - vb[i]);
  };
  for (int i = 0; i < n; ++i) {
    for (int m = 0; m < 2; ++m) {
      const bool momentum = m == 1;
      const double x = momentum ? s.p[i] : s.q[i];
      const double h = base * (1.0 + std::abs(x));
      const double d = (4.0 * central(momentum, i, 0.5 * h) - central(momentum, i, h)) / 3.0;
      (momentum ? dp : dq)[i] = d;
    }
  }
}

double poisson_bracket(const PhaseCallable& f, const PhaseCallable& g, const PhaseState& s, double step) {
  coords::validate(s);
  Eigen::VectorXd fq, fp, gq, gp;
  phase_gradient(f, s, fq, fp, step);
  phase_gradient(g, s, gq, gp, step);
  return fq.dot(gp) - fp.dot(gq);
}

}  // namespace supint::integrals
