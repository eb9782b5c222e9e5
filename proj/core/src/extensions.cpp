#include "supint/extensions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <map>

#include "supint/errors.hpp"

namespace supint::extensions {

double s_kappa(double kappa, double x) {
  if (kappa > 0) {
    const double s = std::sqrt(kappa);
    return std::sin(s * x) / s;
  }
  if (kappa < 0) {
    const double s = std::sqrt(-kappa);
    return std::sinh(s * x) / s;
  }
  return x;
}

double s_kappa_prime(double kappa, double x) {
  if (kappa > 0) return std::cos(std::sqrt(kappa) * x);
  if (kappa < 0) return std::cosh(std::sqrt(-kappa) * x);
  return 1.0;
}

std::string_view CurvedChart::name() const {
  switch (tag) {
    case Tag::kEuclidean2: return "euclidean-2";
    case Tag::kSphere2: return "sphere-2";
    case Tag::kCircle1: return "circle-1";
  }
  return "?";
}

coords::Chart CurvedChart::product_chart() const {
  switch (tag) {
    case Tag::kCircle1: return coords::Chart::kPolar2;
    case Tag::kSphere2: return coords::Chart::kSpherical3;
    case Tag::kEuclidean2: return coords::Chart::kCartesianLine;
  }
  return coords::Chart::kCartesianLine;
}

void CurvedChart::check(std::span<const double> q) const {
  if (static_cast<int>(q.size()) != dim) throw ParameterError("curved chart: wrong coordinate count");
  if (tag == Tag::kSphere2 && std::abs(std::sin(q[0])) < 1e-12) {
    throw SingularChartError("sphere-2: sin(theta) = 0");
  }
}

Eigen::MatrixXd CurvedChart::metric(std::span<const double> q) const {
  check(q);
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(dim, dim);
  if (tag == Tag::kSphere2) g(1, 1) = std::sin(q[0]) * std::sin(q[0]);
  return g;
}

Eigen::MatrixXd CurvedChart::inverse_metric(std::span<const double> q) const {
  return metric(q).inverse();
}

std::vector<Eigen::MatrixXd> CurvedChart::christoffel(std::span<const double> q) const {
  check(q);
  std::vector<Eigen::MatrixXd> gamma(dim, Eigen::MatrixXd::Zero(dim, dim));
  if (tag == Tag::kSphere2) {
    const double s = std::sin(q[0]), c = std::cos(q[0]);
    gamma[0](1, 1) = -s * c;
    gamma[1](0, 1) = gamma[1](1, 0) = c / s;
  }
  return gamma;
}

std::vector<MultiJet> CurvedChart::inverse_metric_diag(std::span<const MultiJet> q) const {
  std::vector<MultiJet> d(dim, MultiJet(1.0));
  if (tag == Tag::kSphere2) {
    const MultiJet s = sin(q[0]);
    d[1] = inv(s * s);
  }
  return d;
}

namespace {

std::vector<double> to_vec(std::span<const double> q) { return {q.begin(), q.end()}; }

double step_for(double x, double base) { return base * (1.0 + std::abs(x)); }

/// Central first derivatives with one Richardson step.
std::vector<double> gradient_fd(const FieldFunction& f, std::span<const double> q) {
  const double base = std::cbrt(std::numeric_limits<double>::epsilon());
  std::vector<double> x = to_vec(q), out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double h = step_for(q[i], base);
    auto d = [&](double hh) {
      x[i] = q[i] + hh;
      const double fp = f(x);
      x[i] = q[i] - hh;
      const double fm = f(x);
      x[i] = q[i];
      return (fp - fm) / (2 * hh);
    };
    out[i] = (4 * d(h / 2) - d(h)) / 3;
  }
  return out;
}

Eigen::MatrixXd hessian_fd(const FieldFunction& f, std::span<const double> q) {
  const int n = static_cast<int>(q.size());
  std::vector<double> x = to_vec(q);
  Eigen::MatrixXd h2(n, n);
  const double f0 = f(x);
  for (int i = 0; i < n; ++i) {
    const double hi = step_for(q[i], 2e-4);
    x[i] = q[i] + hi;
    const double fp = f(x);
    x[i] = q[i] - hi;
    const double fm = f(x);
    x[i] = q[i];
    h2(i, i) = (fp - 2 * f0 + fm) / (hi * hi);
    for (int j = 0; j < i; ++j) {
      const double hj = step_for(q[j], 2e-4);
      auto at = [&](double si, double sj) {
        x[i] = q[i] + si * hi;
        x[j] = q[j] + sj * hj;
        const double v = f(x);
        x[i] = q[i];
        x[j] = q[j];
        return v;
      };
      h2(i, j) = h2(j, i) = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * hi * hj);
    }
  }
  return h2;
}

}  // namespace

double christoffel_consistency(const CurvedChart& chart, std::span<const double> q) {
  const int n = chart.dim;
  const auto gamma = chart.christoffel(q);
  const Eigen::MatrixXd ginv = chart.inverse_metric(q);
  // dg[l](i, j) = d_l g_ij
  std::vector<Eigen::MatrixXd> dg(n);
  std::vector<double> x = to_vec(q);
  for (int l = 0; l < n; ++l) {
    const double h = step_for(q[l], 1e-5);
    x[l] = q[l] + h;
    const Eigen::MatrixXd gp = chart.metric(x);
    x[l] = q[l] - h;
    const Eigen::MatrixXd gm = chart.metric(x);
    x[l] = q[l];
    dg[l] = (gp - gm) / (2 * h);
  }
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        double v = 0.0;
        for (int l = 0; l < n; ++l) v += 0.5 * ginv(k, l) * (dg[i](l, j) + dg[j](l, i) - dg[l](i, j));
        worst = std::max(worst, std::abs(v - gamma[k](i, j)));
      }
    }
  }
  return worst;
}

double hessian_residual(const FieldFunction& g, const CurvedChart& chart, std::span<const double> q) {
  chart.check(q);
  const auto gamma = chart.christoffel(q);
  const auto grad = gradient_fd(g, q);
  const Eigen::MatrixXd metric = chart.metric(q);
  const double gq = g(q);
  Eigen::MatrixXd r = hessian_fd(g, q) + chart.K * gq * metric;
  for (int k = 0; k < chart.dim; ++k) r -= gamma[k] * grad[k];
  return r.cwiseAbs().maxCoeff();
}

double vteo_residual(const FieldFunction& v, const FieldFunction& g, double K, const CurvedChart& chart,
                     std::span<const double> q) {
  chart.check(q);
  const auto dv = gradient_fd(v, q);
  const auto dg = gradient_fd(g, q);
  const Eigen::MatrixXd ginv = chart.inverse_metric(q);
  double s = 0.0;
  for (int i = 0; i < chart.dim; ++i) {
    for (int j = 0; j < chart.dim; ++j) s += ginv(i, j) * dv[i] * dg[j];
  }
  return s - 2 * K * v(q) * g(q);
}

namespace {

std::vector<MultiJet> seed_jets(std::span<const double> q, int order) {
  const int n = static_cast<int>(q.size());
  std::vector<MultiJet> out;
  for (int i = 0; i < n; ++i) out.push_back(MultiJet::variable(q[i], i, n, order));
  return out;
}

}  // namespace

double BaseHamiltonian::value(std::span<const double> q, std::span<const double> p) const {
  chart.check(q);
  const Eigen::MatrixXd ginv = chart.inverse_metric(q);
  double t = 0.0;
  for (int i = 0; i < chart.dim; ++i) t += 0.5 * ginv(i, i) * p[i] * p[i];
  return t + V(q);
}

void BaseHamiltonian::gradient(std::span<const double> q, std::span<const double> p, std::span<double> dq,
                               std::span<double> dp) const {
  chart.check(q);
  const auto jets = seed_jets(q, 1);
  const auto ginv = chart.inverse_metric_diag(jets);
  const MultiJet v = V(std::span<const MultiJet>(jets));
  std::array<int, 3> e{};
  for (int i = 0; i < chart.dim; ++i) {
    dp[i] = ginv[i].value() * p[i];
    e.fill(0);
    e[i] = 1;
    double s = v.coeff(std::span<const int>(e.data(), chart.dim));
    for (int j = 0; j < chart.dim; ++j) {
      const double dgjj = ginv[j].nvars() == 0 ? 0.0 : ginv[j].coeff(std::span<const int>(e.data(), chart.dim));
      s += 0.5 * dgjj * p[j] * p[j];
    }
    dq[i] = s;
  }
}

double ExtensionSpec::alpha(double u) const {
  if (K == 0.0) return -kappa;
  const double s = s_kappa(kappa, c() * u + u0);
  if (std::abs(s) < 1e-12) throw SingularityError("S_kappa(c u + u0)");
  return K / (s * s);
}

double ExtensionSpec::alpha_prime(double u) const {
  if (K == 0.0) return 0.0;
  const double x = c() * u + u0;
  const double s = s_kappa(kappa, x);
  if (std::abs(s) < 1e-12) throw SingularityError("S_kappa(c u + u0)");
  return -2.0 * K * c() * s_kappa_prime(kappa, x) / (s * s * s);
}

Hamiltonian extend_hamiltonian(const ExtensionSpec& spec) {
  if (spec.m < 1) throw ParameterError("extension: m must be positive");
  const int n = spec.L.chart.dim;
  Hamiltonian h;
  h.chart = spec.L.chart.product_chart();
  h.dim = n + 1;
  h.value = [spec, n](const Eigen::VectorXd& q, const Eigen::VectorXd& p) {
    std::span<const double> bq(q.data() + 1, n), bp(p.data() + 1, n);
    return 0.5 * p(0) * p(0) + spec.alpha(q(0)) * spec.L.value(bq, bp);
  };
  h.gradient = [spec, n](const Eigen::VectorXd& q, const Eigen::VectorXd& p, Eigen::VectorXd& dq,
                         Eigen::VectorXd& dp) {
    dq.resize(n + 1);
    dp.resize(n + 1);
    std::span<const double> bq(q.data() + 1, n), bp(p.data() + 1, n);
    const double a = spec.alpha(q(0));
    spec.L.gradient(bq, bp, std::span<double>(dq.data() + 1, n), std::span<double>(dp.data() + 1, n));
    dq.tail(n) *= a;
    dp.tail(n) *= a;
    dq(0) = spec.alpha_prime(q(0)) * spec.L.value(bq, bp);
    dp(0) = p(0);
  };
  return h;
}

namespace {

using Exponent = std::array<int, 3>;
using MomentumPoly = std::map<Exponent, MultiJet>;

MultiJet partial_or_zero(const MultiJet& x, int var) {
  return x.nvars() == 0 ? MultiJet(0.0) : x.partial(var);
}

/// X_L applied to a momentum polynomial with jet coefficients in q.
MomentumPoly apply_lie(const MomentumPoly& poly, const std::vector<MultiJet>& ginv,
                       const std::vector<std::vector<MultiJet>>& dginv, const std::vector<MultiJet>& dv, int dim) {
  MomentumPoly out;
  auto add = [&](Exponent e, const MultiJet& c) {
    auto it = out.find(e);
    if (it == out.end()) {
      out.emplace(e, c);
    } else {
      it->second += c;
    }
  };
  for (const auto& [e, c] : poly) {
    for (int i = 0; i < dim; ++i) {
      // g^{ii} p_i d_i c
      Exponent up = e;
      ++up[i];
      add(up, ginv[i] * partial_or_zero(c, i));
      if (e[i] == 0) continue;
      // -(1/2 d_i g^{jj} p_j^2 + d_i V) e_i c p^(e - e_i)
      Exponent down = e;
      --down[i];
      add(down, -(static_cast<double>(e[i]) * dv[i]) * c);
      for (int j = 0; j < dim; ++j) {
        if (dginv[j][i].nvars() == 0 && dginv[j][i].value() == 0.0) continue;
        Exponent quad = down;
        quad[j] += 2;
        add(quad, -(0.5 * e[i]) * dginv[j][i] * c);
      }
    }
  }
  return out;
}

double eval_poly(const MomentumPoly& poly, std::span<const double> p) {
  double s = 0.0;
  for (const auto& [e, c] : poly) {
    double term = c.value();
    for (std::size_t i = 0; i < p.size(); ++i) term *= std::pow(p[i], e[i]);
    s += term;
  }
  return s;
}

}  // namespace

std::vector<double> lie_powers(const FieldFunction& g, const BaseHamiltonian& L, int m, std::span<const double> q,
                               std::span<const double> p) {
  if (m < 0 || m > kMaxUOrder) throw ParameterError("U ladder order must be in [0, 8]");
  L.chart.check(q);
  const int dim = L.chart.dim;
  const auto jets = seed_jets(q, m + 1);
  std::span<const MultiJet> js(jets);
  const auto ginv = L.chart.inverse_metric_diag(js);
  std::vector<std::vector<MultiJet>> dginv(dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) dginv[j].push_back(partial_or_zero(ginv[j], i));
  }
  const MultiJet v = L.V(js);
  std::vector<MultiJet> dv;
  for (int i = 0; i < dim; ++i) dv.push_back(partial_or_zero(v, i));

  const auto gjets = seed_jets(q, m);
  MomentumPoly poly{{Exponent{0, 0, 0}, g(std::span<const MultiJet>(gjets))}};
  std::vector<double> out{eval_poly(poly, p)};
  for (int k = 1; k <= m; ++k) {
    poly = apply_lie(poly, ginv, dginv, dv, dim);
    out.push_back(eval_poly(poly, p));
  }
  return out;
}

integrals::PhaseFunction build_U_ladder(FieldFunction g, ScalarFunction gamma, int m, BaseHamiltonian L) {
  if (m < 1 || m > kMaxUOrder) throw ParameterError("U ladder order must be in [1, 8]");
  const int n = L.chart.dim;
  auto eval = [g = std::move(g), gamma = std::move(gamma), m, L = std::move(L), n](const Eigen::VectorXd& q,
                                                                                    const Eigen::VectorXd& p) {
    std::span<const double> bq(q.data() + 1, n), bp(p.data() + 1, n);
    const auto xk = lie_powers(g, L, m, bq, bp);
    const double gu = gamma(q(0));
    double s = 0.0, binom = 1.0;
    for (int k = 0; k <= m; ++k) {
      s += binom * std::pow(p(0), m - k) * std::pow(gu, k) * xk[k];
      binom = binom * (m - k) / (k + 1);
    }
    return s;
  };
  return integrals::PhaseFunction("U^" + std::to_string(m) + "(G)", L.chart.product_chart(), n + 1, m, eval);
}

}  // namespace supint::extensions
