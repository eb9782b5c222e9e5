#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "supint/potentials.hpp"

namespace supint::potentials {

using coords::Chart;

namespace {

template <class T>
T sq(const T& x) {
  return x * x;
}

template <class Q>
using elem_t = typename Q::value_type;

double line_scale(std::span<const double> q) {
  double m = 0.0;
  for (double x : q) m = std::max(m, std::abs(x));
  return 1.0 + m;
}

ParamMap resolve(const std::string& id, const std::vector<ParamSpec>& spec, const ParamMap& given) {
  ParamMap out;
  for (const auto& [name, v] : given) {
    const bool known = std::any_of(spec.begin(), spec.end(), [&](const ParamSpec& p) { return p.name == name; });
    if (!known) throw ParameterError(id + ": unknown parameter '" + name + "'");
    if (!std::isfinite(v)) throw ParameterError(id + ": parameter '" + name + "' is not finite");
  }
  for (const auto& p : spec) {
    const auto it = given.find(p.name);
    if (it != given.end()) {
      out[p.name] = it->second;
    } else if (p.default_value) {
      out[p.name] = *p.default_value;
    } else {
      throw ParameterError(id + ": missing parameter '" + p.name + "'");
    }
  }
  return out;
}

long as_integer(const std::string& id, const std::string& name, double v, long min) {
  if (v != std::floor(v) || v < static_cast<double>(min) || v > 1e6) {
    throw ParameterError(id + ": parameter '" + name + "' must be an integer >= " + std::to_string(min));
  }
  return static_cast<long>(v);
}

// Models of F(psi)/r^2 in polar-2 (r, psi) and cylindrical-3 (r, psi, u).
template <class F, class W>
std::vector<ChartModel> polar_models(F angular, W walls, std::vector<std::string> names) {
  auto f = [angular](auto q) {
    using T = elem_t<decltype(q)>;
    return T(angular(q[1])) / (q[0] * q[0]);
  };
  auto w = [walls](std::span<const double> q) { return walls(q[1]); };
  return {make_model(Chart::kPolar2, 2, f, w, names), make_model(Chart::kCylindrical3, 3, f, w, names)};
}

// Models of V(r, polar, azimuth) in spherical-3, spherical-cylindrical-4 and,
// through r^2 V at r = 1, on sphere-2.
template <class F, class W>
std::vector<ChartModel> spherical_models(F angular, W walls, std::vector<std::string> names) {
  // angular(polar, azimuth) = r^2 V
  auto f3 = [angular](auto q) { return angular(q[1], q[2]) / (q[0] * q[0]); };
  auto w3 = [walls](std::span<const double> q) { return walls(q[1], q[2]); };
  auto f4 = [angular](auto q) { return angular(q[2], q[1]) / (q[0] * q[0]); };
  auto w4 = [walls](std::span<const double> q) { return walls(q[2], q[1]); };
  auto fs = [angular](auto q) { return angular(q[0], q[1]); };
  auto ws = [walls](std::span<const double> q) { return walls(q[0], q[1]); };
  return {make_model(Chart::kSpherical3, 3, f3, w3, names),
          make_model(Chart::kSphericalCylindrical4, 4, f4, w4, names),
          make_model(Chart::kSphere2, 2, fs, ws, names)};
}

Potential make_free() {
  std::vector<ChartModel> models;
  auto zero = [](auto q) {
    using T = elem_t<decltype(q)>;
    return T(0.0);
  };
  auto none = [](std::span<const double>) { return std::vector<double>{}; };
  for (Chart c : coords::all_charts()) models.push_back(make_model(c, 0, zero, none, {}));
  return Potential("free", {}, std::move(models));
}

Potential make_oscillator(const ParamMap& p) {
  const double w2 = p.at("w") * p.at("w");
  auto f = [w2](auto q) {
    using T = elem_t<decltype(q)>;
    T s(0.0);
    for (const auto& x : q) s = s + x * x;
    return 0.5 * w2 * s;
  };
  auto none = [](std::span<const double>) { return std::vector<double>{}; };
  return Potential("oscillator", p, {make_model(Chart::kCartesianLine, 0, f, none, {})});
}

Potential make_calogero(const ParamMap& p) {
  const double k = p.at("k");
  auto f = [k](auto q) {
    using T = elem_t<decltype(q)>;
    if (k == 0.0) return T(0.0);
    return k / sq(q[0] - q[1]) + k / sq(q[1] - q[2]) + k / sq(q[2] - q[0]);
  };
  auto w = [k](std::span<const double> q) {
    if (k == 0.0) return std::vector<double>{};
    const double s = line_scale(q);
    return std::vector<double>{(q[0] - q[1]) / s, (q[1] - q[2]) / s, (q[2] - q[0]) / s};
  };
  std::vector<std::string> names = k == 0.0 ? std::vector<std::string>{}
                                             : std::vector<std::string>{"X1 = x1-x2", "X2 = x2-x3", "X3 = x3-x1"};
  return Potential("calogero", p, {make_model(Chart::kCartesianLine, 3, f, w, names)});
}

Potential make_wolfes(const ParamMap& p) {
  const double h = p.at("h");
  // X_i - X_{i+1} with X1 = x1-x2, X2 = x2-x3, X3 = x3-x1
  auto f = [h](auto q) {
    using T = elem_t<decltype(q)>;
    if (h == 0.0) return T(0.0);
    const T d1 = q[0] - 2.0 * q[1] + q[2];
    const T d2 = q[1] - 2.0 * q[2] + q[0];
    const T d3 = q[2] - 2.0 * q[0] + q[1];
    return h / sq(d1) + h / sq(d2) + h / sq(d3);
  };
  auto w = [h](std::span<const double> q) {
    if (h == 0.0) return std::vector<double>{};
    const double s = line_scale(q);
    return std::vector<double>{(q[0] - 2.0 * q[1] + q[2]) / s, (q[1] - 2.0 * q[2] + q[0]) / s,
                               (q[2] - 2.0 * q[0] + q[1]) / s};
  };
  std::vector<std::string> names = h == 0.0 ? std::vector<std::string>{}
                                             : std::vector<std::string>{"X1-X2", "X2-X3", "X3-X1"};
  return Potential("wolfes", p, {make_model(Chart::kCartesianLine, 3, f, w, names)});
}

Potential make_sin_family(const ParamMap& p) {
  const double k = p.at("k");
  const double n = static_cast<double>(as_integer("sin-family", "n", p.at("n"), 1));
  const double psi0 = p.at("psi0");
  auto angular = [k, n, psi0](auto psi) {
    using std::sin;
    using T = decltype(psi);
    if (k == 0.0) return T(0.0);
    return k / sq(sin(n * psi + psi0));
  };
  auto walls = [k, n, psi0](double psi) {
    if (k == 0.0) return std::vector<double>{};
    return std::vector<double>{std::sin(n * psi + psi0)};
  };
  std::vector<std::string> names;
  if (k != 0.0) names = {"sin(n psi + psi0)"};
  return Potential("sin-family", p, polar_models(angular, walls, names));
}

Potential make_ttw(const ParamMap& given) {
  ParamMap p = given;
  if (auto it = p.find("h"); it != p.end()) {
    if (p.count("p") || p.count("q")) throw ParameterError("ttw: give either h or p/q, not both");
    if (it->second != std::floor(it->second)) {
      throw ParameterError("ttw: non-integral h must be given as integers p and q (h = p/q)");
    }
    p["p"] = it->second;
    p["q"] = 1.0;
    p.erase(it);
  }
  const std::vector<ParamSpec> spec{{"k1", 0.0, ""}, {"k2", 1.0, ""}, {"k3", 1.0, ""}, {"p", 1.0, ""}, {"q", 1.0, ""}};
  p = resolve("ttw", spec, p);
  const long num = as_integer("ttw", "p", p.at("p"), 1);
  const long den = as_integer("ttw", "q", p.at("q"), 1);
  if (std::gcd(num, den) != 1) throw ParameterError("ttw: p and q must be coprime");
  const double h = static_cast<double>(num) / static_cast<double>(den);
  const double k1 = p.at("k1"), k2 = p.at("k2"), k3 = p.at("k3");
  auto angular = [=](auto psi) {
    using std::cos;
    using std::sin;
    using T = decltype(psi);
    T v = T(k1);
    if (k2 != 0.0) v = v + k2 / sq(cos(h * psi));
    if (k3 != 0.0) v = v + k3 / sq(sin(h * psi));
    return v;
  };
  auto walls = [=](double psi) {
    std::vector<double> w;
    if (k2 != 0.0) w.push_back(std::cos(h * psi));
    if (k3 != 0.0) w.push_back(std::sin(h * psi));
    return w;
  };
  std::vector<std::string> names;
  if (k2 != 0.0) names.push_back("cos(h psi)");
  if (k3 != 0.0) names.push_back("sin(h psi)");
  return Potential("ttw", p, polar_models(angular, walls, names));
}

Potential make_evans_impl(int kind, ParamMap p, ScalarFunction f, bool f_sin_wall) {
  const double k = kind == 1 ? 0.0 : p.at("k");
  auto angular = [kind, k, f](auto polar, auto azimuth) {
    using std::cos;
    using std::sin;
    using T = decltype(polar);
    const T s2 = sq(sin(polar));
    const T fv = f(azimuth);
    switch (kind) {
      case 1:
        return fv / s2;
      case 2:
        return k / sq(cos(polar)) + fv / s2;
      default:
        return (k * cos(polar) + fv) / s2;
    }
  };
  auto walls = [kind, k, f_sin_wall](double polar, double azimuth) {
    std::vector<double> w{std::sin(polar)};
    if (kind == 2 && k != 0.0) w.push_back(std::cos(polar));
    if (f_sin_wall) w.push_back(std::sin(azimuth));
    return w;
  };
  std::vector<std::string> names{"sin(psi2)"};
  if (kind == 2 && k != 0.0) names.push_back("cos(psi2)");
  if (f_sin_wall) names.push_back("sin(psi1)");
  Potential pot("evans-" + std::to_string(kind), std::move(p), spherical_models(angular, walls, names));
  pot.set_function("F", std::move(f));
  return pot;
}

Potential make_evans4(const ParamMap& p) {
  const double k = p.at("k"), k1 = p.at("k1"), k2 = p.at("k2"), k3 = p.at("k3");
  auto angular = [=](auto polar, auto azimuth) {
    using std::cos;
    using std::sin;
    using T = decltype(polar);
    T v = T(k);
    if (k1 != 0.0) v = v + k1 / sq(cos(polar));
    if (k2 != 0.0 || k3 != 0.0) {
      T inner = T(0.0);
      if (k2 != 0.0) inner = inner + k2 / sq(cos(azimuth));
      if (k3 != 0.0) inner = inner + k3 / sq(sin(azimuth));
      v = v + inner / sq(sin(polar));
    }
    return v;
  };
  auto walls = [=](double polar, double azimuth) {
    std::vector<double> w;
    if (k1 != 0.0) w.push_back(std::cos(polar));
    if (k2 != 0.0 || k3 != 0.0) w.push_back(std::sin(polar));
    if (k2 != 0.0) w.push_back(std::cos(azimuth));
    if (k3 != 0.0) w.push_back(std::sin(azimuth));
    return w;
  };
  std::vector<std::string> names;
  if (k1 != 0.0) names.push_back("cos(psi2)");
  if (k2 != 0.0 || k3 != 0.0) names.push_back("sin(psi2)");
  if (k2 != 0.0) names.push_back("cos(psi1)");
  if (k3 != 0.0) names.push_back("sin(psi1)");
  return Potential("evans-4", p, spherical_models(angular, walls, names));
}

Potential make_higgs(const ParamMap& p) {
  const double g = p.at("g");
  auto f = [g](auto q) {
    using std::cos;
    using std::sin;
    using T = elem_t<decltype(q)>;
    if (g == 0.0) return T(0.0);
    const T s2 = sq(sin(q[0]));
    const T k = s2 / sq(cos(q[0]));
    const T c4 = cos(4.0 * q[1]);
    const T d = k - 8.0 + 8.0 / k - k * c4;
    return 4.0 * g / s2 * (1.0 / (1.0 + c4) + (k - 6.0) / d + 4.0 * (k - 16.0 + 16.0 / k) / sq(d));
  };
  auto w = [g](std::span<const double> q) {
    if (g == 0.0) return std::vector<double>{};
    const double s = std::sin(q[0]), c = std::cos(q[0]);
    if (!(std::abs(s) > kWallTolerance) || !(std::abs(c) > kWallTolerance)) return std::vector<double>{s, c, 1.0, 1.0};
    const double k = s * s / (c * c);
    const double c4 = std::cos(4.0 * q[1]);
    const double d = k - 8.0 + 8.0 / k - k * c4;
    return std::vector<double>{s, c, 0.5 * (1.0 + c4), d / (1.0 + k + 1.0 / k)};
  };
  std::vector<std::string> names;
  if (g != 0.0) names = {"sin(theta)", "cos(theta)", "1 + cos(4 phi)", "k - 8 + 8/k - k cos(4 phi)"};
  return Potential("higgs-cuboctahedral", p, {make_model(Chart::kSphere2, 2, f, w, names)});
}

// Unit vectors along the six five-fold axes of the icosahedral frame; f3 is
// proportional to the product of their dot products with the position.
std::array<std::array<double, 3>, 6> icosa_axes() {
  std::array<std::array<double, 3>, 6> a{};
  a[0] = {0.0, 0.0, 1.0};
  const double s = 2.0 / std::sqrt(5.0), c = 1.0 / std::sqrt(5.0);
  for (int k = 0; k < 5; ++k) {
    const double phi = 2.0 * std::numbers::pi * k / 5.0;
    a[static_cast<std::size_t>(k + 1)] = {s * std::cos(phi), s * std::sin(phi), c};
  }
  return a;
}

template <class T>
T f3_printed(const T& theta, const T& phi) {
  using std::cos;
  using std::sin;
  const T ct = cos(theta), st = sin(theta);
  const T cp = cos(phi), sp = sin(phi);
  const T sp2 = sp * sp;
  const T ct2 = ct * ct, st2 = st * st;
  return -ct * (ct2 * ct2 * ct - 5.0 * st2 * ct2 * ct + 5.0 * st2 * st2 * ct +
                st2 * st2 * st * (32.0 * cp * sp2 * sp2 - 24.0 * cp * sp2 + 2.0 * cp));
}

template <class T>
T platonic_angular(int kind, const T& theta, const T& phi) {
  using std::cos;
  using std::sin;
  if (kind == 3) return f3_printed(theta, phi);
  const T f1 = sq(sin(theta)) * cos(theta) * cos(phi) * sin(phi);
  return kind == 1 ? f1 : f1 * f1;
}

Potential make_platonic(int kind) {
  auto angular = [kind](auto theta, auto phi) { return 1.0 / platonic_angular(kind, theta, phi); };
  auto walls = [kind](double theta, double phi) {
    if (kind == 3) {
      const double x[3] = {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
      std::vector<double> w;
      for (const auto& a : icosa_axes()) w.push_back(a[0] * x[0] + a[1] * x[1] + a[2] * x[2]);
      return w;
    }
    return std::vector<double>{std::cos(theta), std::cos(phi), std::sin(phi)};
  };
  std::vector<std::string> names;
  if (kind == 3) {
    for (int i = 0; i < 6; ++i) names.push_back("a" + std::to_string(i) + " . x (five-fold axis plane)");
  } else {
    names = {"cos(theta)", "cos(phi)", "sin(phi)"};
  }
  return Potential("platonic-" + std::to_string(kind), {}, spherical_models(angular, walls, names));
}

const std::vector<ParamSpec> kEvansF{{"a", 1.0, "F = a + b / sin^2 psi1"}, {"b", 1.0, "F = a + b / sin^2 psi1"}};

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> e;
    const std::vector<std::string> any{"any"};
    const std::vector<std::string> line3{"cartesian-line(3)", "orthogonal-z(3)", "cylindrical-3"};
    const std::vector<std::string> polar{"polar-2", "cylindrical-3", "cartesian-line(2|3)"};
    const std::vector<std::string> sph{"spherical-3", "spherical-cylindrical-4", "sphere-2", "cartesian-line(3|4)"};
    e.push_back({"free", "V = 0", {}, any});
    e.push_back({"oscillator", "w^2 |x|^2 / 2", {{"w", 1.0, "frequency"}}, {"cartesian-line"}});
    e.push_back({"calogero", "sum_i k / X_i^2", {{"k", 1.0, "coupling"}}, line3});
    e.push_back({"wolfes", "sum_i h / (X_i - X_{i+1})^2", {{"h", 1.0, "coupling"}}, line3});
    e.push_back({"sin-family",
                 "k / (r sin(n psi + psi0))^2",
                 {{"k", 1.0, "coupling"}, {"n", 3.0, "integer >= 1"}, {"psi0", 0.0, "phase"}},
                 polar});
    e.push_back({"ttw",
                 "(k1 + k2 / cos^2(h psi) + k3 / sin^2(h psi)) / r^2, h = p/q",
                 {{"k1", 0.0, ""}, {"k2", 1.0, ""}, {"k3", 1.0, ""}, {"p", 1.0, "integer >= 1"}, {"q", 1.0, "integer >= 1"}},
                 polar});
    auto with_f = [](std::vector<ParamSpec> base) {
      base.insert(base.end(), kEvansF.begin(), kEvansF.end());
      return base;
    };
    e.push_back({"evans-1", "F(psi1) / (r3 sin psi2)^2", with_f({}), sph});
    e.push_back({"evans-2", "k / (r3 cos psi2)^2 + F(psi1) / (r3 sin psi2)^2", with_f({{"k", 1.0, ""}}), sph});
    e.push_back({"evans-3", "(k cos psi2 + F(psi1)) / (r3 sin psi2)^2", with_f({{"k", 1.0, ""}}), sph});
    e.push_back({"evans-4",
                 "(k + k1 / cos^2 psi2 + (k2 / cos^2 psi1 + k3 / sin^2 psi1) / sin^2 psi2) / r3^2",
                 {{"k", 1.0, ""}, {"k1", 1.0, ""}, {"k2", 1.0, ""}, {"k3", 1.0, ""}},
                 sph});
    e.push_back({"higgs-cuboctahedral",
                 "4g / sin^2 theta [1/(1+cos 4phi) + (k-6)/D + 4(k-16+16/k)/D^2], k = tan^2 theta",
                 {{"g", 1.0, "coupling"}},
                 {"sphere-2"}});
    e.push_back({"platonic-1", "1 / (r3^2 f1), f1 = sin^2 theta cos theta cos phi sin phi", {}, sph});
    e.push_back({"platonic-2", "1 / (r3^2 f2), f2 = f1^2", {}, sph});
    e.push_back({"platonic-3", "1 / (r3^2 f3), icosahedral invariant f3", {}, sph});
    return e;
  }();
  return entries;
}

Potential make_potential(const std::string& id, const ParamMap& params) {
  const auto& cat = catalog();
  const auto it = std::find_if(cat.begin(), cat.end(), [&](const CatalogEntry& e) { return e.id == id; });
  if (it == cat.end()) throw UnknownIdError("unknown potential id: " + id);
  if (id == "ttw") return make_ttw(params);
  const ParamMap p = resolve(id, it->params, params);
  if (id == "free") return make_free();
  if (id == "oscillator") return make_oscillator(p);
  if (id == "calogero") return make_calogero(p);
  if (id == "wolfes") return make_wolfes(p);
  if (id == "sin-family") return make_sin_family(p);
  if (id == "evans-1" || id == "evans-2" || id == "evans-3") {
    const int kind = id.back() - '0';
    return make_evans_impl(kind, p, evans_default_f(p.at("a"), p.at("b")), p.at("b") != 0.0);
  }
  if (id == "evans-4") return make_evans4(p);
  if (id == "higgs-cuboctahedral") return make_higgs(p);
  return make_platonic(id.back() - '0');
}

Potential make_evans(int kind, double k, ScalarFunction f) {
  if (kind < 1 || kind > 3) throw ParameterError("evans kind with a free function must be 1, 2 or 3");
  if (!f) throw ParameterError("evans potential needs an angular function");
  ParamMap p;
  if (kind != 1) p["k"] = k;
  return make_evans_impl(kind, std::move(p), std::move(f), false);
}

ScalarFunction evans_default_f(double a, double b) {
  return ScalarFunction::generic([a, b](const auto& psi) {
    using std::sin;
    using T = std::decay_t<decltype(psi)>;
    if (b == 0.0) return T(a);
    return a + b / sq(sin(psi));
  });
}

double platonic_f(int kind, double theta, double phi) {
  if (kind < 1 || kind > 3) throw ParameterError("platonic kind must be 1, 2 or 3");
  if (kind == 3) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double ct2 = ct * ct, st2 = st * st;
    return -ct * (ct2 * ct2 * ct - 5.0 * st2 * ct2 * ct + 5.0 * st2 * st2 * ct +
                  2.0 * st2 * st2 * st * std::cos(5.0 * phi));
  }
  return platonic_angular(kind, theta, phi);
}

double platonic_f3_printed(double theta, double phi) { return f3_printed(theta, phi); }

}  // namespace supint::potentials
