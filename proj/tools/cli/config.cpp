#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

namespace supint::cli {

namespace {

template <class T>
T get(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw UsageError(where + ": missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw UsageError(where + ": key '" + key + "' has the wrong type");
  }
}

template <class T>
T get_or(const json& j, const std::string& key, T fallback, const std::string& where) {
  return j.contains(key) ? get<T>(j, key, where) : fallback;
}

double positive(double v, const std::string& what) {
  if (!(v > 0) || !std::isfinite(v)) throw UsageError(what + " must be a positive number");
  return v;
}

SystemSpec parse_system(const json& j, const std::string& where) {
  SystemSpec s;
  s.id = get<std::string>(j, "system", where);
  if (j.contains("params")) {
    const json& p = j.at("params");
    if (!p.is_object()) throw UsageError(where + ": params must be an object");
    for (const auto& [k, v] : p.items()) {
      if (!v.is_number()) throw UsageError(where + ": parameter '" + k + "' must be a number");
      s.params[k] = v.get<double>();
    }
  }
  try {
    (void)potentials::make_potential(s.id, s.params);
    s.chart = j.contains("chart") ? coords::chart_from_string(get<std::string>(j, "chart", where))
                                  : default_chart(s.id);
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(where + ": " + e.what());
  }
  s.dim = coords::fixed_dimension(s.chart).value_or(0);
  return s;
}

InitialSpec parse_initial(const json& j, const std::string& where) {
  require_object(j, {"label", "q", "p", "spread"}, where);
  InitialSpec init;
  init.label = get_or<std::string>(j, "label", "", where);
  init.q = get<std::vector<double>>(j, "q", where);
  init.p = get<std::vector<double>>(j, "p", where);
  init.spread = get_or<double>(j, "spread", 0.0, where);
  if (init.q.size() != init.p.size() || init.q.empty()) throw UsageError(where + ": q and p must have equal length");
  if (init.spread < 0) throw UsageError(where + ": spread must be >= 0");
  return init;
}

std::optional<dynamics::Scheme> parse_scheme(const json& j, const std::string& where) {
  if (!j.contains("scheme")) return std::nullopt;
  try {
    return dynamics::scheme_from_string(get<std::string>(j, "scheme", where));
  } catch (const ParameterError& e) {
    throw UsageError(where + ": " + e.what());
  }
}

}  // namespace

void require_object(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + " must be a JSON object");
  for (const auto& [k, v] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
      throw UsageError(where + ": unknown key '" + k + "'");
    }
  }
}

coords::Chart default_chart(const std::string& id) {
  using coords::Chart;
  if (id == "calogero" || id == "wolfes" || id == "free" || id == "oscillator") return Chart::kCartesianLine;
  if (id == "sin-family" || id == "ttw") return Chart::kPolar2;
  if (id.rfind("evans-", 0) == 0) return Chart::kSphericalCylindrical4;
  return Chart::kSphere2;
}

coords::PhaseState make_state(const SystemSpec& sys, const InitialSpec& init, std::uint64_t rng_seed) {
  coords::PhaseState s;
  s.chart = sys.chart;
  const int n = static_cast<int>(init.q.size());
  s.q = Eigen::Map<const Eigen::VectorXd>(init.q.data(), n);
  s.p = Eigen::Map<const Eigen::VectorXd>(init.p.data(), n);
  if (init.spread > 0) {
    std::mt19937_64 rng(rng_seed);
    std::uniform_real_distribution<double> u(-init.spread, init.spread);
    for (int i = 0; i < n; ++i) s.q(i) += u(rng);
    for (int i = 0; i < n; ++i) s.p(i) += u(rng);
  }
  try {
    coords::validate(s);
  } catch (const Error& e) {
    throw UsageError(std::string("initial state: ") + e.what());
  }
  return s;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError("config " + path + ": " + e.what());
  }
}

int coordinate_index(const SystemSpec& sys, const std::string& name) {
  const auto names = coords::coordinate_names(sys.chart, sys.dim);
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) {
    throw UsageError("coordinate '" + name + "' is not a coordinate of " + std::string(coords::to_string(sys.chart)));
  }
  return static_cast<int>(it - names.begin());
}

SimulateConfig parse_simulate(const json& j) {
  const std::string where = "simulate config";
  require_object(j, {"system", "params", "chart", "initial", "scheme", "dt", "t_end", "record_every", "integrals",
                     "output", "seed"},
                 where);
  SimulateConfig c;
  c.system = parse_system(j, where);
  c.initial = parse_initial(get<json>(j, "initial", where), where + ".initial");
  c.system.dim = static_cast<int>(c.initial.q.size());
  c.scheme = parse_scheme(j, where);
  c.dt = positive(get<double>(j, "dt", where), "dt");
  c.t_end = positive(get<double>(j, "t_end", where), "t_end");
  c.record_every = get_or<int>(j, "record_every", 1, where);
  if (c.record_every < 1) throw UsageError("record_every must be >= 1");
  c.integrals = get_or<bool>(j, "integrals", true, where);
  const json out = get<json>(j, "output", where);
  require_object(out, {"trajectory", "drift"}, where + ".output");
  c.output.trajectory = get<std::string>(out, "trajectory", where + ".output");
  c.output.drift = get_or<std::string>(out, "drift", "", where + ".output");
  c.seed = get_or<std::uint64_t>(j, "seed", 1, where);
  return c;
}

PoincareConfig parse_poincare(const json& j) {
  const std::string where = "poincare config";
  require_object(j, {"system", "params", "chart", "sets", "scheme", "dt", "t_end", "section", "output", "title", "seed"},
                 where);
  PoincareConfig c;
  c.system = parse_system(j, where);
  const json sets = get<json>(j, "sets", where);
  if (!sets.is_array() || sets.empty()) throw UsageError(where + ": sets must be a non-empty array");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    c.sets.push_back(parse_initial(sets[i], where + ".sets[" + std::to_string(i) + "]"));
    if (c.sets.back().label.empty()) c.sets.back().label = "set " + std::to_string(i + 1);
  }
  c.system.dim = static_cast<int>(c.sets.front().q.size());
  for (const auto& s : c.sets) {
    if (static_cast<int>(s.q.size()) != c.system.dim) throw UsageError(where + ": sets differ in dimension");
  }
  c.scheme = parse_scheme(j, where);
  c.dt = positive(get<double>(j, "dt", where), "dt");
  c.t_end = positive(get<double>(j, "t_end", where), "t_end");
  const json sec = get<json>(j, "section", where);
  const std::string sw = where + ".section";
  require_object(sec, {"coordinate", "value", "direction", "record_q", "record_p", "period"}, sw);
  c.section.coordinate = get<std::string>(sec, "coordinate", sw);
  c.section.value = get<double>(sec, "value", sw);
  try {
    c.section.direction = dynamics::direction_from_string(get_or<std::string>(sec, "direction", "+", sw));
  } catch (const ParameterError& e) {
    throw UsageError(sw + ": " + e.what());
  }
  c.section.record_q = get<std::string>(sec, "record_q", sw);
  c.section.record_p = get_or<std::string>(sec, "record_p", c.section.record_q, sw);
  c.section.period = get_or<double>(sec, "period", 0.0, sw);
  if (c.section.period < 0) throw UsageError(sw + ": period must be >= 0");
  if (c.section.coordinate == c.section.record_q) throw UsageError(sw + ": section and record coordinate coincide");
  (void)coordinate_index(c.system, c.section.coordinate);
  (void)coordinate_index(c.system, c.section.record_q);
  (void)coordinate_index(c.system, c.section.record_p);
  const json out = get<json>(j, "output", where);
  require_object(out, {"csv", "svg"}, where + ".output");
  c.output.csv = get<std::string>(out, "csv", where + ".output");
  c.output.svg = get_or<std::string>(out, "svg", "", where + ".output");
  c.title = get_or<std::string>(j, "title", "", where);
  c.seed = get_or<std::uint64_t>(j, "seed", 1, where);
  return c;
}

IsopotentialConfig parse_isopotential(const json& j) {
  const std::string where = "isopotential config";
  require_object(j, {"system", "params", "levels", "grid", "output", "title"}, where);
  IsopotentialConfig c;
  c.system = parse_system(j, where);
  c.system.chart = coords::Chart::kSphere2;
  c.system.dim = 2;
  if (!potentials::make_potential(c.system.id, c.system.params).supports(coords::Chart::kSphere2, 2)) {
    throw UsageError(where + ": " + c.system.id + " has no sphere-2 form");
  }
  c.levels = get_or<int>(j, "levels", 8, where);
  if (c.levels < 0) throw UsageError(where + ": levels must be >= 0");
  if (j.contains("grid")) {
    const json g = j.at("grid");
    require_object(g, {"phi", "theta"}, where + ".grid");
    c.grid_phi = get_or<int>(g, "phi", c.grid_phi, where + ".grid");
    c.grid_theta = get_or<int>(g, "theta", c.grid_theta, where + ".grid");
    if (c.grid_phi < 8 || c.grid_theta < 4) throw UsageError(where + ": grid too coarse");
  }
  const json out = get<json>(j, "output", where);
  require_object(out, {"svg", "zeros"}, where + ".output");
  c.output.svg = get<std::string>(out, "svg", where + ".output");
  c.output.zeros = get_or<std::string>(out, "zeros", "", where + ".output");
  c.title = get_or<std::string>(j, "title", "", where);
  return c;
}

}  // namespace supint::cli
