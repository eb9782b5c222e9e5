#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "cli/contour.hpp"
#include "supint/integrals.hpp"

namespace supint::cli {

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  return f;
}

std::vector<integrals::PhaseFunction> integral_columns(const potentials::Potential& pot, const Hamiltonian& h) {
  try {
    return integrals::standard_integrals(pot).members;
  } catch (const Error&) {
    return {integrals::hamiltonian_function(h)};
  }
}

potentials::Potential build(const SystemSpec& sys) { return potentials::make_potential(sys.id, sys.params); }

Hamiltonian hamiltonian_for(const SystemSpec& sys) {
  try {
    return potentials::natural_hamiltonian(build(sys), sys.chart, sys.dim);
  } catch (const ChartMismatchError& e) {
    throw UsageError(e.what());
  }
}

dynamics::Scheme resolve_scheme(const std::optional<dynamics::Scheme>& s, const Hamiltonian& h) {
  const auto scheme = s.value_or(dynamics::default_scheme(h));
  if ((scheme == dynamics::Scheme::kVerlet || scheme == dynamics::Scheme::kVerlet4) && !h.separable()) {
    throw UsageError("Verlet schemes need a Cartesian chart");
  }
  return scheme;
}

std::string lerp_color(const int from[3], const int to[3], double t) {
  int c[3];
  for (int i = 0; i < 3; ++i) c[i] = static_cast<int>(std::lround(from[i] + t * (to[i] - from[i])));
  return fmt::format("#{:02x}{:02x}{:02x}", c[0], c[1], c[2]);
}

}  // namespace

std::string output_path(const Context& ctx, const std::string& file) {
  std::filesystem::path p = std::filesystem::path(file).is_absolute() ? std::filesystem::path(file)
                                                                      : std::filesystem::path(ctx.out_dir) / file;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p.string();
}

int cmd_catalog(bool as_json, std::ostream& os) {
  const auto& cat = potentials::catalog();
  if (as_json) {
    json arr = json::array();
    for (const auto& e : cat) {
      json params = json::array();
      for (const auto& p : e.params) {
        json jp{{"name", p.name}, {"description", p.description}};
        jp["default"] = p.default_value ? json(*p.default_value) : json(nullptr);
        params.push_back(jp);
      }
      arr.push_back({{"id", e.id}, {"formula", e.formula}, {"params", params}, {"charts", e.charts}});
    }
    os << arr.dump(2) << "\n";
    return kExitOk;
  }
  os << fmt::format("{:<22} {:<40} {}\n", "id", "parameters", "charts");
  for (const auto& e : cat) {
    std::string params, charts;
    for (const auto& p : e.params) {
      if (!params.empty()) params += " ";
      params += p.default_value ? fmt::format("{}={:g}", p.name, *p.default_value) : p.name;
    }
    for (const auto& c : e.charts) charts += (charts.empty() ? "" : ", ") + c;
    os << fmt::format("{:<22} {:<40} {}\n", e.id, params.empty() ? "-" : params, charts);
  }
  return kExitOk;
}

int cmd_simulate(const SimulateConfig& cfg, const Context& ctx, std::ostream& os) {
  const std::uint64_t seed = ctx.seed.value_or(cfg.seed);
  const auto pot = build(cfg.system);
  const Hamiltonian h = hamiltonian_for(cfg.system);
  const auto s0 = make_state(cfg.system, cfg.initial, seed);
  dynamics::IntegrateOptions o;
  o.scheme = resolve_scheme(cfg.scheme, h);
  o.dt = cfg.dt;
  o.t_end = cfg.t_end;
  o.record_every = cfg.record_every;
  spdlog::info("simulate {} in {} with {}, dt = {}, t_end = {}", cfg.system.id, coords::to_string(h.chart),
               dynamics::to_string(o.scheme), o.dt, o.t_end);
  dynamics::Trajectory traj;
  try {
    (void)h.value(s0.q, s0.p);
    traj = dynamics::integrate(s0, h, o);
  } catch (const SingularityError& e) {
    throw UsageError(std::string("initial state is singular: ") + e.what());
  } catch (const SingularChartError& e) {
    throw UsageError(std::string("initial state is singular: ") + e.what());
  }
  std::vector<integrals::PhaseFunction> fns;
  if (cfg.integrals) fns = integral_columns(pot, h);

  const std::string path = output_path(ctx, cfg.output.trajectory);
  auto out = open_out(path);
  const auto names = coords::coordinate_names(cfg.system.chart, cfg.system.dim);
  out << "t";
  for (const auto& n : names) out << "," << n;
  for (const auto& n : names) out << ",p_" << n;
  for (const auto& f : fns) out << "," << f.name();
  out << "\n";
  std::vector<dynamics::DriftSeries> drift;
  if (!fns.empty()) drift = dynamics::drift_report(traj, fns);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const auto& s = traj.states[i];
    out << num(traj.t[i]);
    for (int k = 0; k < s.dimension(); ++k) out << "," << num(s.q(k));
    for (int k = 0; k < s.dimension(); ++k) out << "," << num(s.p(k));
    for (const auto& d : drift) out << "," << num(d.values[i]);
    out << "\n";
  }
  os << "wrote " << path << " (" << traj.states.size() << " rows)\n";
  if (!cfg.output.drift.empty()) {
    const std::string dpath = output_path(ctx, cfg.output.drift);
    auto dout = open_out(dpath);
    dout << "integral,max_relative_drift\n";
    for (const auto& d : drift) dout << d.name << "," << num(d.max_drift) << "\n";
    os << "wrote " << dpath << "\n";
  }
  for (const auto& d : drift) os << fmt::format("  drift {:<6} {:.3e}\n", d.name, d.max_drift);
  if (traj.truncated) {
    const std::string side = path + ".truncation.json";
    auto sout = open_out(side);
    sout << json{{"truncated", true}, {"reason", traj.reason}, {"t", traj.t.back()}, {"seed", seed}}.dump(2) << "\n";
    spdlog::warn("trajectory truncated: {}", traj.reason);
    os << "truncated: " << traj.reason << "\n";
    return kExitTruncated;
  }
  return kExitOk;
}

dynamics::SectionSet compute_section(const PoincareConfig& cfg, std::uint64_t seed, int jobs) {
  const Hamiltonian h = hamiltonian_for(cfg.system);
  dynamics::IntegrateOptions o;
  o.scheme = resolve_scheme(cfg.scheme, h);
  o.dt = cfg.dt;
  o.t_end = cfg.t_end;
  std::vector<dynamics::SectionJob> work;
  for (std::size_t i = 0; i < cfg.sets.size(); ++i) {
    dynamics::SectionJob job;
    job.set_id = static_cast<int>(i);
    job.s0 = make_state(cfg.system, cfg.sets[i], seed + i);
    job.h = h;
    job.opts = o;
    try {
      (void)h.value(job.s0.q, job.s0.p);
    } catch (const Error& e) {
      throw UsageError("initial condition " + cfg.sets[i].label + ": " + e.what());
    }
    work.push_back(std::move(job));
  }
  dynamics::SectionDef sec;
  sec.coordinate = coordinate_index(cfg.system, cfg.section.coordinate);
  sec.value = cfg.section.value;
  sec.direction = cfg.section.direction;
  sec.q_rec = coordinate_index(cfg.system, cfg.section.record_q);
  sec.p_rec = coordinate_index(cfg.system, cfg.section.record_p);
  sec.period = cfg.section.period;
  return dynamics::poincare_section(work, sec, jobs);
}

int cmd_poincare(const PoincareConfig& cfg, const Context& ctx, std::ostream& os) {
  const std::uint64_t seed = ctx.seed.value_or(cfg.seed);
  spdlog::info("poincare {}: {} sets, t_end = {}", cfg.system.id, cfg.sets.size(), cfg.t_end);
  const auto set = compute_section(cfg, seed, ctx.jobs);
  for (const auto& r : set.truncation_reasons) spdlog::warn("run truncated: {}", r);
  const std::string path = output_path(ctx, cfg.output.csv);
  auto out = open_out(path);
  out << "set," << cfg.section.record_q << ",p_" << cfg.section.record_p << ",t\n";
  for (const auto& p : set.points) out << p.set_id << "," << num(p.q) << "," << num(p.p) << "," << num(p.t) << "\n";
  os << "wrote " << path << " (" << set.points.size() << " crossings, " << set.tangential_skipped
     << " tangential skipped)\n";
  if (!cfg.output.svg.empty()) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
    for (const auto& p : set.points) {
      xmin = std::min(xmin, p.q);
      xmax = std::max(xmax, p.q);
      ymin = std::min(ymin, p.p);
      ymax = std::max(ymax, p.p);
    }
    if (set.points.empty()) xmin = ymin = 0.0, xmax = ymax = 1.0;
    // Collapsed clouds (periodic orbits) still get a visible window.
    auto span = [](double lo, double hi) { return std::max(hi - lo, 1e-3 * (1.0 + std::max(std::abs(lo), std::abs(hi)))); };
    const double padx = 0.05 * span(xmin, xmax), pady = 0.05 * span(ymin, ymax);
    SvgPlot plot(720, 560, xmin - padx, xmax + padx, ymin - pady, ymax + pady);
    plot.set_title(cfg.title.empty() ? cfg.system.id + " Poincare section" : cfg.title);
    plot.set_labels(cfg.section.record_q, "p_" + cfg.section.record_p);
    plot.add_comment(fmt::format("system={} section {}={} seed={}", cfg.system.id, cfg.section.coordinate,
                                 cfg.section.value, seed));
    const auto& palette = set_palette();
    for (std::size_t i = 0; i < cfg.sets.size(); ++i) {
      std::vector<Point2> pts;
      for (const auto& p : set.of_set(static_cast<int>(i))) pts.push_back({p.q, p.p});
      plot.add_points(pts, palette[i % palette.size()], 1.2, cfg.sets[i].label);
    }
    const std::string svg = output_path(ctx, cfg.output.svg);
    auto sout = open_out(svg);
    plot.write(sout);
    os << "wrote " << svg << "\n";
  }
  if (set.points.empty()) {
    os << "no section crossings found\n";
    return kExitEmptySection;
  }
  return kExitOk;
}

IsopotentialMap compute_isopotential(const IsopotentialConfig& cfg) {
  const auto pot = build(cfg.system);
  const double pi = std::numbers::pi;
  const double hphi = 2 * pi / cfg.grid_phi;
  const double htheta = pi / cfg.grid_theta;
  // Nodes straddle phi = 0 and 2 pi and stay off the poles.
  const double phi0 = -0.5 * hphi, phi1 = 2 * pi + 0.5 * hphi;
  const double th0 = 0.5 * htheta, th1 = pi - 0.5 * htheta;
  const int nx = cfg.grid_phi + 2, ny = cfg.grid_theta;
  auto inverse_v = [&](double phi, double theta) {
    const double q[2] = {theta, phi};
    try {
      return 1.0 / pot.value(coords::Chart::kSphere2, q);
    } catch (const Error&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  };
  IsopotentialMap map;
  const double probe[2] = {1.0, 1.0};
  const std::size_t nwalls = pot.walls(coords::Chart::kSphere2, probe).size();
  for (std::size_t w = 0; w < nwalls; ++w) {
    auto wall = [&pot, w](double phi, double theta) {
      const double q[2] = {theta, phi};
      return pot.walls(coords::Chart::kSphere2, q)[w];
    };
    const Grid g = sample_grid(wall, phi0, phi1, nx, th0, th1, ny);
    for (auto& line : join_segments(marching_squares(g, 0.0, wall))) map.zero_lines.push_back(std::move(line));
  }
  if (cfg.levels > 0) {
    const Grid g = sample_grid(inverse_v, phi0, phi1, nx, th0, th1, ny);
    double fmin = 0.0, fmax = 0.0;
    for (double v : g.values) {
      if (!std::isfinite(v)) continue;
      fmin = std::min(fmin, v);
      fmax = std::max(fmax, v);
    }
    static const int warm_lo[3] = {255, 215, 0}, warm_hi[3] = {200, 0, 0};
    static const int cool_lo[3] = {127, 255, 212}, cool_hi[3] = {0, 0, 205};
    for (int k = 1; k <= cfg.levels; ++k) {
      const double t = static_cast<double>(k) / (cfg.levels + 1);
      if (fmax > 0) {
        ContourLevel lv{t * fmax, lerp_color(warm_lo, warm_hi, t), {}};
        lv.lines = join_segments(marching_squares(g, lv.level));
        map.levels.push_back(std::move(lv));
      }
      if (fmin < 0) {
        ContourLevel lv{t * fmin, lerp_color(cool_lo, cool_hi, t), {}};
        lv.lines = join_segments(marching_squares(g, lv.level));
        map.levels.push_back(std::move(lv));
      }
    }
  }
  return map;
}

SvgPlot isopotential_svg(const IsopotentialMap& map, const std::string& title) {
  SvgPlot plot(820, 460, 0.0, 2 * std::numbers::pi, 0.0, std::numbers::pi);
  plot.set_title(title);
  plot.set_labels("phi", "theta");
  for (const auto& lv : map.levels) {
    for (const auto& line : lv.lines) plot.add_polyline(line, lv.color, 1.0);
  }
  for (const auto& line : map.zero_lines) plot.add_polyline(line, "#000000", 2.0);
  return plot;
}

int cmd_isopotential(const IsopotentialConfig& cfg, const Context& ctx, std::ostream& os) {
  spdlog::info("isopotential {}: {} levels on a {}x{} grid", cfg.system.id, cfg.levels, cfg.grid_phi,
               cfg.grid_theta);
  const auto map = compute_isopotential(cfg);
  auto plot = isopotential_svg(map, cfg.title.empty() ? cfg.system.id + " isopotential lines" : cfg.title);
  plot.add_comment(fmt::format("system={} levels={} grid={}x{}", cfg.system.id, cfg.levels, cfg.grid_phi,
                               cfg.grid_theta));
  const std::string svg = output_path(ctx, cfg.output.svg);
  auto out = open_out(svg);
  plot.write(out);
  os << "wrote " << svg << " (" << map.zero_lines.size() << " zero-set lines, " << map.levels.size()
     << " levels)\n";
  if (!cfg.output.zeros.empty()) {
    const std::string zpath = output_path(ctx, cfg.output.zeros);
    auto z = open_out(zpath);
    z << "line,phi,theta\n";
    for (std::size_t i = 0; i < map.zero_lines.size(); ++i) {
      for (const auto& p : map.zero_lines[i]) z << i << "," << num(p.x) << "," << num(p.y) << "\n";
    }
    os << "wrote " << zpath << "\n";
  }
  return kExitOk;
}

}  // namespace supint::cli
