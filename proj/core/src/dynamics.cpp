#include "supint/dynamics.hpp"

#include <cmath>

#include "supint/errors.hpp"

namespace supint::dynamics {

namespace {

bool finite(const Eigen::VectorXd& v) { return v.allFinite(); }

void check_walls(const Hamiltonian& h, const Eigen::VectorXd& q0, const Eigen::VectorXd& q1) {
  if (!h.walls) return;
  const auto w0 = h.walls(q0);
  const auto w1 = h.walls(q1);
  for (std::size_t i = 0; i < w0.size() && i < w1.size(); ++i) {
    if ((w0[i] > 0) != (w1[i] > 0)) throw StepRejectedError("step crossed a singular wall");
  }
}

// Fourth-order triple jump weights.
const double kW1 = 1.0 / (2.0 - std::cbrt(2.0));
const double kW0 = 1.0 - 2.0 * kW1;

}  // namespace

void vector_field(const Hamiltonian& h, const Eigen::VectorXd& q, const Eigen::VectorXd& p, Eigen::VectorXd& qdot,
                  Eigen::VectorXd& pdot) {
  Eigen::VectorXd dq, dp;
  h.gradient(q, p, dq, dp);
  qdot = dp;
  pdot = -dq;
}

PhaseState step_verlet(const PhaseState& s, double dt, const Hamiltonian& h) {
  if (!h.separable()) throw ChartMismatchError("Verlet needs a Hamiltonian of the form 1/2 |p|^2 + V(q)");
  if (s.chart != h.chart) throw ChartMismatchError("state chart differs from the Hamiltonian chart");
  PhaseState out = s;
  try {
    out.p -= 0.5 * dt * h.potential_gradient(s.q);
    out.q += dt * out.p;
    check_walls(h, s.q, out.q);
    out.p -= 0.5 * dt * h.potential_gradient(out.q);
  } catch (const SingularityError& e) {
    throw StepRejectedError(e.what());
  }
  if (!finite(out.q) || !finite(out.p)) throw StepRejectedError("non-finite state");
  return out;
}

PhaseState step_verlet(const PhaseState& s, double dt, const potentials::Potential& pot) {
  return step_verlet(s, dt, potentials::natural_hamiltonian(pot, s.chart, s.dimension()));
}

PhaseState step_implicit_midpoint(const PhaseState& s, double dt, const Hamiltonian& h) {
  if (s.chart != h.chart) throw ChartMismatchError("state chart differs from the Hamiltonian chart");
  const int n = s.dimension();
  Eigen::VectorXd qd, pd;
  PhaseState out = s;
  try {
    vector_field(h, s.q, s.p, qd, pd);
    out.q = s.q + dt * qd;
    out.p = s.p + dt * pd;
    for (int it = 0; it < kMidpointMaxIterations; ++it) {
      vector_field(h, 0.5 * (s.q + out.q), 0.5 * (s.p + out.p), qd, pd);
      Eigen::VectorXd q1 = s.q + dt * qd;
      Eigen::VectorXd p1 = s.p + dt * pd;
      if (!finite(q1) || !finite(p1)) throw StepRejectedError("non-finite state");
      const double change = std::max((q1 - out.q).cwiseAbs().maxCoeff(), (p1 - out.p).cwiseAbs().maxCoeff());
      const double scale = std::max({1.0, q1.cwiseAbs().maxCoeff(), p1.cwiseAbs().maxCoeff()});
      out.q = std::move(q1);
      out.p = std::move(p1);
      if (change <= kMidpointTolerance * scale) {
        check_walls(h, s.q, out.q);
        return out;
      }
    }
  } catch (const SingularityError& e) {
    throw StepRejectedError(e.what());
  } catch (const SingularChartError& e) {
    throw StepRejectedError(e.what());
  }
  (void)n;
  throw ConvergenceError("implicit midpoint did not converge");
}

Scheme scheme_from_string(std::string_view name) {
  if (name == "verlet") return Scheme::kVerlet;
  if (name == "verlet4") return Scheme::kVerlet4;
  if (name == "midpoint") return Scheme::kMidpoint;
  if (name == "midpoint4") return Scheme::kMidpoint4;
  throw ParameterError("unknown scheme: " + std::string(name));
}

std::string_view to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kVerlet: return "verlet";
    case Scheme::kVerlet4: return "verlet4";
    case Scheme::kMidpoint: return "midpoint";
    case Scheme::kMidpoint4: return "midpoint4";
  }
  return "?";
}

Scheme default_scheme(const Hamiltonian& h) { return h.separable() ? Scheme::kVerlet4 : Scheme::kMidpoint4; }

PhaseState step(Scheme scheme, const PhaseState& s, double dt, const Hamiltonian& h) {
  switch (scheme) {
    case Scheme::kVerlet: return step_verlet(s, dt, h);
    case Scheme::kMidpoint: return step_implicit_midpoint(s, dt, h);
    case Scheme::kVerlet4:
      return step_verlet(step_verlet(step_verlet(s, kW1 * dt, h), kW0 * dt, h), kW1 * dt, h);
    case Scheme::kMidpoint4:
      return step_implicit_midpoint(
          step_implicit_midpoint(step_implicit_midpoint(s, kW1 * dt, h), kW0 * dt, h), kW1 * dt, h);
  }
  return s;
}

namespace {

/// One guarded substep; throws StepRejectedError if a guard fires.
PhaseState guarded_step(const IntegrateOptions& o, const PhaseState& s, double dt, const Hamiltonian& h,
                        double h0) {
  PhaseState out;
  try {
    out = step(o.scheme, s, dt, h);
  } catch (const ConvergenceError& e) {
    throw StepRejectedError(e.what());
  } catch (const SingularityError& e) {
    throw StepRejectedError(e.what());
  } catch (const SingularChartError& e) {
    throw StepRejectedError(e.what());
  }
  double h1 = 0.0;
  Eigen::VectorXd dq, dp;
  try {
    h1 = h.value(out.q, out.p);
    h.gradient(out.q, out.p, dq, dp);
  } catch (const Error& e) {
    throw StepRejectedError(e.what());
  }
  if (!std::isfinite(h1) || !finite(dq)) throw StepRejectedError("non-finite energy");
  if (dq.cwiseAbs().maxCoeff() > o.gradient_guard) throw StepRejectedError("force guard exceeded");
  if (std::abs(h1 - h0) > o.energy_guard * (1.0 + std::abs(h0))) throw StepRejectedError("energy guard exceeded");
  return out;
}

}  // namespace

Trajectory integrate(const PhaseState& s0, const Hamiltonian& h, const IntegrateOptions& o,
                     const StepObserver& observer) {
  if (!(o.dt > 0) || !(o.t_end > 0)) throw ParameterError("integrate: dt and t_end must be positive");
  if (o.record_every < 1) throw ParameterError("integrate: record_every must be >= 1");
  if ((o.scheme == Scheme::kVerlet || o.scheme == Scheme::kVerlet4) && !h.separable()) {
    throw ChartMismatchError("Verlet schemes need a separable Hamiltonian");
  }
  coords::validate(s0);
  Trajectory traj;
  traj.scheme = o.scheme;
  traj.dt = o.dt;
  traj.t.push_back(0.0);
  traj.states.push_back(s0);

  const long nsteps = static_cast<long>(std::ceil(o.t_end / o.dt - 1e-9));
  PhaseState s = s0;
  double t = 0.0;
  for (long i = 1; i <= nsteps; ++i) {
    const double t1 = std::min(o.t_end, static_cast<double>(i) * o.dt);
    const double interval = t1 - t;
    PhaseState next;
    bool done = false;
    std::string last_error;
    for (int halving = 0; halving <= o.max_halvings && !done; ++halving) {
      const long parts = 1L << halving;
      const double sub = interval / static_cast<double>(parts);
      try {
        PhaseState cur = s;
        double e = h.value(cur.q, cur.p);
        for (long k = 0; k < parts; ++k) {
          cur = guarded_step(o, cur, sub, h, e);
          e = h.value(cur.q, cur.p);
        }
        next = std::move(cur);
        done = true;
        if (halving > 0) {
          traj.substeps += parts;
          traj.deepest_halving = std::max(traj.deepest_halving, halving);
        }
      } catch (const StepRejectedError& err) {
        last_error = err.what();
      }
    }
    if (!done) {
      traj.truncated = true;
      traj.reason = "dt_min reached at t = " + std::to_string(t) + ": " + last_error;
      break;
    }
    if (observer) observer(t, s, t1, next);
    s = std::move(next);
    t = t1;
    ++traj.steps;
    if (i % o.record_every == 0 || i == nsteps) {
      traj.t.push_back(t);
      traj.states.push_back(s);
    }
  }
  if (traj.truncated && traj.t.back() != t) {
    traj.t.push_back(t);
    traj.states.push_back(s);
  }
  return traj;
}

std::vector<DriftSeries> drift_report(const Trajectory& traj, const std::vector<integrals::PhaseFunction>& fns) {
  std::vector<DriftSeries> out;
  for (const auto& f : fns) {
    DriftSeries d;
    d.name = f.name();
    d.values.reserve(traj.states.size());
    for (const auto& s : traj.states) d.values.push_back(f(s));
    if (!d.values.empty()) {
      const double i0 = d.values.front();
      for (double v : d.values) d.max_drift = std::max(d.max_drift, std::abs(v - i0) / (1.0 + std::abs(i0)));
    }
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace supint::dynamics
