#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "supint/coords.hpp"
#include "supint/hamiltonian.hpp"
#include "supint/integrals.hpp"
#include "supint/potentials.hpp"

namespace supint::dynamics {

using coords::PhaseState;

/// One Stormer-Verlet (kick-drift-kick) step for H = 1/2 |p|^2 + V(q).
/// Throws StepRejectedError when a wall changes sign or values turn non-finite.
PhaseState step_verlet(const PhaseState& s, double dt, const Hamiltonian& h);
PhaseState step_verlet(const PhaseState& s, double dt, const potentials::Potential& pot);

inline constexpr double kMidpointTolerance = 1e-13;
inline constexpr int kMidpointMaxIterations = 50;

/// Implicit midpoint by fixed-point iteration. Throws ConvergenceError when the
/// update does not settle below 1e-13 (relative to max(1, |z|)) in 50 sweeps.
PhaseState step_implicit_midpoint(const PhaseState& s, double dt, const Hamiltonian& h);

/// verlet4 and midpoint4 are the fourth-order triple-jump compositions.
enum class Scheme { kVerlet, kVerlet4, kMidpoint, kMidpoint4 };

Scheme scheme_from_string(std::string_view name);
std::string_view to_string(Scheme scheme);
/// verlet4 for separable Hamiltonians, midpoint4 otherwise.
Scheme default_scheme(const Hamiltonian& h);

PhaseState step(Scheme scheme, const PhaseState& s, double dt, const Hamiltonian& h);

/// Time derivative (dq/dt, dp/dt) of the Hamiltonian flow.
void vector_field(const Hamiltonian& h, const Eigen::VectorXd& q, const Eigen::VectorXd& p, Eigen::VectorXd& qdot,
                  Eigen::VectorXd& pdot);

struct IntegrateOptions {
  Scheme scheme = Scheme::kVerlet4;
  double dt = 1e-3;
  double t_end = 1.0;
  /// Keep every n-th step in the trajectory (the last state is always kept).
  int record_every = 1;
  /// dt is halved at most this many times (dt_min = dt / 2^max_halvings).
  int max_halvings = 10;
  /// A step is retried with a smaller dt when |dH/dq| exceeds this ...
  double gradient_guard = 1e8;
  /// ... or when |H| changes by more than this relative amount in one step.
  double energy_guard = 1e-6;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<PhaseState> states;
  Scheme scheme = Scheme::kVerlet;
  double dt = 0.0;
  long steps = 0;
  long substeps = 0;  // steps taken with a halved dt
  int deepest_halving = 0;
  bool truncated = false;
  std::string reason;
};

/// Called after every nominal step with the previous and new state.
using StepObserver = std::function<void(double t0, const PhaseState& s0, double t1, const PhaseState& s1)>;

/// Fixed-step integration with guarded halving. Hitting dt_min, or a wall sign
/// change that no halving avoids, ends the run with `truncated` set.
Trajectory integrate(const PhaseState& s0, const Hamiltonian& h, const IntegrateOptions& opts,
                     const StepObserver& observer = {});

struct DriftSeries {
  std::string name;
  double max_drift = 0.0;  // max_t |I(t) - I(0)| / (1 + |I(0)|)
  std::vector<double> values;
};

std::vector<DriftSeries> drift_report(const Trajectory& traj, const std::vector<integrals::PhaseFunction>& fns);

enum class Direction { kPositive, kNegative, kBoth };

Direction direction_from_string(std::string_view name);

struct SectionDef {
  /// Index of the section coordinate in q.
  int coordinate = 1;
  double value = 0.0;
  Direction direction = Direction::kPositive;
  /// Recorded plane (q[q_rec], p[p_rec]).
  int q_rec = 0;
  int p_rec = 0;
  /// > 0: the section coordinate is an angle compared modulo this period.
  double period = 0.0;
};

struct SectionPoint {
  int set_id = 0;
  double q = 0.0;
  double p = 0.0;
  double t = 0.0;
  double residual = 0.0;  // |section coordinate - value| after refinement
};

struct SectionJob {
  int set_id = 0;
  PhaseState s0;
  Hamiltonian h;
  IntegrateOptions opts;
};

struct SectionSet {
  std::vector<SectionPoint> points;  // ordered by job, then time
  int tangential_skipped = 0;
  int truncated_runs = 0;
  std::vector<std::string> truncation_reasons;

  std::vector<SectionPoint> of_set(int set_id) const;
};

inline constexpr double kSectionTolerance = 1e-10;
inline constexpr double kTangentialThreshold = 1e-12;

/// Signed distance of s from the section (wrapped into (-period/2, period/2]
/// for angular sections).
double section_offset(const SectionDef& sec, const PhaseState& s);

/// Root of the straight line through (t0, g0) and (t1, g1).
double linear_crossing_estimate(double t0, double g0, double t1, double g1);

/// Refines a crossing between s0 (offset g0) and s1 by one Henon step (the
/// section coordinate becomes the independent variable, four RK4 substeps)
/// followed by secant iterations in time. Returns false for tangential
/// crossings.
bool refine_crossing(const Hamiltonian& h, const SectionDef& sec, double t0, const PhaseState& s0, double t1,
                     const PhaseState& s1, PhaseState& out, double& t_out);

/// Integrates all jobs (on up to `jobs` threads) and collects their crossings.
/// Output order does not depend on the thread count.
SectionSet poincare_section(const std::vector<SectionJob>& jobs, const SectionDef& sec, int threads = 1);

struct CurveFit {
  double max_deviation = 0.0;  // largest transverse distance, absolute
  double diameter = 0.0;       // largest pairwise distance
  double relative() const { return diameter > 0 ? max_deviation / diameter : 0.0; }
};

/// Orders the points by angle about their centroid, closes the polyline and
/// measures how far each point sits from the chord joining its two
/// neighbours. Needs at least 3 points.
CurveFit closed_curve_deviation(const std::vector<Eigen::Vector2d>& points);

}  // namespace supint::dynamics
