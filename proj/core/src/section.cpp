#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "supint/dynamics.hpp"
#include "supint/errors.hpp"

namespace supint::dynamics {

Direction direction_from_string(std::string_view name) {
  if (name == "+" || name == "positive") return Direction::kPositive;
  if (name == "-" || name == "negative") return Direction::kNegative;
  if (name == "both") return Direction::kBoth;
  throw ParameterError("unknown crossing direction: " + std::string(name));
}

std::vector<SectionPoint> SectionSet::of_set(int set_id) const {
  std::vector<SectionPoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [set_id](const SectionPoint& p) { return p.set_id == set_id; });
  return out;
}

double section_offset(const SectionDef& sec, const PhaseState& s) {
  double g = s.q(sec.coordinate) - sec.value;
  if (sec.period > 0) {
    g = std::remainder(g, sec.period);
  }
  return g;
}

double linear_crossing_estimate(double t0, double g0, double t1, double g1) {
  return t0 + (t1 - t0) * g0 / (g0 - g1);
}

namespace {

struct Extended {
  Eigen::VectorXd q, p;
  double t = 0.0;
};

/// d(q, p, t)/dx with x the section coordinate.
Extended henon_field(const Hamiltonian& h, const Extended& z, int c) {
  Eigen::VectorXd qd, pd;
  vector_field(h, z.q, z.p, qd, pd);
  const double fc = qd(c);
  return {qd / fc, pd / fc, 1.0 / fc};
}

Extended axpy(const Extended& a, double s, const Extended& d) { return {a.q + s * d.q, a.p + s * d.p, a.t + s * d.t}; }

Extended henon_rk4(const Hamiltonian& h, Extended z, int c, double dx, int substeps) {
  const double step = dx / substeps;
  for (int i = 0; i < substeps; ++i) {
    const Extended k1 = henon_field(h, z, c);
    const Extended k2 = henon_field(h, axpy(z, step / 2, k1), c);
    const Extended k3 = henon_field(h, axpy(z, step / 2, k2), c);
    const Extended k4 = henon_field(h, axpy(z, step, k3), c);
    z.q += step / 6 * (k1.q + 2 * k2.q + 2 * k3.q + k4.q);
    z.p += step / 6 * (k1.p + 2 * k2.p + 2 * k3.p + k4.p);
    z.t += step / 6 * (k1.t + 2 * k2.t + 2 * k3.t + k4.t);
  }
  return z;
}

PhaseState rk4_time(const Hamiltonian& h, PhaseState s, double tau) {
  Eigen::VectorXd q1, p1, q2, p2, q3, p3, q4, p4;
  vector_field(h, s.q, s.p, q1, p1);
  vector_field(h, s.q + tau / 2 * q1, s.p + tau / 2 * p1, q2, p2);
  vector_field(h, s.q + tau / 2 * q2, s.p + tau / 2 * p2, q3, p3);
  vector_field(h, s.q + tau * q3, s.p + tau * p3, q4, p4);
  s.q += tau / 6 * (q1 + 2 * q2 + 2 * q3 + q4);
  s.p += tau / 6 * (p1 + 2 * p2 + 2 * p3 + p4);
  return s;
}

double coordinate_rate(const Hamiltonian& h, const PhaseState& s, int c) {
  Eigen::VectorXd qd, pd;
  vector_field(h, s.q, s.p, qd, pd);
  return qd(c);
}

bool direction_ok(Direction d, double g0, double g1) {
  const bool up = g0 < 0 && g1 >= 0;
  const bool down = g0 > 0 && g1 <= 0;
  switch (d) {
    case Direction::kPositive: return up;
    case Direction::kNegative: return down;
    case Direction::kBoth: return up || down;
  }
  return false;
}

}  // namespace

bool refine_crossing(const Hamiltonian& h, const SectionDef& sec, double t0, const PhaseState& s0, double t1,
                     const PhaseState& s1, PhaseState& out, double& t_out) {
  const int c = sec.coordinate;
  const double r0 = coordinate_rate(h, s0, c);
  const double r1 = coordinate_rate(h, s1, c);
  if (std::abs(r0) < kTangentialThreshold || std::abs(r1) < kTangentialThreshold || (r0 > 0) != (r1 > 0)) {
    return false;
  }
  const double g0 = section_offset(sec, s0);
  const double g1 = section_offset(sec, s1);
  // Start from the endpoint nearer the section.
  const bool from_end = std::abs(g1) < std::abs(g0);
  const PhaseState& start = from_end ? s1 : s0;
  const double g = from_end ? g1 : g0;
  Extended z{start.q, start.p, from_end ? t1 : t0};
  z = henon_rk4(h, z, c, -g, 4);
  out = start;
  out.q = z.q;
  out.p = z.p;
  t_out = z.t;
  double res = section_offset(sec, out);
  for (int it = 0; it < 20 && std::abs(res) > kSectionTolerance; ++it) {
    const double rate = coordinate_rate(h, out, c);
    if (std::abs(rate) < kTangentialThreshold) return false;
    const double tau = -res / rate;
    out = rk4_time(h, out, tau);
    t_out += tau;
    res = section_offset(sec, out);
  }
  if (std::abs(coordinate_rate(h, out, c)) < kTangentialThreshold) return false;
  return std::abs(res) <= kSectionTolerance;
}

namespace {

struct JobResult {
  std::vector<SectionPoint> points;
  int tangential = 0;
  bool truncated = false;
  std::string reason;
};

JobResult run_job(const SectionJob& job, const SectionDef& sec) {
  JobResult r;
  auto observer = [&](double t0, const PhaseState& s0, double t1, const PhaseState& s1) {
    const double g0 = section_offset(sec, s0);
    const double g1 = section_offset(sec, s1);
    if (!direction_ok(sec.direction, g0, g1)) return;
    // Angular offsets jump by a full period away from the section.
    if (sec.period > 0 && std::abs(g1 - g0) > sec.period / 2) return;
    PhaseState hit;
    double th = 0.0;
    bool ok = false;
    try {
      ok = refine_crossing(job.h, sec, t0, s0, t1, s1, hit, th);
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) {
      ++r.tangential;
      return;
    }
    r.points.push_back({job.set_id, hit.q(sec.q_rec), hit.p(sec.p_rec), th, std::abs(section_offset(sec, hit))});
  };
  IntegrateOptions opts = job.opts;
  opts.record_every = std::max<long>(1, static_cast<long>(opts.t_end / opts.dt));
  const Trajectory traj = integrate(job.s0, job.h, opts, observer);
  r.truncated = traj.truncated;
  r.reason = traj.reason;
  return r;
}

}  // namespace

SectionSet poincare_section(const std::vector<SectionJob>& jobs, const SectionDef& sec, int threads) {
  if (sec.coordinate == sec.q_rec) throw ParameterError("section coordinate equals the recorded coordinate");
  for (const auto& j : jobs) {
    const int n = j.s0.dimension();
    if (sec.coordinate < 0 || sec.coordinate >= n || sec.q_rec < 0 || sec.q_rec >= n || sec.p_rec < 0 ||
        sec.p_rec >= n) {
      throw ParameterError("section indices out of range");
    }
  }
  std::vector<JobResult> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_job(jobs[i], sec);
      } catch (const Error& e) {
        results[i].truncated = true;
        results[i].reason = e.what();
      }
    }
  };
  const int nthreads = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(1, jobs.size())));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  SectionSet out;
  for (auto& r : results) {
    out.points.insert(out.points.end(), r.points.begin(), r.points.end());
    out.tangential_skipped += r.tangential;
    if (r.truncated) {
      ++out.truncated_runs;
      out.truncation_reasons.push_back(r.reason);
    }
  }
  return out;
}

CurveFit closed_curve_deviation(const std::vector<Eigen::Vector2d>& points) {
  const std::size_t n = points.size();
  if (n < 3) throw ParameterError("closed curve fit needs at least 3 points");
  Eigen::Vector2d centroid = Eigen::Vector2d::Zero();
  for (const auto& p : points) centroid += p;
  centroid /= static_cast<double>(n);
  std::vector<Eigen::Vector2d> pts = points;
  std::sort(pts.begin(), pts.end(), [&](const Eigen::Vector2d& a, const Eigen::Vector2d& b) {
    return std::atan2(a.y() - centroid.y(), a.x() - centroid.x()) <
           std::atan2(b.y() - centroid.y(), b.x() - centroid.x());
  });
  CurveFit fit;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) fit.diameter = std::max(fit.diameter, (pts[i] - pts[j]).norm());
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = pts[(i + n - 1) % n];
    const Eigen::Vector2d& b = pts[(i + 1) % n];
    const Eigen::Vector2d& p = pts[i];
    const Eigen::Vector2d ab = b - a;
    const double len2 = ab.squaredNorm();
    double d = 0.0;
    if (len2 == 0.0) {
      d = (p - a).norm();
    } else {
      const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
      d = (p - (a + t * ab)).norm();
    }
    fit.max_deviation = std::max(fit.max_deviation, d);
  }
  return fit;
}

}  // namespace supint::dynamics
