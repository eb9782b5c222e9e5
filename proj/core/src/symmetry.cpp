#include "supint/symmetry.hpp"

#include <cmath>
#include <cstdio>
#include <algorithm>
#include <deque>
#include <numbers>
#include <random>

#include "supint/coords.hpp"
#include "supint/errors.hpp"

namespace supint::symmetry {

namespace {

double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

GroupElement identity(int dim) { return {Eigen::MatrixXd::Identity(dim, dim), "e"}; }

Eigen::Matrix3d axis_rotation(const Eigen::Vector3d& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

}  // namespace

double GroupElement::orthogonality_error() const {
  return max_abs(matrix * matrix.transpose() - Eigen::MatrixXd::Identity(dim(), dim()));
}

std::string to_string(const GroupElement& g) {
  std::string out = "[";
  for (int i = 0; i < g.matrix.rows(); ++i) {
    if (i) out += "; ";
    for (int j = 0; j < g.matrix.cols(); ++j) {
      double v = g.matrix(i, j);
      if (std::abs(v) < 1e-12) v = 0.0;
      if (std::abs(std::abs(v) - 1.0) < 1e-12) v = std::copysign(1.0, v);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%s%.12g", j ? " " : "", v);
      out += buf;
    }
  }
  return out + "]";
}

FiniteGroup::FiniteGroup(std::vector<GroupElement> elements, std::vector<GroupElement> generators)
    : elements_(std::move(elements)), generators_(std::move(generators)) {}

int FiniteGroup::find(const Eigen::MatrixXd& m, double tol) const {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i].matrix.rows() == m.rows() && max_abs(elements_[i].matrix - m) <= tol) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

bool FiniteGroup::has_identity(double tol) const {
  return contains(Eigen::MatrixXd::Identity(dim(), dim()), tol);
}

bool FiniteGroup::closed(double tol) const {
  for (const auto& a : elements_) {
    for (const auto& b : elements_) {
      if (!contains(a.matrix * b.matrix, tol)) return false;
    }
  }
  return true;
}

bool FiniteGroup::has_inverses(double tol) const {
  for (const auto& a : elements_) {
    if (!contains(a.matrix.transpose(), tol)) return false;
  }
  return true;
}

FiniteGroup generate_group(std::vector<GroupElement> generators, int max_elements) {
  if (generators.empty()) throw ParameterError("generate_group: no generators");
  const int dim = generators.front().dim();
  for (const auto& g : generators) {
    if (g.dim() != dim || g.matrix.cols() != dim) throw ParameterError("generate_group: mixed dimensions");
    if (g.orthogonality_error() > 1e-12) throw ParameterError("generate_group: generator is not orthogonal");
  }
  FiniteGroup group({identity(dim)}, generators);
  std::vector<GroupElement> elements{identity(dim)};
  std::deque<std::size_t> queue{0};
  auto known = [&](const Eigen::MatrixXd& m) {
    for (const auto& e : elements) {
      if (max_abs(e.matrix - m) <= kMatchTolerance) return true;
    }
    return false;
  };
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      Eigen::MatrixXd m = g.matrix * elements[i].matrix;
      if (known(m)) continue;
      if (static_cast<int>(elements.size()) >= max_elements) {
        throw Error("group closure exceeded " + std::to_string(max_elements) + " elements");
      }
      std::string label = elements[i].label == "e" ? g.label : g.label + elements[i].label;
      elements.push_back({std::move(m), std::move(label)});
      queue.push_back(elements.size() - 1);
    }
  }
  return FiniteGroup(std::move(elements), std::move(generators));
}

FiniteGroup dihedral_group(int n, double phase) {
  if (n < 1) throw ParameterError("dihedral_group: n must be >= 1");
  const double a = std::numbers::pi / n;
  Eigen::MatrixXd rot(2, 2);
  rot << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
  const double axis = -phase / n;
  Eigen::MatrixXd refl(2, 2);
  refl << std::cos(2 * axis), std::sin(2 * axis), std::sin(2 * axis), -std::cos(2 * axis);
  return generate_group({{rot, "r"}, {refl, "s"}}, 10 * 4 * n);
}

PlatonicKind platonic_kind_from_string(std::string_view name) {
  if (name == "tetra") return PlatonicKind::kTetra;
  if (name == "octa") return PlatonicKind::kOcta;
  if (name == "icosa") return PlatonicKind::kIcosa;
  throw UnknownIdError("unknown platonic group: " + std::string(name));
}

std::string_view to_string(PlatonicKind kind) {
  switch (kind) {
    case PlatonicKind::kTetra: return "tetra";
    case PlatonicKind::kOcta: return "octa";
    case PlatonicKind::kIcosa: return "icosa";
  }
  return "?";
}

int expected_order(PlatonicKind kind) {
  switch (kind) {
    case PlatonicKind::kTetra: return 12;
    case PlatonicKind::kOcta: return 24;
    case PlatonicKind::kIcosa: return 60;
  }
  return 0;
}

std::vector<GroupElement> platonic_generators(PlatonicKind kind) {
  Eigen::Matrix3d cycle;  // (x, y, z) -> (z, x, y)
  cycle << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  switch (kind) {
    case PlatonicKind::kTetra: {
      Eigen::Matrix3d half = Eigen::Vector3d(-1, -1, 1).asDiagonal();
      return {{half, "a"}, {cycle, "b"}};
    }
    case PlatonicKind::kOcta: {
      Eigen::Matrix3d quarter;  // (x, y, z) -> (-y, x, z)
      quarter << 0, -1, 0, 1, 0, 0, 0, 0, 1;
      return {{quarter, "a"}, {cycle, "b"}};
    }
    case PlatonicKind::kIcosa: {
      // Neighbouring five-fold axes are atan(2) apart; the two-fold axis
      // bisects them.
      const double tilt = 0.5 * std::atan(2.0);
      Eigen::Matrix3d five = axis_rotation(Eigen::Vector3d::UnitZ(), 2 * std::numbers::pi / 5);
      Eigen::Matrix3d two = axis_rotation({std::sin(tilt), 0.0, std::cos(tilt)}, std::numbers::pi);
      return {{five, "a"}, {two, "b"}};
    }
  }
  return {};
}

FiniteGroup platonic_group(PlatonicKind kind) {
  auto group = generate_group(platonic_generators(kind), 10 * expected_order(kind));
  if (group.order() != expected_order(kind)) {
    throw Error("platonic group " + std::string(to_string(kind)) + " closed with " +
                std::to_string(group.order()) + " elements");
  }
  return group;
}

AmbientFunction on_sphere(std::function<double(double, double)> f) {
  return [f = std::move(f)](const Eigen::VectorXd& x) {
    const double r = x.norm();
    return f(std::acos(std::clamp(x(2) / r, -1.0, 1.0)), std::atan2(x(1), x(0)));
  };
}

double check_invariance(const AmbientFunction& f, const FiniteGroup& group, int samples, std::uint64_t seed,
                        int max_retries) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const int dim = group.dim();
  double worst = 0.0;
  int retries = 0;
  for (int s = 0; s < samples;) {
    Eigen::VectorXd x(dim);
    for (int i = 0; i < dim; ++i) x(i) = normal(rng);
    x.normalize();
    double local = 0.0;
    bool ok = true;
    try {
      const double fx = f(x);
      if (!std::isfinite(fx)) throw SingularityError("f");
      for (const auto& g : group.elements()) {
        const double fr = f(g.matrix * x);
        if (!std::isfinite(fr)) throw SingularityError("f");
        local = std::max(local, std::abs(fr - fx) / (1.0 + std::abs(fx)));
      }
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) {
      if (++retries > max_retries) throw SingularityError("invariance sample (retries exhausted)");
      continue;
    }
    worst = std::max(worst, local);
    ++s;
  }
  return worst;
}

Permutation compose(const Permutation& sigma, const Permutation& tau) {
  if (sigma.size() != tau.size()) throw ParameterError("compose: size mismatch");
  Permutation out(tau.size());
  for (std::size_t j = 0; j < tau.size(); ++j) out[j] = sigma[tau[j]];
  return out;
}

std::vector<Permutation> all_permutations(int n) {
  Permutation p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  std::vector<Permutation> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

Eigen::MatrixXd permutation_matrix(const Permutation& sigma) {
  const int n = static_cast<int>(sigma.size());
  std::vector<bool> seen(n, false);
  for (int v : sigma) {
    if (v < 0 || v >= n || seen[v]) throw ParameterError("not a permutation");
    seen[v] = true;
  }
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) p(sigma[j], j) = 1.0;
  return p;
}

GroupElement permutation_isometry(const Permutation& sigma) {
  const int n = static_cast<int>(sigma.size());
  if (n != 3 && n != 4) throw ParameterError("permutation_isometry: n must be 3 or 4");
  const Eigen::MatrixXd m = coords::orthogonal_matrix(n);
  const Eigen::MatrixXd full = m * permutation_matrix(sigma) * m.transpose();
  std::string label;
  for (int v : sigma) label += std::to_string(v + 1);
  return {full.topLeftCorner(n - 1, n - 1), label};
}

}  // namespace supint::symmetry
