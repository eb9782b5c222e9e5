#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace supint::symmetry {

/// Orthogonal 2x2 or 3x3 matrix with the generator word that produced it.
struct GroupElement {
  Eigen::MatrixXd matrix;
  std::string label;

  int dim() const noexcept { return static_cast<int>(matrix.rows()); }
  double det() const { return matrix.determinant(); }
  /// ||G G^T - I||_inf
  double orthogonality_error() const;
};

/// Entries snapped to 0 and +-1 when within 1e-12, others printed with 12
/// significant digits.
std::string to_string(const GroupElement& g);

inline constexpr double kMatchTolerance = 1e-9;

class FiniteGroup {
 public:
  FiniteGroup(std::vector<GroupElement> elements, std::vector<GroupElement> generators);

  const std::vector<GroupElement>& elements() const noexcept { return elements_; }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }
  int order() const noexcept { return static_cast<int>(elements_.size()); }
  int dim() const noexcept { return elements_.empty() ? 0 : elements_.front().dim(); }

  /// Index of the element within `tol` (max-norm) of m, or -1.
  int find(const Eigen::MatrixXd& m, double tol = kMatchTolerance) const;
  bool contains(const Eigen::MatrixXd& m, double tol = kMatchTolerance) const { return find(m, tol) >= 0; }
  bool has_identity(double tol = kMatchTolerance) const;
  bool closed(double tol = kMatchTolerance) const;
  bool has_inverses(double tol = kMatchTolerance) const;

 private:
  std::vector<GroupElement> elements_;
  std::vector<GroupElement> generators_;
};

/// Breadth-first closure of the generators. Throws Error when more than
/// `max_elements` distinct elements turn up.
FiniteGroup generate_group(std::vector<GroupElement> generators, int max_elements);

/// Rotation by pi/n and reflection about the axis at angle -phase/n; order 4n.
FiniteGroup dihedral_group(int n, double phase = 0.0);

enum class PlatonicKind { kTetra, kOcta, kIcosa };

PlatonicKind platonic_kind_from_string(std::string_view name);
std::string_view to_string(PlatonicKind kind);
int expected_order(PlatonicKind kind);

/// Rotation groups: tetra and octa in the coordinate frame of xyz, icosa with
/// a five-fold axis along z and a two-fold axis in the xz-plane.
FiniteGroup platonic_group(PlatonicKind kind);
std::vector<GroupElement> platonic_generators(PlatonicKind kind);

using AmbientFunction = std::function<double(const Eigen::VectorXd& x)>;

/// Wraps f(theta, phi) as a function of a unit vector.
AmbientFunction on_sphere(std::function<double(double theta, double phi)> f);

/// max over random unit vectors x and group elements R of
/// |f(R x) - f(x)| / (1 + |f(x)|). Points where f throws or is not finite are
/// redrawn, at most `max_retries` times in total.
double check_invariance(const AmbientFunction& f, const FiniteGroup& group, int samples,
                        std::uint64_t seed = 1, int max_retries = 1000);

/// sigma[j] is the image of letter j (0-based).
using Permutation = std::vector<int>;

Permutation compose(const Permutation& sigma, const Permutation& tau);  // sigma after tau
std::vector<Permutation> all_permutations(int n);
Eigen::MatrixXd permutation_matrix(const Permutation& sigma);  // P e_j = e_sigma(j)

/// M P M^T restricted to the first n-1 orthogonal coordinates; n in {3, 4}.
GroupElement permutation_isometry(const Permutation& sigma);

}  // namespace supint::symmetry
