#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "supint/coords.hpp"

namespace supint {

/// A Hamiltonian on T*Q expressed in one chart.
///
/// `value` and `gradient` are mandatory. `potential_gradient` is set only for
/// Hamiltonians of the form 1/2 |p|^2 + V(q) (explicit Verlet applies), and
/// `walls` returns sign functions whose zero sets are singular walls.
struct Hamiltonian {
  coords::Chart chart = coords::Chart::kCartesianLine;
  int dim = 0;
  std::function<double(const Eigen::VectorXd& q, const Eigen::VectorXd& p)> value;
  std::function<void(const Eigen::VectorXd& q, const Eigen::VectorXd& p, Eigen::VectorXd& dq,
                     Eigen::VectorXd& dp)>
      gradient;
  std::function<Eigen::VectorXd(const Eigen::VectorXd& q)> potential_gradient;
  std::function<std::vector<double>(const Eigen::VectorXd& q)> walls;

  bool separable() const { return static_cast<bool>(potential_gradient); }
  double operator()(const coords::PhaseState& s) const { return value(s.q, s.p); }
};

}  // namespace supint
