#pragma once

#include <span>
#include <vector>

namespace supint {

inline constexpr int kMaxMultiJetVars = 3;
inline constexpr int kMaxMultiJetOrder = 10;

/// Truncated multivariate Taylor polynomial in up to three variables.
///
/// Coefficients are stored densely in mixed radix (order + 1) per variable;
/// entries of total degree above the order are kept at zero. A MultiJet with
/// zero variables is a plain constant and broadcasts against any other jet.
class MultiJet {
 public:
  MultiJet() = default;
  MultiJet(double constant);  // NOLINT: implicit promotion of constants

  static MultiJet constant(double value, int nvars, int order);
  static MultiJet variable(double at, int var, int nvars, int order);

  int nvars() const noexcept { return nvars_; }
  int order() const noexcept { return order_; }
  double value() const noexcept { return c_.empty() ? 0.0 : c_[0]; }

  /// Taylor coefficient (d^alpha f)(x0) / alpha!.
  double coeff(std::span<const int> alpha) const;
  /// d/dx_var; order drops by one.
  MultiJet partial(int var) const;

  MultiJet& operator+=(const MultiJet& b);
  MultiJet& operator-=(const MultiJet& b);

  friend MultiJet operator*(const MultiJet& a, const MultiJet& b);

  /// f(u) given the Taylor coefficients f^(k)(u0)/k!, k = 0..order, of f at
  /// u0 = value().
  MultiJet compose(std::span<const double> taylor) const;

 private:
  int index_degree(int idx) const;
  MultiJet reshaped(int nvars, int order) const;

  int nvars_ = 0;
  int order_ = 0;
  std::vector<double> c_{0.0};
};

MultiJet operator-(const MultiJet& a);
MultiJet operator+(MultiJet a, const MultiJet& b);
MultiJet operator-(MultiJet a, const MultiJet& b);
MultiJet operator/(const MultiJet& a, const MultiJet& b);

MultiJet sin(const MultiJet& x);
MultiJet cos(const MultiJet& x);
MultiJet pow(const MultiJet& x, double exponent);
MultiJet sqrt(const MultiJet& x);
MultiJet inv(const MultiJet& x);

inline double value_of(const MultiJet& x) { return x.value(); }

}  // namespace supint
