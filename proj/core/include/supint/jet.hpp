#pragma once

#include <array>
#include <cstddef>

namespace supint {

inline constexpr int kMaxJetOrder = 32;

/// Truncated Taylor series of a scalar function of one variable.
///
/// coeffs[j] holds f^(j)(x0) / j!. Arithmetic follows the truncated Leibniz
/// and chain rules; the order of a binary result is the smaller of the two
/// operand orders. Plain doubles promote to constants of maximal order so they
/// never truncate the other operand.
class Jet {
 public:
  Jet() = default;
  Jet(double constant);  // NOLINT: implicit promotion of constants

  static Jet constant(double value, int order);
  /// The independent variable x expanded at `at`: coefficients (at, 1, 0, ...).
  static Jet variable(double at, int order);

  int order() const noexcept { return order_; }
  double value() const noexcept { return c_[0]; }
  double operator[](int j) const { return c_[static_cast<std::size_t>(j)]; }
  double& operator[](int j) { return c_[static_cast<std::size_t>(j)]; }

  /// j-th derivative at the expansion point.
  double derivative_value(int j) const;
  /// d/dx of the series; order drops by one (order-0 jets differentiate to 0).
  Jet derivative() const;
  /// Copy truncated to min(order(), new_order).
  Jet truncated(int new_order) const;
  /// Sum of the series at offset h from the expansion point.
  double evaluate(double h) const;

  Jet& operator+=(const Jet& b);
  Jet& operator-=(const Jet& b);
  Jet& operator*=(const Jet& b);
  Jet& operator/=(const Jet& b);

 private:
  int order_ = kMaxJetOrder;
  std::array<double, kMaxJetOrder + 1> c_{};
};

Jet operator-(const Jet& a);
Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
inline Jet operator+(const Jet& a, double b) { return a + Jet(b); }
inline Jet operator-(const Jet& a, double b) { return a - Jet(b); }
inline Jet operator+(double a, const Jet& b) { return Jet(a) + b; }
inline Jet operator-(double a, const Jet& b) { return Jet(a) - b; }
Jet operator*(const Jet& a, double b);
inline Jet operator*(double a, const Jet& b) { return b * a; }
inline Jet operator/(const Jet& a, double b) { return a * (1.0 / b); }
inline Jet operator/(double a, const Jet& b) { return Jet(a) / b; }

Jet sin(const Jet& x);
Jet cos(const Jet& x);
Jet tan(const Jet& x);
Jet exp(const Jet& x);
Jet log(const Jet& x);
Jet pow(const Jet& x, double exponent);
Jet sqrt(const Jet& x);
Jet atan2(const Jet& y, const Jet& x);
/// 1 / sin^2(x); raises JetPoleError when sin(x) vanishes at the expansion point.
Jet inv_sin_sq(const Jet& x);

inline double value_of(const Jet& x) { return x.value(); }

/// Elementary seeds accepted by jet_elementary.
enum class Elementary { kSin, kCos, kPow, kInvSinSq, kConst, kLinear };

/// Taylor jet of an elementary function of psi expanded at `at`.
///   kPow:    psi^a
///   kConst:  a
///   kLinear: a + b psi
/// Raises JetPoleError at poles and ParameterError for order outside [0, 32].
Jet jet_elementary(Elementary fn, double at, int order, double a = 0.0, double b = 1.0);

}  // namespace supint
