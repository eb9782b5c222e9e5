#pragma once

#include <array>
#include <cmath>

namespace supint {

inline constexpr int kDualWidth = 4;

// Forward-mode dual number with a fixed number of partial-derivative slots.
// Used for exact gradients of closed-form potentials in charts of dimension
// at most kDualWidth.
struct Dual {
  double v = 0.0;
  std::array<double, kDualWidth> d{};

  Dual() = default;
  Dual(double value) : v(value) {}  // NOLINT: constants promote implicitly

  static Dual variable(double value, int slot) {
    Dual x(value);
    x.d[static_cast<std::size_t>(slot)] = 1.0;
    return x;
  }
};

inline double value_of(double x) { return x; }
inline double value_of(const Dual& x) { return x.v; }

namespace detail {
// Chain rule: f(x) with f'(x) = slope.
inline Dual chain(const Dual& x, double fx, double slope) {
  Dual r(fx);
  for (int i = 0; i < kDualWidth; ++i) r.d[i] = slope * x.d[i];
  return r;
}
}  // namespace detail

inline Dual operator-(const Dual& a) {
  Dual r(-a.v);
  for (int i = 0; i < kDualWidth; ++i) r.d[i] = -a.d[i];
  return r;
}

inline Dual& operator+=(Dual& a, const Dual& b) {
  a.v += b.v;
  for (int i = 0; i < kDualWidth; ++i) a.d[i] += b.d[i];
  return a;
}
inline Dual& operator-=(Dual& a, const Dual& b) {
  a.v -= b.v;
  for (int i = 0; i < kDualWidth; ++i) a.d[i] -= b.d[i];
  return a;
}
inline Dual& operator*=(Dual& a, const Dual& b) {
  for (int i = 0; i < kDualWidth; ++i) a.d[i] = a.d[i] * b.v + a.v * b.d[i];
  a.v *= b.v;
  return a;
}
inline Dual& operator/=(Dual& a, const Dual& b) {
  const double inv = 1.0 / b.v;
  const double q = a.v * inv;
  for (int i = 0; i < kDualWidth; ++i) a.d[i] = (a.d[i] - q * b.d[i]) * inv;
  a.v = q;
  return a;
}

inline Dual operator+(Dual a, const Dual& b) { return a += b; }
inline Dual operator-(Dual a, const Dual& b) { return a -= b; }
inline Dual operator*(Dual a, const Dual& b) { return a *= b; }
inline Dual operator/(Dual a, const Dual& b) { return a /= b; }
inline Dual operator+(Dual a, double b) { return a += Dual(b); }
inline Dual operator-(Dual a, double b) { return a -= Dual(b); }
inline Dual operator*(Dual a, double b) {
  a.v *= b;
  for (auto& x : a.d) x *= b;
  return a;
}
inline Dual operator/(Dual a, double b) { return a * (1.0 / b); }
inline Dual operator+(double a, const Dual& b) { return b + a; }
inline Dual operator-(double a, const Dual& b) { return -b + a; }
inline Dual operator*(double a, const Dual& b) { return b * a; }
inline Dual operator/(double a, const Dual& b) { return Dual(a) / b; }

inline Dual sin(const Dual& x) { return detail::chain(x, std::sin(x.v), std::cos(x.v)); }
inline Dual cos(const Dual& x) { return detail::chain(x, std::cos(x.v), -std::sin(x.v)); }
inline Dual tan(const Dual& x) {
  const double t = std::tan(x.v);
  return detail::chain(x, t, 1.0 + t * t);
}
inline Dual exp(const Dual& x) {
  const double e = std::exp(x.v);
  return detail::chain(x, e, e);
}
inline Dual log(const Dual& x) { return detail::chain(x, std::log(x.v), 1.0 / x.v); }
inline Dual sqrt(const Dual& x) {
  const double s = std::sqrt(x.v);
  return detail::chain(x, s, 0.5 / s);
}
inline Dual pow(const Dual& x, double a) {
  const double p = std::pow(x.v, a);
  return detail::chain(x, p, a * std::pow(x.v, a - 1.0));
}
inline Dual atan2(const Dual& y, const Dual& x) {
  const double r2 = x.v * x.v + y.v * y.v;
  Dual r(std::atan2(y.v, x.v));
  for (int i = 0; i < kDualWidth; ++i) r.d[i] = (x.v * y.d[i] - y.v * x.d[i]) / r2;
  return r;
}

}  // namespace supint
