#include "supint/jet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supint/errors.hpp"

namespace supint {

namespace {

void check_order(int order) {
  if (order < 0 || order > kMaxJetOrder) {
    throw ParameterError("jet order " + std::to_string(order) + " outside [0, " +
                         std::to_string(kMaxJetOrder) + "]");
  }
}

// Sine and cosine series of x computed together through the coupled
// recurrences s' = c x', c' = -s x'.
void sin_cos(const Jet& x, Jet& s, Jet& c) {
  const int n = x.order();
  s = Jet::constant(std::sin(x[0]), n);
  c = Jet::constant(std::cos(x[0]), n);
  for (int k = 1; k <= n; ++k) {
    double sk = 0.0;
    double ck = 0.0;
    for (int j = 1; j <= k; ++j) {
      const double w = j * x[j];
      sk += w * c[k - j];
      ck -= w * s[k - j];
    }
    s[k] = sk / k;
    c[k] = ck / k;
  }
}

}  // namespace

Jet::Jet(double constant) { c_[0] = constant; }

Jet Jet::constant(double value, int order) {
  check_order(order);
  Jet j;
  j.order_ = order;
  j.c_[0] = value;
  return j;
}

Jet Jet::variable(double at, int order) {
  Jet j = constant(at, order);
  if (order >= 1) j.c_[1] = 1.0;
  return j;
}

double Jet::derivative_value(int j) const {
  double f = 1.0;
  for (int i = 2; i <= j; ++i) f *= i;
  return (*this)[j] * f;
}

Jet Jet::derivative() const {
  if (order_ == 0) return constant(0.0, 0);
  Jet d = constant(0.0, order_ - 1);
  for (int j = 0; j < order_; ++j) d.c_[j] = (j + 1) * c_[j + 1];
  return d;
}

Jet Jet::truncated(int new_order) const {
  Jet t = *this;
  const int n = std::min(order_, std::max(new_order, 0));
  for (int j = n + 1; j <= order_; ++j) t.c_[j] = 0.0;
  t.order_ = n;
  return t;
}

double Jet::evaluate(double h) const {
  double acc = 0.0;
  for (int j = order_; j >= 0; --j) acc = acc * h + c_[j];
  return acc;
}

Jet& Jet::operator+=(const Jet& b) {
  order_ = std::min(order_, b.order_);
  for (int j = 0; j <= order_; ++j) c_[j] += b.c_[j];
  for (int j = order_ + 1; j <= kMaxJetOrder; ++j) c_[j] = 0.0;
  return *this;
}

Jet& Jet::operator-=(const Jet& b) {
  order_ = std::min(order_, b.order_);
  for (int j = 0; j <= order_; ++j) c_[j] -= b.c_[j];
  for (int j = order_ + 1; j <= kMaxJetOrder; ++j) c_[j] = 0.0;
  return *this;
}

Jet& Jet::operator*=(const Jet& b) { return *this = *this * b; }
Jet& Jet::operator/=(const Jet& b) { return *this = *this / b; }

Jet operator-(const Jet& a) { return a * -1.0; }
Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }

Jet operator*(const Jet& a, const Jet& b) {
  const int n = std::min(a.order(), b.order());
  Jet r = Jet::constant(0.0, n);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 0; j <= k; ++j) acc += a[j] * b[k - j];
    r[k] = acc;
  }
  return r;
}

Jet operator*(const Jet& a, double b) {
  Jet r = a;
  for (int j = 0; j <= r.order(); ++j) r[j] *= b;
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  if (b[0] == 0.0) throw JetPoleError("jet division by a series with zero constant term");
  const int n = std::min(a.order(), b.order());
  Jet q = Jet::constant(0.0, n);
  for (int k = 0; k <= n; ++k) {
    double acc = a[k];
    for (int j = 1; j <= k; ++j) acc -= b[j] * q[k - j];
    q[k] = acc / b[0];
  }
  return q;
}

Jet sin(const Jet& x) {
  Jet s, c;
  sin_cos(x, s, c);
  return s;
}

Jet cos(const Jet& x) {
  Jet s, c;
  sin_cos(x, s, c);
  return c;
}

Jet tan(const Jet& x) {
  Jet s, c;
  sin_cos(x, s, c);
  return s / c;
}

Jet exp(const Jet& x) {
  const int n = x.order();
  Jet e = Jet::constant(std::exp(x[0]), n);
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += j * x[j] * e[k - j];
    e[k] = acc / k;
  }
  return e;
}

Jet log(const Jet& x) {
  if (!(x[0] > 0.0)) throw JetPoleError("log of a non-positive jet");
  const int n = x.order();
  Jet l = Jet::constant(std::log(x[0]), n);
  // x l' = x'
  for (int k = 1; k <= n; ++k) {
    double acc = k * x[k];
    for (int j = 1; j < k; ++j) acc -= j * l[j] * x[k - j];
    l[k] = acc / (k * x[0]);
  }
  return l;
}

Jet pow(const Jet& x, double a) {
  const int n = x.order();
  if (x[0] == 0.0) {
    if (a == std::floor(a) && a >= 0.0) {
      Jet r = Jet::constant(1.0, n);
      for (int i = 0; i < static_cast<int>(a); ++i) r = r * x;
      return r;
    }
    throw JetPoleError("pow of a jet with zero constant term");
  }
  Jet p = Jet::constant(std::pow(x[0], a), n);
  // x p' = a x' p
  for (int k = 1; k <= n; ++k) {
    double acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += (a * j - (k - j)) * x[j] * p[k - j];
    p[k] = acc / (k * x[0]);
  }
  return p;
}

Jet sqrt(const Jet& x) {
  if (!(x[0] > 0.0)) throw JetPoleError("sqrt of a non-positive jet");
  return pow(x, 0.5);
}

Jet atan2(const Jet& y, const Jet& x) {
  const int n = std::min(x.order(), y.order());
  const double r2 = x[0] * x[0] + y[0] * y[0];
  if (r2 == 0.0) throw JetPoleError("atan2 at the origin");
  Jet theta = Jet::constant(std::atan2(y[0], x[0]), n);
  if (n == 0) return theta;
  // theta' = (x y' - y x') / (x^2 + y^2), integrated term by term.
  const Jet xs = x.truncated(n - 1);
  const Jet ys = y.truncated(n - 1);
  const Jet w = (xs * y.derivative() - ys * x.derivative()) / (xs * xs + ys * ys);
  for (int k = 1; k <= n; ++k) theta[k] = w[k - 1] / k;
  return theta;
}

Jet inv_sin_sq(const Jet& x) {
  const Jet s = sin(x);
  if (s[0] == 0.0) throw JetPoleError("1/sin^2 evaluated at a zero of sin");
  return 1.0 / (s * s);
}

Jet jet_elementary(Elementary fn, double at, int order, double a, double b) {
  check_order(order);
  const Jet x = Jet::variable(at, order);
  switch (fn) {
    case Elementary::kSin:
      return sin(x);
    case Elementary::kCos:
      return cos(x);
    case Elementary::kPow:
      return pow(x, a);
    case Elementary::kInvSinSq:
      return inv_sin_sq(x);
    case Elementary::kConst:
      return Jet::constant(a, order);
    case Elementary::kLinear:
      return x * b + a;
  }
  throw ParameterError("unknown elementary function");
}

}  // namespace supint
