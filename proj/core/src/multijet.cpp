#include "supint/multijet.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "supint/errors.hpp"

namespace supint {

namespace {

int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

MultiJet::MultiJet(double constant) : c_{constant} {}

MultiJet MultiJet::constant(double value, int nvars, int order) {
  if (nvars < 0 || nvars > kMaxMultiJetVars || order < 0 || order > kMaxMultiJetOrder) {
    throw ParameterError("multijet shape out of range: nvars=" + std::to_string(nvars) +
                         " order=" + std::to_string(order));
  }
  MultiJet j;
  j.nvars_ = nvars;
  j.order_ = nvars == 0 ? 0 : order;
  j.c_.assign(static_cast<std::size_t>(ipow(j.order_ + 1, nvars)), 0.0);
  j.c_[0] = value;
  return j;
}

MultiJet MultiJet::variable(double at, int var, int nvars, int order) {
  if (var < 0 || var >= nvars) throw ParameterError("multijet variable index out of range");
  MultiJet j = constant(at, nvars, order);
  if (order >= 1) j.c_[static_cast<std::size_t>(ipow(order + 1, var))] = 1.0;
  return j;
}

int MultiJet::index_degree(int idx) const {
  int deg = 0;
  for (int v = 0; v < nvars_; ++v) {
    deg += idx % (order_ + 1);
    idx /= order_ + 1;
  }
  return deg;
}

double MultiJet::coeff(std::span<const int> alpha) const {
  if (static_cast<int>(alpha.size()) != nvars_) throw ParameterError("multi-index size mismatch");
  int idx = 0;
  int stride = 1;
  int deg = 0;
  for (int v = 0; v < nvars_; ++v) {
    if (alpha[v] < 0) return 0.0;
    deg += alpha[v];
    idx += alpha[v] * stride;
    stride *= order_ + 1;
  }
  if (deg > order_) return 0.0;
  return c_[static_cast<std::size_t>(idx)];
}

MultiJet MultiJet::reshaped(int nvars, int order) const {
  if (nvars_ == 0) return constant(value(), nvars, order);
  if (nvars != nvars_) throw ParameterError("multijet variable count mismatch");
  if (order == order_) return *this;
  MultiJet r = constant(0.0, nvars, order);
  const int n = static_cast<int>(c_.size());
  for (int idx = 0; idx < n; ++idx) {
    int rem = idx;
    int ridx = 0;
    int stride = 1;
    int deg = 0;
    for (int v = 0; v < nvars_; ++v) {
      const int a = rem % (order_ + 1);
      rem /= order_ + 1;
      deg += a;
      ridx += a * stride;
      stride *= order + 1;
    }
    if (deg <= order) r.c_[static_cast<std::size_t>(ridx)] = c_[static_cast<std::size_t>(idx)];
  }
  return r;
}

MultiJet MultiJet::partial(int var) const {
  if (nvars_ == 0) return MultiJet(0.0);
  if (var < 0 || var >= nvars_) throw ParameterError("multijet variable index out of range");
  const int new_order = std::max(order_ - 1, 0);
  MultiJet r = constant(0.0, nvars_, new_order);
  if (order_ == 0) return r;
  const int n = static_cast<int>(c_.size());
  for (int idx = 0; idx < n; ++idx) {
    const double cv = c_[static_cast<std::size_t>(idx)];
    if (cv == 0.0) continue;
    int rem = idx;
    int ridx = 0;
    int stride = 1;
    int deg = 0;
    double factor = 0.0;
    for (int v = 0; v < nvars_; ++v) {
      int a = rem % (order_ + 1);
      rem /= order_ + 1;
      if (v == var) {
        if (a == 0) {
          factor = 0.0;
          deg = new_order + 1;  // drop
          break;
        }
        factor = a;
        a -= 1;
      }
      deg += a;
      ridx += a * stride;
      stride *= new_order + 1;
    }
    if (deg <= new_order && factor != 0.0) r.c_[static_cast<std::size_t>(ridx)] = factor * cv;
  }
  return r;
}

MultiJet& MultiJet::operator+=(const MultiJet& b) {
  if (b.nvars_ == 0) {
    c_[0] += b.value();
    return *this;
  }
  const int order = nvars_ == 0 ? b.order_ : std::min(order_, b.order_);
  MultiJet a = reshaped(b.nvars_, order);
  const MultiJet bb = b.reshaped(b.nvars_, order);
  for (std::size_t i = 0; i < a.c_.size(); ++i) a.c_[i] += bb.c_[i];
  return *this = std::move(a);
}

MultiJet& MultiJet::operator-=(const MultiJet& b) { return *this += -b; }

MultiJet operator*(const MultiJet& a, const MultiJet& b) {
  if (a.nvars_ == 0 || b.nvars_ == 0) {
    const MultiJet& jet = a.nvars_ == 0 ? b : a;
    const double s = a.nvars_ == 0 ? a.value() : b.value();
    MultiJet r = jet;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  const int order = std::min(a.order_, b.order_);
  const MultiJet aa = a.reshaped(a.nvars_, order);
  const MultiJet bb = b.reshaped(b.nvars_, order);
  MultiJet r = MultiJet::constant(0.0, a.nvars_, order);
  const int n = static_cast<int>(aa.c_.size());
  std::vector<int> deg(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) deg[static_cast<std::size_t>(i)] = aa.index_degree(i);
  for (int i = 0; i < n; ++i) {
    const double ai = aa.c_[static_cast<std::size_t>(i)];
    if (ai == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double bj = bb.c_[static_cast<std::size_t>(j)];
      if (bj == 0.0) continue;
      if (deg[static_cast<std::size_t>(i)] + deg[static_cast<std::size_t>(j)] > order) continue;
      // Per-variable exponents stay <= order, so mixed-radix indices add without carry.
      r.c_[static_cast<std::size_t>(i + j)] += ai * bj;
    }
  }
  return r;
}

MultiJet MultiJet::compose(std::span<const double> taylor) const {
  if (nvars_ == 0 || order_ == 0) return MultiJet::constant(taylor[0], nvars_, order_);
  MultiJet delta = *this;
  delta.c_[0] = 0.0;
  MultiJet acc = MultiJet::constant(taylor[static_cast<std::size_t>(order_)], nvars_, order_);
  for (int k = order_ - 1; k >= 0; --k) {
    acc = acc * delta;
    acc.c_[0] += taylor[static_cast<std::size_t>(k)];
  }
  return acc;
}

MultiJet operator-(const MultiJet& a) { return a * MultiJet(-1.0); }
MultiJet operator+(MultiJet a, const MultiJet& b) { return a += b; }
MultiJet operator-(MultiJet a, const MultiJet& b) { return a -= b; }
MultiJet operator/(const MultiJet& a, const MultiJet& b) { return a * inv(b); }

MultiJet sin(const MultiJet& x) {
  const double s = std::sin(x.value());
  const double c = std::cos(x.value());
  const double cycle[4] = {s, c, -s, -c};
  std::vector<double> t(static_cast<std::size_t>(x.order() + 1));
  double fact = 1.0;
  for (int k = 0; k <= x.order(); ++k) {
    if (k > 0) fact *= k;
    t[static_cast<std::size_t>(k)] = cycle[k % 4] / fact;
  }
  return x.compose(t);
}

MultiJet cos(const MultiJet& x) {
  const double s = std::sin(x.value());
  const double c = std::cos(x.value());
  const double cycle[4] = {c, -s, -c, s};
  std::vector<double> t(static_cast<std::size_t>(x.order() + 1));
  double fact = 1.0;
  for (int k = 0; k <= x.order(); ++k) {
    if (k > 0) fact *= k;
    t[static_cast<std::size_t>(k)] = cycle[k % 4] / fact;
  }
  return x.compose(t);
}

MultiJet pow(const MultiJet& x, double a) {
  const double u0 = x.value();
  if (u0 == 0.0) throw JetPoleError("pow of a multijet with zero constant term");
  std::vector<double> t(static_cast<std::size_t>(x.order() + 1));
  t[0] = std::pow(u0, a);
  for (int k = 1; k <= x.order(); ++k) {
    t[static_cast<std::size_t>(k)] = t[static_cast<std::size_t>(k - 1)] * (a - k + 1) / (k * u0);
  }
  return x.compose(t);
}

MultiJet sqrt(const MultiJet& x) {
  if (!(x.value() > 0.0)) throw JetPoleError("sqrt of a non-positive multijet");
  return pow(x, 0.5);
}

MultiJet inv(const MultiJet& x) {
  const double u0 = x.value();
  if (u0 == 0.0) throw JetPoleError("division by a multijet with zero constant term");
  std::vector<double> t(static_cast<std::size_t>(x.order() + 1));
  t[0] = 1.0 / u0;
  for (int k = 1; k <= x.order(); ++k) t[static_cast<std::size_t>(k)] = -t[static_cast<std::size_t>(k - 1)] / u0;
  return x.compose(t);
}

}  // namespace supint
