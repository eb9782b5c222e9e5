#pragma once

#include <functional>
#include <span>
#include <type_traits>

#include "supint/dual.hpp"
#include "supint/errors.hpp"
#include "supint/jet.hpp"
#include "supint/multijet.hpp"

namespace supint {

/// Type-erased scalar function of one real variable that can be evaluated on
/// plain doubles, dual numbers, univariate jets and multivariate jets.
///
/// Build one from a generic lambda written against `auto`:
///
///   auto f = ScalarFunction::generic([](const auto& x) {
///     using std::sin;
///     return 1.0 / (sin(x) * sin(x));
///   });
///
/// Slots that were not provided raise ParameterError when called.
class ScalarFunction {
 public:
  using DoubleFn = std::function<double(double)>;
  using DualFn = std::function<Dual(const Dual&)>;
  using JetFn = std::function<Jet(const Jet&)>;
  using MultiJetFn = std::function<MultiJet(const MultiJet&)>;

  ScalarFunction() = default;
  ScalarFunction(DoubleFn d, DualFn dual, JetFn jet, MultiJetFn multi = {})
      : d_(std::move(d)), dual_(std::move(dual)), jet_(std::move(jet)), multi_(std::move(multi)) {}

  template <class F>
  static ScalarFunction generic(F f) {
    return ScalarFunction([f](double x) -> double { return f(x); },
                          [f](const Dual& x) -> Dual { return f(x); },
                          [f](const Jet& x) -> Jet { return f(x); },
                          [f](const MultiJet& x) -> MultiJet { return f(x); });
  }

  explicit operator bool() const { return static_cast<bool>(d_); }

  double operator()(double x) const { return call(d_, x); }
  Dual operator()(const Dual& x) const { return call(dual_, x); }
  Jet operator()(const Jet& x) const { return call(jet_, x); }
  MultiJet operator()(const MultiJet& x) const { return call(multi_, x); }

 private:
  template <class Fn, class T>
  static T call(const Fn& fn, const T& x) {
    if (!fn) throw ParameterError("scalar function has no overload for this number type");
    return fn(x);
  }

  DoubleFn d_;
  DualFn dual_;
  JetFn jet_;
  MultiJetFn multi_;
};

/// Type-erased scalar field q -> f(q) evaluable on doubles and multivariate jets.
class FieldFunction {
 public:
  using DoubleFn = std::function<double(std::span<const double>)>;
  using MultiJetFn = std::function<MultiJet(std::span<const MultiJet>)>;

  FieldFunction() = default;
  FieldFunction(DoubleFn d, MultiJetFn multi) : d_(std::move(d)), multi_(std::move(multi)) {}

  template <class F>
  static FieldFunction generic(F f) {
    return FieldFunction([f](std::span<const double> q) -> double { return f(q); },
                         [f](std::span<const MultiJet> q) -> MultiJet { return f(q); });
  }

  explicit operator bool() const { return static_cast<bool>(d_); }

  double operator()(std::span<const double> q) const {
    if (!d_) throw ParameterError("empty field function");
    return d_(q);
  }
  MultiJet operator()(std::span<const MultiJet> q) const {
    if (!multi_) throw ParameterError("field function has no multijet overload");
    return multi_(q);
  }

 private:
  DoubleFn d_;
  MultiJetFn multi_;
};

}  // namespace supint
