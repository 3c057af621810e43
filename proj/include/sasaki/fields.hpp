#pragma once

#include <functional>
#include <stdexcept>
#include <type_traits>
#include <vector>

#include "sasaki/expr.hpp"
#include "sasaki/jet.hpp"
#include "sasaki/linalg.hpp"

namespace sasaki {

/// A point of the global chart of R^{2m+1}, coordinates (x1..xm, y1..ym, z).
struct Point {
  VecD c;
  Point() = default;
  explicit Point(VecD coords) : c(std::move(coords)) {}
  int dim() const { return int(c.size()); }
};

enum class DiffStrategy { jet, finite_difference };

/// Finite-difference configuration: central differences with per-order steps
/// and one Richardson extrapolation level.
struct DiffConfig {
  DiffStrategy strategy = DiffStrategy::jet;
  double h1 = 1e-5;
  double h2 = 1e-4;
  double h3 = 5e-3;
  bool richardson = true;
};

template <class T>
using TVec = std::vector<T>;

/// Pure scalar map over the chart. Closed-form fields carry jet evaluation
/// channels; derived fields (mean curvature of the foot point and friends)
/// only evaluate on doubles and are differentiated by finite differences.
class ScalarField {
 public:
  ScalarField() = default;

  double operator()(const Point& p) const { return fd_(p.c); }
  double eval_d(const VecD& p) const { return fd_(p); }
  bool has_jets() const { return bool(fj_); }
  bool has_nested_jets() const { return bool(fjj_); }
  J eval_j(const TVec<J>& p) const {
    if (!fj_) throw std::logic_error("scalar field has no jet channel");
    return fj_(p);
  }
  JJ eval_jj(const TVec<JJ>& p) const {
    if (!fjj_) throw std::logic_error("scalar field has no nested jet channel");
    return fjj_(p);
  }

  template <class T>
  T eval_t(const TVec<T>& p) const {
    if constexpr (std::is_same_v<T, double>)
      return eval_d(p);
    else if constexpr (std::is_same_v<T, J>)
      return eval_j(p);
    else
      return eval_jj(p);
  }

  static ScalarField from_callables(std::function<double(const VecD&)> d,
                                    std::function<J(const TVec<J>&)> j = nullptr,
                                    std::function<JJ(const TVec<JJ>&)> jj = nullptr) {
    ScalarField f;
    f.fd_ = std::move(d);
    f.fj_ = std::move(j);
    f.fjj_ = std::move(jj);
    return f;
  }

 private:
  std::function<double(const VecD&)> fd_;
  std::function<J(const TVec<J>&)> fj_;
  std::function<JJ(const TVec<JJ>&)> fjj_;
};

/// Pure vector map over the chart (coordinate components).
class VectorField {
 public:
  VectorField() = default;

  VecD operator()(const Point& p) const { return fd_(p.c); }
  VecD eval_d(const VecD& p) const { return fd_(p); }
  bool has_jets() const { return bool(fj_); }
  bool has_nested_jets() const { return bool(fjj_); }
  TVec<J> eval_j(const TVec<J>& p) const {
    if (!fj_) throw std::logic_error("vector field has no jet channel");
    return fj_(p);
  }
  TVec<JJ> eval_jj(const TVec<JJ>& p) const {
    if (!fjj_) throw std::logic_error("vector field has no nested jet channel");
    return fjj_(p);
  }

  ScalarField component(int i) const;

  template <class T>
  TVec<T> eval_t(const TVec<T>& p) const {
    if constexpr (std::is_same_v<T, double>)
      return eval_d(p);
    else if constexpr (std::is_same_v<T, J>)
      return eval_j(p);
    else
      return eval_jj(p);
  }

  static VectorField from_callables(std::function<VecD(const VecD&)> d,
                                    std::function<TVec<J>(const TVec<J>&)> j = nullptr,
                                    std::function<TVec<JJ>(const TVec<JJ>&)> jj = nullptr) {
    VectorField f;
    f.fd_ = std::move(d);
    f.fj_ = std::move(j);
    f.fjj_ = std::move(jj);
    return f;
  }

 private:
  std::function<VecD(const VecD&)> fd_;
  std::function<TVec<J>(const TVec<J>&)> fj_;
  std::function<TVec<JJ>(const TVec<JJ>&)> fjj_;
};

/// Instantiate a generic functor (callable with std::vector<T> for
/// T in {double, J, JJ}) as a fully jet-capable scalar field.
template <class F>
ScalarField make_scalar_field(F f) {
  return ScalarField::from_callables(
      [f](const VecD& p) { return f(p); }, [f](const TVec<J>& p) { return f(p); },
      [f](const TVec<JJ>& p) { return f(p); });
}

template <class F>
VectorField make_vector_field(F f) {
  return VectorField::from_callables(
      [f](const VecD& p) { return f(p); }, [f](const TVec<J>& p) { return f(p); },
      [f](const TVec<JJ>& p) { return f(p); });
}

ScalarField field_from_expr(const dsl::Expr& e);

// ---- derivative engine ------------------------------------------------------

/// d^k/dt^k f(p + t v) at t = 0, k in {1,2,3}. Uses the jet channel when the
/// field carries one and the strategy allows, otherwise central finite
/// differences with one Richardson step.
double dir_deriv(const ScalarField& f, const Point& p, const VecD& v, int order,
                 const DiffConfig& cfg);

/// Jet-valued variant: the base point and direction components are jets in an
/// outer parameter; requires the field's nested channel.
J dir_deriv_j(const ScalarField& f, const TVec<J>& p, const TVec<J>& v);

/// Coordinate partial derivatives (df/dx^a) as a covector.
VecD coordinate_gradient(const ScalarField& f, const Point& p, const DiffConfig& cfg);

/// Lie bracket [X,Y]^k = X^a d_a Y^k - Y^a d_a X^k evaluated at p.
VecD lie_bracket(const VectorField& X, const VectorField& Y, const Point& p,
                 const DiffConfig& cfg);

}  // namespace sasaki
