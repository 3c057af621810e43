#include "sasaki/fields.hpp"

namespace sasaki {

ScalarField VectorField::component(int i) const {
  VectorField self = *this;
  auto d = [self, i](const VecD& p) { return self.eval_d(p)[i]; };
  std::function<J(const TVec<J>&)> j;
  std::function<JJ(const TVec<JJ>&)> jj;
  if (has_jets()) j = [self, i](const TVec<J>& p) { return self.eval_j(p)[i]; };
  if (has_nested_jets()) jj = [self, i](const TVec<JJ>& p) { return self.eval_jj(p)[i]; };
  return ScalarField::from_callables(d, j, jj);
}

ScalarField field_from_expr(const dsl::Expr& e) {
  return ScalarField::from_callables(
      [e](const VecD& p) { return e.eval<double>(p); },
      [e](const TVec<J>& p) { return e.eval<J>(p); },
      [e](const TVec<JJ>& p) { return e.eval<JJ>(p); });
}

namespace {

VecD shifted(const VecD& p, const VecD& v, double t) {
  VecD q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[i] = p[i] + t * v[i];
  return q;
}

double fd_once(const ScalarField& f, const VecD& p, const VecD& v, int order, double h) {
  switch (order) {
    case 1:
      return (f.eval_d(shifted(p, v, h)) - f.eval_d(shifted(p, v, -h))) / (2.0 * h);
    case 2:
      return (f.eval_d(shifted(p, v, h)) - 2.0 * f.eval_d(p) + f.eval_d(shifted(p, v, -h))) /
             (h * h);
    case 3:
      return (f.eval_d(shifted(p, v, 2 * h)) - 2.0 * f.eval_d(shifted(p, v, h)) +
              2.0 * f.eval_d(shifted(p, v, -h)) - f.eval_d(shifted(p, v, -2 * h))) /
             (2.0 * h * h * h);
    default:
      throw std::invalid_argument("dir_deriv: order must be 1, 2 or 3");
  }
}

double fd_deriv(const ScalarField& f, const VecD& p, const VecD& v, int order,
                const DiffConfig& cfg) {
  double h = order == 1 ? cfg.h1 : order == 2 ? cfg.h2 : cfg.h3;
  double coarse = fd_once(f, p, v, order, h);
  if (!cfg.richardson) return coarse;
  double fine = fd_once(f, p, v, order, h / 2.0);
  // central stencils are O(h^2); one extrapolation level removes that term
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

double dir_deriv(const ScalarField& f, const Point& p, const VecD& v, int order,
                 const DiffConfig& cfg) {
  if (order < 1 || order > 3) throw std::invalid_argument("dir_deriv: order must be 1, 2 or 3");
  if (cfg.strategy == DiffStrategy::jet && f.has_jets()) {
    TVec<J> q(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) q[i] = J(p.c[i], v[i]);
    J r = f.eval_j(q);
    return order == 1 ? r.d1 : order == 2 ? r.d2 : r.d3;
  }
  return fd_deriv(f, p.c, v, order, cfg);
}

J dir_deriv_j(const ScalarField& f, const TVec<J>& p, const TVec<J>& v) {
  TVec<JJ> q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[i] = JJ(p[i], v[i]);
  return f.eval_jj(q).d1;
}

VecD coordinate_gradient(const ScalarField& f, const Point& p, const DiffConfig& cfg) {
  int n = p.dim();
  VecD df(n);
  VecD axis(n, 0.0);
  for (int a = 0; a < n; ++a) {
    axis[a] = 1.0;
    df[a] = dir_deriv(f, p, axis, 1, cfg);
    axis[a] = 0.0;
  }
  return df;
}

VecD lie_bracket(const VectorField& X, const VectorField& Y, const Point& p,
                 const DiffConfig& cfg) {
  int n = p.dim();
  VecD xv = X(p);
  VecD yv = Y(p);
  VecD r(n, 0.0);
  for (int k = 0; k < n; ++k) {
    r[k] = dir_deriv(Y.component(k), p, xv, 1, cfg) - dir_deriv(X.component(k), p, yv, 1, cfg);
  }
  return r;
}

}  // namespace sasaki
