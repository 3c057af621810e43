#pragma once

#include <stdexcept>
#include <vector>

#include "sasaki/fields.hpp"
#include "sasaki/jet.hpp"
#include "sasaki/linalg.hpp"

namespace sasaki {

/// Parameters of the ambient space form R^{2m+1}(c). The metric model is
/// realized only at c = -3; other c values enter closed-form expressions.
struct SpaceFormParams {
  int m = 1;
  double c = -3.0;
  int dim() const { return 2 * m + 1; }
};

inline void check_point_dim(const SpaceFormParams& pr, int dim) {
  if (dim != pr.dim())
    throw std::invalid_argument("point dimension does not match 2m+1");
}

/// The contact structure quadruple (g, phi, eta, xi) in coordinate components
/// at a point.
template <class T>
struct StructureTensorsT {
  Mat<T> g;
  Mat<T> phi;
  TVec<T> eta;
  TVec<T> xi;
};

using StructureTensors = StructureTensorsT<double>;

// Coordinates are ordered (x1..xm, y1..ym, z):
//   eta = (dz - sum_i y_i dx_i)/2,   xi = 2 d/dz,
//   g   = eta (x) eta + (sum_i dx_i^2 + dy_i^2)/4,
//   phi d/dx_i = -d/dy_i,  phi d/dy_i = d/dx_i + y_i d/dz,  phi d/dz = 0.

template <class T>
TVec<T> eta_at(const SpaceFormParams& pr, const TVec<T>& p) {
  int m = pr.m;
  TVec<T> eta(pr.dim(), T(0.0));
  for (int i = 0; i < m; ++i) eta[i] = p[m + i] * (-0.5);
  eta[2 * m] = T(0.5);
  return eta;
}

template <class T>
TVec<T> xi_at(const SpaceFormParams& pr, const TVec<T>&) {
  TVec<T> xi(pr.dim(), T(0.0));
  xi[2 * pr.m] = T(2.0);
  return xi;
}

template <class T>
Mat<T> metric_at(const SpaceFormParams& pr, const TVec<T>& p) {
  int n = pr.dim();
  TVec<T> eta = eta_at(pr, p);
  Mat<T> g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = eta[i] * eta[j];
  for (int i = 0; i < 2 * pr.m; ++i) g(i, i) = g(i, i) + 0.25;
  return g;
}

template <class T>
Mat<T> phi_at(const SpaceFormParams& pr, const TVec<T>& p) {
  int m = pr.m;
  Mat<T> phi(pr.dim(), pr.dim());
  for (int i = 0; i < m; ++i) {
    phi(m + i, i) = T(-1.0);
    phi(i, m + i) = T(1.0);
    phi(2 * m, m + i) = p[m + i];
  }
  return phi;
}

template <class T>
StructureTensorsT<T> structure_at_t(const SpaceFormParams& pr, const TVec<T>& p) {
  return {metric_at(pr, p), phi_at(pr, p), eta_at(pr, p), xi_at(pr, p)};
}

StructureTensors structure_at(const SpaceFormParams& pr, const Point& p);

/// The adapted orthonormal frame: e_i = 2(d/dx_i + y_i d/dz), e_{m+i} = -2 d/dy_i,
/// e_{2m+1} = xi; satisfies phi e_i = e_{m+i}, phi e_{m+i} = -e_i.
template <class T>
std::vector<TVec<T>> adapted_frame_at_t(const SpaceFormParams& pr, const TVec<T>& p) {
  int m = pr.m;
  int n = pr.dim();
  std::vector<TVec<T>> frame(n, TVec<T>(n, T(0.0)));
  for (int i = 0; i < m; ++i) {
    frame[i][i] = T(2.0);
    frame[i][2 * m] = p[m + i] * 2.0;
    frame[m + i][m + i] = T(-2.0);
  }
  frame[2 * m][2 * m] = T(2.0);
  return frame;
}

std::vector<VecD> adapted_frame_at(const SpaceFormParams& pr, const Point& p);

/// Frame legs and xi as fully jet-capable vector fields.
VectorField frame_field(const SpaceFormParams& pr, int index);
VectorField xi_field(const SpaceFormParams& pr);
VectorField constant_field(const SpaceFormParams& pr, const VecD& components);

/// g(u, v) at p.
double g_inner(const SpaceFormParams& pr, const Point& p, const VecD& u, const VecD& v);
double g_norm(const SpaceFormParams& pr, const Point& p, const VecD& u);

/// grad f = g^{-1} df as coordinate components; equals the frame expansion
/// sum_i e_i(f) e_i (both routes are exercised by tests).
VecD metric_gradient(const SpaceFormParams& pr, const ScalarField& f, const Point& p,
                     const DiffConfig& cfg);
VecD metric_gradient_frame_route(const SpaceFormParams& pr, const ScalarField& f, const Point& p,
                                 const DiffConfig& cfg);

/// Exterior-derivative convention for d(eta): with_half means
/// d(eta)(X,Y) = (X eta(Y) - Y eta(X) - eta([X,Y]))/2. The model selects the
/// convention by matching g(X, phi Y) on the adapted frame.
struct DetaConvention {
  bool with_half = true;
  double residual_half = 0.0;
  double residual_nohalf = 0.0;
};

DetaConvention detect_deta_convention(const SpaceFormParams& pr, const DiffConfig& cfg);

double deta(const SpaceFormParams& pr, const VectorField& X, const VectorField& Y, const Point& p,
            bool with_half, const DiffConfig& cfg);

/// Sectional curvature of span{X, phi X} computed from the numeric curvature
/// of the realized metric; requires eta(X) ~ 0 and c = -3.
double phi_sectional_oracle(const SpaceFormParams& pr, const Point& p, const VecD& X,
                            const DiffConfig& cfg);

}  // namespace sasaki
