#include "sasaki/curvature.hpp"

#include <cmath>

namespace sasaki {

VecD curvature_numeric(ConnKind kind, const SpaceFormParams& pr, const VectorField& X,
                       const VectorField& Y, const VectorField& Z, const Point& p,
                       const DiffConfig& cfg) {
  VectorField CYZ = covariant_field(kind, pr, Y, Z, cfg);
  VectorField CXZ = covariant_field(kind, pr, X, Z, cfg);
  VecD t1 = covariant_value(kind, pr, CYZ, p, X(p), cfg);
  VecD t2 = covariant_value(kind, pr, CXZ, p, Y(p), cfg);
  VecD br = lie_bracket(X, Y, p, cfg);
  VecD t3 = covariant_value(kind, pr, Z, p, br, cfg);
  return vec_sub(vec_sub(t1, t2), t3);
}

VecD curvature_spaceform(const SpaceFormParams& pr, const VecD& X, const VecD& Y, const VecD& Z,
                         const StructureTensors& St) {
  int n = pr.dim();
  double a = -(pr.c - 1.0) / 4.0;
  double b = (pr.c + 3.0) / 4.0;
  VecD phiX = matvec(St.phi, X);
  VecD phiY = matvec(St.phi, Y);
  VecD phiZ = matvec(St.phi, Z);
  double etaX = dot(St.eta, X), etaY = dot(St.eta, Y), etaZ = dot(St.eta, Z);
  double gYZ = inner(St.g, Y, Z), gXZ = inner(St.g, X, Z);
  double g_phiX_Z = inner(St.g, phiX, Z);
  double g_phiX_Y = inner(St.g, phiX, Y);
  double g_phiY_Z = inner(St.g, phiY, Z);
  VecD r(n, 0.0);
  for (int k = 0; k < n; ++k) {
    double part = etaZ * (etaY * X[k] - etaX * Y[k]);
    part += (gYZ * etaX - gXZ * etaY) * St.xi[k];
    part += g_phiX_Z * phiY[k] + 2.0 * g_phiX_Y * phiZ[k] - g_phiY_Z * phiX[k];
    r[k] = a * part + b * (gYZ * X[k] - gXZ * Y[k]);
  }
  return r;
}

VecD tw_curvature_pointwise(const SpaceFormParams& pr, const VecD& X, const VecD& H,
                            const StructureTensors& St) {
  int n = pr.dim();
  VecD base = curvature_spaceform(pr, X, H, X, St);
  VecD phiX = matvec(St.phi, X);
  VecD phiH = matvec(St.phi, H);
  VecD phi2H = matvec(St.phi, phiH);
  double g_X_phiH = inner(St.g, X, phiH);
  double etaX = dot(St.eta, X);
  VecD r(n, 0.0);
  for (int k = 0; k < n; ++k)
    r[k] = base[k] - 3.0 * g_X_phiH * phiX[k] - etaX * etaX * phi2H[k];
  return r;
}

SpaceFormConstants spaceform_constants(const SpaceFormParams& pr) {
  SpaceFormConstants out;
  double m = pr.m, c = pr.c;
  out.k_lemma = (15.0 - 6.0 * m - c * (3.0 + 2.0 * m)) / 4.0;
  out.k_alt = (7.0 - 6.0 * m - c * (2.0 * m + 3.0)) / 4.0;
  out.l = (-(2.0 * m + 3.0) * c - 6.0 * m + 7.0) / 4.0;
  out.corollary_bound = (-6.0 * m + 7.0) / (2.0 * m + 3.0);
  out.l_minus_klemma_plus2 = out.l - (out.k_lemma - 2.0);
  return out;
}

}  // namespace sasaki
