#pragma once

#include <string>
#include <vector>

#include "sasaki/curvature.hpp"
#include "sasaki/hypersurface.hpp"

namespace sasaki {

/// Bookkeeping constants fixed by measurement before residuals are asserted:
/// which closed-form branch the curvature-trace constant k follows and the
/// constant l = k - 2 entering the normal equation.
struct BiharmonicConstants {
  std::string k_branch = "lemma";  // "lemma" or "alt"
  double measured_k = 6.0;
  double k_used = 6.0;
  double l_used = 4.0;  // k_used - 2
};

/// Residual bundle of the split biharmonicity conditions at one point.
/// normal_residual_split quotes the split form literally
/// (Delta_M h - h|A|^2 - l h); normal_residual_combined carries the sign
/// bookkeeping the direct bitension actually matches,
/// g(tau2*, N) = -(Delta_M h + h|A|^2 + l h), as fixed by measurement.
/// Both are reported; the combined one is the acceptance-gated quantity.
struct BiharmonicResidual {
  Point p;
  double h = 0.0;
  double xi_tangency = 0.0;
  bool gated = false;

  double laplacian_h = 0.0;   // Delta_M h, sign convention Delta = -trace nabla^2
  double A_norm2 = 0.0;       // |A|_F^2
  VecD grad_h;                // intrinsic gradient of h (tangent vector)

  double normal_residual_split = 0.0;
  double normal_residual_combined = 0.0;
  double tangent_residual = 0.0;

  VecD tau2;                  // direct bitension vector
  double direct_residual = 0.0;   // |tau2|_g
  double tau2_normal = 0.0;       // g(tau2, N)
  double tau2_xi = 0.0;
  double tau2_v = 0.0;
  double tau2_d = 0.0;            // norm of the phi-invariant block component

  double dual_gap_normal = 0.0;   // |g(tau2,N) + normal_residual_combined-signed|
};

/// The rough Laplacian -sum_a (nabla_{e_a} nabla_{e_a} S - nabla_{w_a} S) of an
/// ambient field S along M, with w_a the intrinsic derivative of the frame leg.
VecD rough_laplacian(ConnKind kind, const SurfaceGeometry& geom, const VectorField& S,
                     const Point& p);

/// tau2* = -Delta* H - sum_a R*(e_a, H) e_a over the adapted tangent frame.
VecD direct_bitension(const SurfaceGeometry& geom, const Point& p);

/// Evaluates the split conditions and the direct bitension at p.
BiharmonicResidual split_conditions_residual(const SurfaceGeometry& geom, const Point& p,
                                             const BiharmonicConstants& constants);

/// Curvature-trace diagnostic: sum_a R*(e_a, H)e_a and the measured constant
/// g(trace, N)/h (meaningful when |h| is not tiny and xi is tangent).
struct TraceKResult {
  VecD trace;
  bool k_defined = false;
  double measured_k = 0.0;
};
TraceKResult trace_tw_curvature(const SurfaceGeometry& geom, const HypersurfacePointData& data);

/// Two-sided residual of the transfer identity between the Tanaka-Webster and
/// Levi-Civita rough Laplacians of H. The eta(grad h) and final-H coefficients
/// carry stated conventions: the quoted closed form uses
///   Delta* H = Delta H + c_xi g(grad h,V) xi + c_v eta(grad h) V + c_h H.
struct LaplacianTransferForm {
  double c_xi = 2.0;
  double c_v = -2.0;  // unmeasurable on xi-invariant surfaces (the term vanishes)
  double c_h = -2.0;  // confirmed by measurement
};
double tw_laplacian_transfer_residual(const SurfaceGeometry& geom, const Point& p,
                                      const LaplacianTransferForm& form);

/// |h| * |A xi + V|_g, the h-scaled normal-shape identity on gated surfaces.
double ah_xi_check(const SurfaceGeometry& geom, const HypersurfacePointData& data);

/// Classifies a sampled surface: minimal, proper CMC candidate (checks
/// |B|^2 + l = 0 and the c-bound obstruction), or not CMC-biharmonic.
struct CmcVerdict {
  std::string verdict;
  bool minimal = false;
  bool cmc = false;
  bool biharmonic_at_resolution = false;
  double max_abs_h = 0.0;
  double stdev_h = 0.0;
  double max_residual = 0.0;
  double b_norm2_plus_l = 0.0;  // measured |B|^2 + l on CMC samples
  bool corollary_obstructed = false;
};
CmcVerdict cmc_classifier(const SurfaceGeometry& geom,
                          const std::vector<BiharmonicResidual>& samples,
                          const BiharmonicConstants& constants, double tol);

/// Least-squares estimate of the coefficient mu in the tangent part of the
/// direct bitension, tau2_T ~= -2 (A grad h + mu h grad h + g(grad h,V) xi),
/// across samples with grad h != 0. The split form states mu = m.
double measured_tangent_factor(const SurfaceGeometry& geom,
                               const std::vector<BiharmonicResidual>& samples);

}  // namespace sasaki
