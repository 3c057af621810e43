#pragma once

#include <optional>
#include <vector>

#include "sasaki/connection.hpp"
#include "sasaki/expr.hpp"
#include "sasaki/fields.hpp"
#include "sasaki/model.hpp"

namespace sasaki {

/// Level-set hypersurface M = f^{-1}(level) of the chart.
struct LevelSurface {
  SpaceFormParams params;
  dsl::Expr f;
  double level = 0.0;
  double orientation = 1.0;  // sign of the unit normal
  ScalarField field;         // f as a jet-capable field
};

LevelSurface make_surface(const SpaceFormParams& pr, const dsl::Expr& f, double level,
                          double orientation = 1.0);

/// Per-point geometric data of the hypersurface in its adapted tangent frame.
/// When xi is tangent the last two frame legs are xi and V = -phi N, so the
/// phi-invariant block of A and its complement are directly readable.
struct HypersurfacePointData {
  Point p;
  VecD N;                    // unit normal (coordinate components)
  VecD V;                    // -phi N, tangent
  double xi_tangency = 0.0;  // |g(xi, N)|
  bool gated = false;        // xi tangent within tolerance
  std::vector<VecD> frame;   // 2m orthonormal tangent legs
  MatD A;                    // shape operator in that frame
  double h = 0.0;            // signed mean curvature trace(A)/(2m)
};

/// Bundles a surface with its derived ambient fields. The normal and V extend
/// off M through the level-set foliation (every nearby level set is treated
/// as a hypersurface), which is what makes mean-curvature derivatives
/// well-defined without chart construction.
class SurfaceGeometry {
 public:
  SurfaceGeometry(LevelSurface s, DiffConfig cfg, double gate_tol = 1e-8);

  const LevelSurface& surface() const { return s_; }
  const SpaceFormParams& params() const { return s_.params; }
  const DiffConfig& cfg() const { return cfg_; }
  double gate_tol() const { return gate_tol_; }

  const VectorField& normal() const { return normal_; }       // jet-capable
  const VectorField& v_field() const { return v_; }           // jet-capable
  const ScalarField& mean_curvature() const { return h_; }    // derived, doubles only
  const VectorField& mean_curvature_vector() const { return H_; }

  /// a-th leg of the adapted tangent frame as an ambient field.
  VectorField frame_leg_field(int a) const;

  std::vector<VecD> tangent_frame(const Point& p) const;
  HypersurfacePointData analyze_point(const Point& p) const;

  /// Newton projection along the frozen gradient line through q.
  std::optional<Point> project(const Point& q) const;

  /// Tangential part of the ambient Levi-Civita derivative.
  VecD intrinsic_covariant(const VectorField& X, const VectorField& Y, const Point& p) const;
  VecD tangential(const Point& p, const VecD& w) const;

  /// Intrinsic gradient of a surface-borne scalar (tangential part of the
  /// ambient metric gradient).
  VecD surface_gradient(const ScalarField& u, const Point& p) const;

  /// Laplace-Beltrami with the sign convention Delta = -trace(nabla^2):
  /// Delta u = -sum_a [ e_a(e_a u) - (nabla_{e_a} e_a) u ].
  double surface_scalar_laplacian(const ScalarField& u, const Point& p) const;

  /// Frame connection coefficients w[k](i,j) = g(nabla_{e_k} e_i, e_j) of the
  /// induced connection in the adapted frame.
  std::vector<MatD> frame_connection_coeffs(const Point& p) const;

 private:
  LevelSurface s_;
  DiffConfig cfg_;
  double gate_tol_;
  VectorField normal_, v_, H_;
  ScalarField h_;
};

/// Seeded box sampling followed by projection; rejected samples are counted,
/// never fabricated.
struct SurfaceSample {
  std::vector<Point> accepted;
  int rejected = 0;
};

SurfaceSample sample_surface(const SurfaceGeometry& geom, int count, uint64_t seed,
                             double box_halfwidth = 1.5);

}  // namespace sasaki
