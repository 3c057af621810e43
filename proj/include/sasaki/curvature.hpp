#pragma once

#include "sasaki/connection.hpp"
#include "sasaki/fields.hpp"
#include "sasaki/model.hpp"

namespace sasaki {

/// R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_{[X,Y]} Z evaluated
/// by nested covariant differentiation of field-valued intermediates.
VecD curvature_numeric(ConnKind kind, const SpaceFormParams& pr, const VectorField& X,
                       const VectorField& Y, const VectorField& Z, const Point& p,
                       const DiffConfig& cfg);

/// Closed-form curvature of the space form for any c: the (c-1)/4, (c+3)/4
/// expansion applied to plain vectors through the structure tensors.
VecD curvature_spaceform(const SpaceFormParams& pr, const VecD& X, const VecD& Y, const VecD& Z,
                         const StructureTensors& St);

/// Closed-form Tanaka-Webster curvature slot R*(X,H)X for H normal to the
/// hypersurface under study: the ambient closed form plus the two correction
/// terms -3 g(X, phi H) phi X - eta(X)^2 phi^2 H.
VecD tw_curvature_pointwise(const SpaceFormParams& pr, const VecD& X, const VecD& H,
                            const StructureTensors& St);

/// Curvature-trace constants: the two closed-form candidates for the
/// coefficient k in trace R*(., H)(.) = k H, the theorem constant l, and the
/// lower bound on c from the CMC obstruction.
struct SpaceFormConstants {
  double k_lemma = 0.0;       // (15 - 6m - c(3 + 2m))/4
  double k_alt = 0.0;         // (7 - 6m - c(2m + 3))/4
  double l = 0.0;             // (-(2m+3)c - 6m + 7)/4
  double corollary_bound = 0.0;  // (-6m + 7)/(2m + 3)
  double l_minus_klemma_plus2 = 0.0;  // consistency: l - (k_lemma - 2)
};

SpaceFormConstants spaceform_constants(const SpaceFormParams& pr);

}  // namespace sasaki
