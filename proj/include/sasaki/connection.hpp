#pragma once

#include <vector>

#include "sasaki/fields.hpp"
#include "sasaki/model.hpp"

namespace sasaki {

enum class ConnKind { levi_civita, tw_contact, tw_sasakian };

/// Christoffel symbols Gamma^k_{ij} of the model metric at a point. The metric
/// components are polynomial, so the first derivatives feeding the symbols are
/// taken with jets and the result is exact to roundoff. Works at jet-valued
/// points through the nested scalar type.
template <class T>
struct Christoffels {
  int n = 0;
  std::vector<T> g;  // flattened [k][i][j]
  Christoffels() = default;
  explicit Christoffels(int n_) : n(n_), g(size_t(n_) * n_ * n_, T(0.0)) {}
  T& operator()(int k, int i, int j) { return g[(size_t(k) * n + i) * n + j]; }
  const T& operator()(int k, int i, int j) const { return g[(size_t(k) * n + i) * n + j]; }
};

template <class T>
Christoffels<T> christoffel(const SpaceFormParams& pr, const TVec<T>& p) {
  int n = pr.dim();
  std::vector<Mat<T>> dg(n);
  for (int a = 0; a < n; ++a) {
    TVec<Jet<T>> q(n);
    for (int b = 0; b < n; ++b) q[b] = Jet<T>(p[b], T(b == a ? 1.0 : 0.0));
    Mat<Jet<T>> gj = metric_at(pr, q);
    dg[a] = Mat<T>(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) dg[a](i, j) = gj(i, j).d1;
  }
  Mat<T> ginv = inverse(metric_at(pr, p));
  Christoffels<T> G(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        T acc(0.0);
        for (int l = 0; l < n; ++l)
          acc = acc + ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        G(k, i, j) = acc * 0.5;
      }
  return G;
}

/// Covariant derivative along a frozen direction vector at p (the connection
/// is tensorial in that slot): (nabla_v Y)^k = v(Y^k) + Gamma^k_{ij} v^i Y^j,
/// plus the Tanaka-Webster correction terms for the TW kinds.
VecD covariant_value(ConnKind kind, const SpaceFormParams& pr, const VectorField& Y,
                     const Point& p, const VecD& v, const DiffConfig& cfg);

/// Jet-channel variant; requires Y's nested jet channel.
TVec<J> covariant_value_j(ConnKind kind, const SpaceFormParams& pr, const VectorField& Y,
                          const TVec<J>& p, const TVec<J>& v);

/// nabla_X Y at p for vector fields.
VecD covariant(ConnKind kind, const SpaceFormParams& pr, const VectorField& X,
               const VectorField& Y, const Point& p, const DiffConfig& cfg);

inline VecD levi_civita(const SpaceFormParams& pr, const VectorField& X, const VectorField& Y,
                        const Point& p, const DiffConfig& cfg) {
  return covariant(ConnKind::levi_civita, pr, X, Y, p, cfg);
}
inline VecD tanaka_webster_contact(const SpaceFormParams& pr, const VectorField& X,
                                   const VectorField& Y, const Point& p, const DiffConfig& cfg) {
  return covariant(ConnKind::tw_contact, pr, X, Y, p, cfg);
}
inline VecD tanaka_webster_sasakian(const SpaceFormParams& pr, const VectorField& X,
                                    const VectorField& Y, const Point& p, const DiffConfig& cfg) {
  return covariant(ConnKind::tw_sasakian, pr, X, Y, p, cfg);
}

/// q -> (nabla_X Y)(q) as a vector field; carries a jet channel when X and Y
/// carry nested jet channels, which is what nested curvature commutators need.
VectorField covariant_field(ConnKind kind, const SpaceFormParams& pr, const VectorField& X,
                            const VectorField& Y, const DiffConfig& cfg);

/// max over the adapted frame legs X of |nabla_X xi + phi X|_g.
double kcontact_check(const SpaceFormParams& pr, const Point& p, const DiffConfig& cfg);

/// max over frame pairs (X,Y) of |(nabla_X phi)Y - g(X,Y) xi + eta(Y) X|_g.
double sasakian_check(const SpaceFormParams& pr, const Point& p, const DiffConfig& cfg);

/// Defining-property residuals of the Tanaka-Webster connection at p:
/// parallel metric, parallel eta, parallel xi, torsion = 2 d(eta) (x) xi,
/// and the agreement of the contact-form and Sasakian-form constructions.
struct TwChecks {
  double parallel_g = 0.0;
  double parallel_eta = 0.0;
  double parallel_xi = 0.0;
  double torsion = 0.0;
  double forms_agree = 0.0;
  double torsion_xi_phi = 0.0;  // |T(xi, phi X) + phi T(xi, X)|, reported only
};

TwChecks tw_checks(const SpaceFormParams& pr, const Point& p, bool deta_half,
                   const DiffConfig& cfg);

/// Levi-Civita metricity and torsion-freeness residuals on given fields.
double metricity_residual(const SpaceFormParams& pr, const VectorField& X, const VectorField& Y,
                          const VectorField& Z, const Point& p, const DiffConfig& cfg);
double torsion_free_residual(const SpaceFormParams& pr, const VectorField& X,
                             const VectorField& Y, const Point& p, const DiffConfig& cfg);

}  // namespace sasaki
