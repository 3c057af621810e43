#include "sasaki/pseudohopf.hpp"

#include <algorithm>
#include <cmath>

namespace sasaki {

void symmetric_eigen(const MatD& A, std::vector<double>& values, std::vector<VecD>& vectors) {
  int n = A.rows;
  MatD a = A;
  MatD v = MatD::identity(n);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off < 1e-26) break;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) {
        if (std::fabs(a(p, q)) < 1e-300) continue;
        double theta = 0.5 * (a(q, q) - a(p, p)) / a(p, q);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        double c = 1.0 / std::sqrt(t * t + 1);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
  }
  values.assign(n, 0.0);
  vectors.assign(n, VecD(n, 0.0));
  for (int i = 0; i < n; ++i) {
    values[i] = a(i, i);
    for (int k = 0; k < n; ++k) vectors[i][k] = v(k, i);
  }
  // ascending eigenvalue order keeps results deterministic
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a_, int b_) { return values[a_] < values[b_]; });
  std::vector<double> sv(n);
  std::vector<VecD> svec(n);
  for (int i = 0; i < n; ++i) {
    sv[i] = values[idx[i]];
    svec[i] = vectors[idx[i]];
  }
  values = sv;
  vectors = svec;
}

DPerpDecomposition decompose_block(const MatD& block) {
  DPerpDecomposition out;
  out.block = block;
  out.alpha = block(1, 0);
  out.beta = block(1, 1);
  double a = block(0, 0), b = 0.5 * (block(0, 1) + block(1, 0)), d = block(1, 1);
  // eigenvalues of the symmetrized block
  double tr = a + d;
  double disc = std::sqrt(std::max(0.0, 0.25 * (a - d) * (a - d) + b * b));
  double lo = 0.5 * tr - disc;
  double hi = 0.5 * tr + disc;
  out.gamma1 = lo;  // the -tan(theta) branch is the negative eigenvalue
  out.gamma2 = hi;
  if (lo < 0.0 && std::fabs(lo) > 1e-12) {
    out.theta = std::atan(-lo);
    out.in_model = out.theta > 1e-9 && out.theta < M_PI / 2.0 - 1e-9;
  } else {
    out.theta = lo >= 0.0 ? 0.0 : M_PI / 2.0;
    out.in_model = false;
  }
  double ct = std::cos(out.theta), st = std::sin(out.theta);
  out.W1 = {ct, st};
  out.W2 = {-st, ct};
  return out;
}

DPerpDecomposition decompose(const SurfaceGeometry& geom, const HypersurfacePointData& data) {
  const SpaceFormParams& pr = geom.params();
  if (!data.gated)
    throw std::invalid_argument("decompose: xi must be tangent at the sample point");
  auto St = structure_at(pr, data.p);
  const DiffConfig& cfg = geom.cfg();

  double v2 = inner(St.g, data.V, data.V);
  if (v2 < 1e-12) throw std::invalid_argument("decompose: Span{xi, V} degenerates");
  VecD Vu = data.V;
  for (auto& x : Vu) x /= std::sqrt(v2);

  auto apply_A = [&](const VecD& u) {
    VecD r = covariant_value(ConnKind::levi_civita, pr, geom.normal(), data.p, u, cfg);
    for (auto& x : r) x = -x;
    return geom.tangential(data.p, r);
  };
  VecD Axi = apply_A(St.xi);
  VecD AV = apply_A(Vu);

  MatD block(2, 2);
  block(0, 0) = inner(St.g, Axi, St.xi);
  block(0, 1) = inner(St.g, Axi, Vu);
  block(1, 0) = inner(St.g, AV, St.xi);
  block(1, 1) = inner(St.g, AV, Vu);

  // D components: remove the N, xi, V parts and measure what is left
  auto off_block = [&](VecD w) {
    double cn = inner(St.g, w, data.N);
    double cx = inner(St.g, w, St.xi);
    double cv = inner(St.g, w, Vu);
    for (size_t k = 0; k < w.size(); ++k)
      w[k] -= cn * data.N[k] + cx * St.xi[k] + cv * Vu[k];
    return std::sqrt(std::max(0.0, inner(St.g, w, w)));
  };

  DPerpDecomposition out = decompose_block(block);
  out.invariance_residual = std::max(off_block(Axi), off_block(AV));

  // lift W1, W2 to ambient components
  VecD w1(pr.dim(), 0.0), w2(pr.dim(), 0.0);
  for (int k = 0; k < pr.dim(); ++k) {
    w1[k] = out.W1[0] * St.xi[k] + out.W1[1] * Vu[k];
    w2[k] = out.W2[0] * St.xi[k] + out.W2[1] * Vu[k];
  }
  out.W1 = w1;
  out.W2 = w2;
  return out;
}

AvIdentityResult av_identity_check(const DPerpDecomposition& dec) {
  AvIdentityResult out;
  // AV = -xi + (gamma1+gamma2) V in the (xi, V) block coordinates
  double av_xi = dec.block(1, 0);
  double av_v = dec.block(1, 1);
  double gsum = dec.gamma1 + dec.gamma2;
  out.av_residual = std::hypot(av_xi + 1.0, av_v - gsum);
  double ct = std::cos(dec.theta), st = std::sin(dec.theta);
  if (st > 1e-12 && ct > 1e-12)
    out.beta_residual = std::fabs(dec.beta - std::cos(2.0 * dec.theta) / (ct * st));
  out.gamma_product_residual = std::fabs(dec.gamma1 * dec.gamma2 + 1.0);
  return out;
}

double phi_pairing_lambda_bar(double lambda, double beta, double c) {
  return (2.0 * beta * lambda + c + 3.0) / (4.0 * lambda - 2.0 * beta);
}

PhiPairingResult phi_pairing_check(const MatD& A, const MatD& phi_frame, double beta, double c,
                                   const std::vector<double>& lambdas,
                                   const std::vector<VecD>& eigvecs) {
  PhiPairingResult out;
  for (size_t i = 0; i < lambdas.size(); ++i) {
    double denom = 4.0 * lambdas[i] - 2.0 * beta;
    if (std::fabs(denom) < 1e-8) {
      ++out.pairs_skipped;
      continue;
    }
    double lbar = phi_pairing_lambda_bar(lambdas[i], beta, c);
    VecD phiX = matvec(phi_frame, eigvecs[i]);
    VecD AphiX = matvec(A, phiX);
    double resid = 0.0;
    for (size_t k = 0; k < phiX.size(); ++k) resid += (AphiX[k] - lbar * phiX[k]) * (AphiX[k] - lbar * phiX[k]);
    out.max_residual = std::max(out.max_residual, std::sqrt(resid));
    ++out.pairs_checked;
  }
  return out;
}

PhiPairingResult phi_pairing_on_surface(const SurfaceGeometry& geom,
                                        const HypersurfacePointData& data) {
  const SpaceFormParams& pr = geom.params();
  auto St = structure_at(pr, data.p);
  int d = 2 * pr.m;

  // A and phi in the adapted frame; the last two legs span {xi, V} when gated
  MatD phi_frame(d, d);
  for (int a = 0; a < d; ++a) {
    VecD phiu = matvec(St.phi, data.frame[a]);
    for (int b = 0; b < d; ++b) phi_frame(a, b) = inner(St.g, data.frame[b], phiu);
  }
  // note: column-action convention, (phi u_a) = sum_b phi_frame(a,b) u_b;
  // rebuild as matrix acting on coordinate columns in frame space
  MatD phi_cols(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) phi_cols(b, a) = phi_frame(a, b);

  double beta = data.gated ? data.A(d - 1, d - 1) : 0.0;

  std::vector<double> values;
  std::vector<VecD> vectors;
  symmetric_eigen(data.A, values, vectors);

  PhiPairingResult out;
  std::vector<double> lambdas;
  std::vector<VecD> dvecs;
  for (size_t i = 0; i < values.size(); ++i) {
    // D-purity: no component on the last two legs (xi, V)
    double imp = 0.0;
    if (d >= 2) imp = std::hypot(vectors[i][d - 2], vectors[i][d - 1]);
    if (imp > 1e-6) continue;
    lambdas.push_back(values[i]);
    dvecs.push_back(vectors[i]);
  }
  return phi_pairing_check(data.A, phi_cols, beta, pr.c, lambdas, dvecs);
}

double codazzi_residual(const SurfaceGeometry& geom, const VectorField& X, const VectorField& Y,
                        const VectorField& Z, const Point& p) {
  const SpaceFormParams& pr = geom.params();
  const DiffConfig& cfg = geom.cfg();
  auto St = structure_at(pr, p);

  // A W as an ambient field along M for a tangent field W
  auto A_of = [&](const VectorField& W) {
    VectorField N = geom.normal();
    SurfaceGeometry const* g = &geom;
    return VectorField::from_callables([pr, cfg, N, W, g](const VecD& q) {
      Point pq(q);
      VecD r = covariant_value(ConnKind::levi_civita, pr, N, pq, W.eval_d(q), cfg);
      for (auto& x : r) x = -x;
      return g->tangential(pq, r);
    });
  };

  auto nabla_A = [&](const VectorField& U, const VectorField& W) {
    // (nabla_U A) W = nabla_U (A W) - A (nabla_U W), intrinsic on M
    VecD t1 = geom.intrinsic_covariant(U, A_of(W), p);
    VecD nw = geom.intrinsic_covariant(U, W, p);
    VecD t2 = covariant_value(ConnKind::levi_civita, pr, geom.normal(), p, nw, cfg);
    for (auto& x : t2) x = -x;
    t2 = geom.tangential(p, t2);
    return vec_sub(t1, t2);
  };

  VecD lhs = vec_sub(nabla_A(X, Y), nabla_A(Y, X));
  VecD zv = Z(p);
  double left = inner(St.g, lhs, zv);

  VecD N = geom.normal()(p);
  VecD RbarN = curvature_spaceform(pr, X(p), Y(p), N, St);
  double right = -inner(St.g, RbarN, zv);

  return std::fabs(left - right);
}

PropositionSampleVerdict proposition_predicate(double h, const std::string& grad_class,
                                               double biharmonic_residual, double gamma_sum,
                                               double grad_norm, int m, double tol) {
  PropositionSampleVerdict v;
  v.h = h;
  v.grad_class = grad_class;
  v.biharmonic = biharmonic_residual <= tol;
  if (!v.biharmonic) {
    v.note = "not biharmonic at this sample; dichotomies not applicable";
    return v;
  }
  if (grad_class == "dperp" || grad_class == "v-line") {
    bool minimal = std::fabs(h) <= tol;
    bool cmc_value = std::fabs(h + gamma_sum / double(m)) <= tol;
    v.consistent = minimal || cmc_value;
    v.note = minimal ? "minimal branch" : (cmc_value ? "|h| = -(gamma1+gamma2)/m branch" : "");
    if (!v.consistent) v.note = "violates the D-perp dichotomy";
  } else if (grad_class == "xi-line") {
    v.consistent = grad_norm <= tol;
    v.note = v.consistent ? "CMC conclusion holds" : "violates the CMC conclusion";
  } else {
    v.note = "grad class " + grad_class + ": no dichotomy asserted";
  }
  return v;
}

PropositionReport proposition_checks(const SurfaceGeometry& geom,
                                     const std::vector<BiharmonicResidual>& samples,
                                     const BiharmonicConstants& constants, double tol) {
  (void)constants;
  const SpaceFormParams& pr = geom.params();
  PropositionReport rep;
  for (const auto& s : samples) {
    auto St = structure_at(pr, s.p);
    auto data = geom.analyze_point(s.p);

    double gn = std::sqrt(std::max(0.0, inner(St.g, s.grad_h, s.grad_h)));
    double cx = 0.0, cv = 0.0, cd = 0.0;
    std::string cls = "zero";
    if (gn > tol) {
      cx = std::fabs(dot(St.eta, s.grad_h)) / gn;
      double v2 = inner(St.g, data.V, data.V);
      cv = v2 > 1e-12 ? std::fabs(inner(St.g, s.grad_h, data.V)) / (gn * std::sqrt(v2)) : 0.0;
      cd = std::sqrt(std::max(0.0, 1.0 - cx * cx - cv * cv));
      if (cx > 1.0 - 1e-6)
        cls = "xi-line";
      else if (cv > 1.0 - 1e-6)
        cls = "v-line";
      else if (cx * cx + cv * cv < 1e-12)
        cls = "d";
      else if (cd < 1e-6)
        cls = "dperp";
      else
        cls = "mixed";
    }

    double gamma_sum = 0.0;
    if (data.gated) {
      auto dec = decompose(geom, data);
      gamma_sum = dec.gamma1 + dec.gamma2;
    }
    double resid = std::max({s.normal_residual_combined, s.tangent_residual, s.direct_residual});
    auto v = proposition_predicate(s.h, cls, resid, gamma_sum, gn, pr.m, tol);
    v.p = s.p;
    if (!v.consistent) ++rep.inconsistencies;
    rep.rows.push_back(v);
  }
  return rep;
}

}  // namespace sasaki
