#include "sasaki/biharmonic.hpp"

#include <cmath>
#include <limits>

namespace sasaki {

VecD rough_laplacian(ConnKind kind, const SurfaceGeometry& geom, const VectorField& S,
                     const Point& p) {
  const SpaceFormParams& pr = geom.params();
  const DiffConfig& cfg = geom.cfg();
  int want = 2 * pr.m;
  int n = pr.dim();
  VecD acc(n, 0.0);
  for (int a = 0; a < want; ++a) {
    VectorField leg = geom.frame_leg_field(a);
    VecD leg_p = leg(p);

    // inner field q -> nabla_{leg(q)} S (q)
    VectorField inner_field = VectorField::from_callables([kind, pr, S, leg, cfg](const VecD& q) {
      Point pq(q);
      return covariant_value(kind, pr, S, pq, leg.eval_d(q), cfg);
    });
    VecD outer = covariant_value(kind, pr, inner_field, p, leg_p, cfg);

    VecD amb = covariant_value(ConnKind::levi_civita, pr, leg, p, leg_p, cfg);
    VecD w = geom.tangential(p, amb);
    VecD corr = covariant_value(kind, pr, S, p, w, cfg);

    for (int k = 0; k < n; ++k) acc[k] += outer[k] - corr[k];
  }
  for (auto& x : acc) x = -x;
  return acc;
}

TraceKResult trace_tw_curvature(const SurfaceGeometry& geom, const HypersurfacePointData& data) {
  const SpaceFormParams& pr = geom.params();
  auto St = structure_at(pr, data.p);
  int n = pr.dim();
  VecD H = data.N;
  for (auto& x : H) x *= data.h;
  TraceKResult out;
  out.trace = VecD(n, 0.0);
  for (const auto& leg : data.frame) {
    VecD t = tw_curvature_pointwise(pr, leg, H, St);
    out.trace = vec_add(out.trace, t);
  }
  if (std::fabs(data.h) >= 1e-10) {
    out.k_defined = true;
    out.measured_k = inner(St.g, out.trace, data.N) / data.h;
  }
  return out;
}

VecD direct_bitension(const SurfaceGeometry& geom, const Point& p) {
  VecD lap = rough_laplacian(ConnKind::tw_sasakian, geom, geom.mean_curvature_vector(), p);
  auto data = geom.analyze_point(p);
  auto tr = trace_tw_curvature(geom, data);
  int n = geom.params().dim();
  VecD r(n, 0.0);
  for (int k = 0; k < n; ++k) r[k] = -lap[k] - tr.trace[k];
  return r;
}

BiharmonicResidual split_conditions_residual(const SurfaceGeometry& geom, const Point& p,
                                             const BiharmonicConstants& constants) {
  const SpaceFormParams& pr = geom.params();
  const DiffConfig& cfg = geom.cfg();
  auto St = structure_at(pr, p);
  auto data = geom.analyze_point(p);

  BiharmonicResidual out;
  out.p = p;
  out.h = data.h;
  out.xi_tangency = data.xi_tangency;
  out.gated = data.gated;

  out.laplacian_h = geom.surface_scalar_laplacian(geom.mean_curvature(), p);
  out.A_norm2 = frobenius_sq(data.A);
  out.grad_h = geom.surface_gradient(geom.mean_curvature(), p);

  double l = constants.l_used;
  out.normal_residual_split = std::fabs(out.laplacian_h - data.h * out.A_norm2 - l * data.h);
  out.normal_residual_combined =
      std::fabs(out.laplacian_h + data.h * out.A_norm2 + l * data.h);

  // tangent condition: A grad h + m h grad h + g(grad h, V) xi - eta(grad h) V
  VecD Agrad = covariant_value(ConnKind::levi_civita, pr, geom.normal(), p, out.grad_h, cfg);
  for (auto& x : Agrad) x = -x;
  Agrad = geom.tangential(p, Agrad);
  double gv = inner(St.g, out.grad_h, data.V);
  double etag = dot(St.eta, out.grad_h);
  int n = pr.dim();
  VecD tanvec(n, 0.0);
  for (int k = 0; k < n; ++k)
    tanvec[k] = Agrad[k] + pr.m * data.h * out.grad_h[k] + gv * St.xi[k] - etag * data.V[k];
  out.tangent_residual = std::sqrt(std::max(0.0, inner(St.g, tanvec, tanvec)));

  out.tau2 = direct_bitension(geom, p);
  out.direct_residual = std::sqrt(std::max(0.0, inner(St.g, out.tau2, out.tau2)));
  out.tau2_normal = inner(St.g, out.tau2, data.N);
  out.tau2_xi = inner(St.g, out.tau2, St.xi);
  out.tau2_v = inner(St.g, out.tau2, data.V);
  // remaining block: subtract the N, xi, V components (orthonormal when gated)
  VecD rest = out.tau2;
  for (int k = 0; k < n; ++k)
    rest[k] -= out.tau2_normal * data.N[k] + out.tau2_xi * St.xi[k] + out.tau2_v * data.V[k];
  out.tau2_d = std::sqrt(std::max(0.0, inner(St.g, rest, rest)));

  double combined_signed = out.laplacian_h + data.h * out.A_norm2 + l * data.h;
  out.dual_gap_normal = std::fabs(out.tau2_normal + combined_signed);
  return out;
}

double tw_laplacian_transfer_residual(const SurfaceGeometry& geom, const Point& p,
                                      const LaplacianTransferForm& form) {
  const SpaceFormParams& pr = geom.params();
  auto St = structure_at(pr, p);
  auto data = geom.analyze_point(p);
  VecD lap_tw = rough_laplacian(ConnKind::tw_sasakian, geom, geom.mean_curvature_vector(), p);
  VecD lap_lc = rough_laplacian(ConnKind::levi_civita, geom, geom.mean_curvature_vector(), p);
  VecD grad_h = geom.surface_gradient(geom.mean_curvature(), p);
  double gv = inner(St.g, grad_h, data.V);
  double etag = dot(St.eta, grad_h);
  int n = pr.dim();
  VecD rhs(n, 0.0);
  for (int k = 0; k < n; ++k)
    rhs[k] = lap_lc[k] + form.c_xi * gv * St.xi[k] + form.c_v * etag * data.V[k] +
             form.c_h * data.h * data.N[k];
  VecD diff = vec_sub(lap_tw, rhs);
  return std::sqrt(std::max(0.0, inner(St.g, diff, diff)));
}

double ah_xi_check(const SurfaceGeometry& geom, const HypersurfacePointData& data) {
  const SpaceFormParams& pr = geom.params();
  const DiffConfig& cfg = geom.cfg();
  auto St = structure_at(pr, data.p);
  VecD Axi = covariant_value(ConnKind::levi_civita, pr, geom.normal(), data.p, St.xi, cfg);
  for (auto& x : Axi) x = -x;
  Axi = geom.tangential(data.p, Axi);
  VecD resid = vec_add(Axi, data.V);
  return std::fabs(data.h) * std::sqrt(std::max(0.0, inner(St.g, resid, resid)));
}

CmcVerdict cmc_classifier(const SurfaceGeometry& geom,
                          const std::vector<BiharmonicResidual>& samples,
                          const BiharmonicConstants& constants, double tol) {
  CmcVerdict out;
  if (samples.empty()) {
    out.verdict = "no accepted samples";
    return out;
  }
  double sum_h = 0.0, sum_h2 = 0.0;
  for (const auto& s : samples) {
    out.max_abs_h = std::max(out.max_abs_h, std::fabs(s.h));
    sum_h += s.h;
    sum_h2 += s.h * s.h;
    out.max_residual = std::max(
        {out.max_residual, s.normal_residual_combined, s.tangent_residual, s.direct_residual});
  }
  double mean_h = sum_h / double(samples.size());
  out.stdev_h = std::sqrt(std::max(0.0, sum_h2 / double(samples.size()) - mean_h * mean_h));
  out.minimal = out.max_abs_h <= 1e-7;
  out.cmc = out.stdev_h <= tol;
  out.biharmonic_at_resolution = out.max_residual <= tol && int(samples.size()) >= 30;

  const SpaceFormParams& pr = geom.params();
  auto cf = spaceform_constants(pr);
  if (out.minimal) {
    out.verdict = "minimal (h = 0 at tested resolution): trivially TW-biharmonic";
    return out;
  }
  double worst_b = 0.0;
  for (const auto& s : samples) worst_b = std::max(worst_b, std::fabs(s.A_norm2 + constants.l_used));
  if (out.cmc) {
    out.b_norm2_plus_l = worst_b;
    out.corollary_obstructed = !(pr.c > cf.corollary_bound);
    if (out.biharmonic_at_resolution) {
      if (worst_b <= 10.0 * tol && !out.corollary_obstructed)
        out.verdict = "consistent with proper CMC case";
      else if (out.corollary_obstructed)
        out.verdict = "inconsistent: c does not exceed the CMC bound, no nonminimal CMC case can pass";
      else
        out.verdict = "inconsistent: |B|^2 + l does not vanish on CMC samples";
    } else {
      out.verdict = out.corollary_obstructed
                        ? "not TW-biharmonic at tested points (CMC; obstructed, c below the bound)"
                        : "not TW-biharmonic at tested points (CMC)";
    }
    return out;
  }
  out.verdict = "not CMC-biharmonic at tested points";
  return out;
}

double measured_tangent_factor(const SurfaceGeometry& geom,
                               const std::vector<BiharmonicResidual>& samples) {
  const SpaceFormParams& pr = geom.params();
  const DiffConfig& cfg = geom.cfg();
  double num = 0.0, den = 0.0;
  for (const auto& s : samples) {
    auto St = structure_at(pr, s.p);
    auto data = geom.analyze_point(s.p);
    double gn2 = inner(St.g, s.grad_h, s.grad_h);
    if (gn2 < 1e-10 || std::fabs(s.h) < 1e-8) continue;
    VecD tanpart = s.tau2;
    double nrm = inner(St.g, tanpart, data.N);
    for (size_t k = 0; k < tanpart.size(); ++k) tanpart[k] -= nrm * data.N[k];
    // leftover := -tau2_T/2 - A grad h - g(grad h,V) xi + eta(grad h) V ~= mu h grad h
    VecD Agrad = covariant_value(ConnKind::levi_civita, pr, geom.normal(), s.p, s.grad_h, cfg);
    for (auto& x : Agrad) x = -x;
    Agrad = geom.tangential(s.p, Agrad);
    double gv = inner(St.g, s.grad_h, data.V);
    double etag = dot(St.eta, s.grad_h);
    VecD leftover(tanpart.size(), 0.0);
    for (size_t k = 0; k < tanpart.size(); ++k)
      leftover[k] = -0.5 * tanpart[k] - Agrad[k] - gv * St.xi[k] + etag * data.V[k];
    VecD basis = s.grad_h;
    for (auto& x : basis) x *= s.h;
    num += inner(St.g, leftover, basis);
    den += inner(St.g, basis, basis);
  }
  if (den == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return num / den;
}

}  // namespace sasaki
