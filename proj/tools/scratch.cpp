// Exploratory driver used while pinning conventions; not installed.
#include <cstdio>

#include "sasaki/biharmonic.hpp"
#include "sasaki/curvature.hpp"
#include "sasaki/hypersurface.hpp"

using namespace sasaki;

static void probe_surface(const char* label, const char* expr, double level) {
  SpaceFormParams pr{1, -3.0};
  DiffConfig cfg;
  dsl::Expr f = dsl::parse(expr, 1);
  SurfaceGeometry geom(make_surface(pr, f, level), cfg);
  auto sample = sample_surface(geom, 8, 20240801u);
  printf("\n== %s (accepted %zu rejected %d) ==\n", label, sample.accepted.size(),
         sample.rejected);
  BiharmonicConstants bc;
  std::vector<BiharmonicResidual> rs;
  for (const auto& p : sample.accepted) {
    auto St = structure_at(pr, p);
    auto data = geom.analyze_point(p);
    if (!data.gated) continue;
    // transfer identity: measure coefficients of xi, V, N in (Delta* - Delta)H
    VecD lap_tw = rough_laplacian(ConnKind::tw_sasakian, geom, geom.mean_curvature_vector(), p);
    VecD lap_lc = rough_laplacian(ConnKind::levi_civita, geom, geom.mean_curvature_vector(), p);
    VecD D = vec_sub(lap_tw, lap_lc);
    VecD grad_h = geom.surface_gradient(geom.mean_curvature(), p);
    double gv = inner(St.g, grad_h, data.V);
    double etag = dot(St.eta, grad_h);
    double cN = inner(St.g, D, data.N) / data.h;
    double cXi = inner(St.g, D, St.xi);
    double cV = inner(St.g, D, data.V);
    auto r = split_conditions_residual(geom, p, bc);
    rs.push_back(r);
    printf("h=% .5f |gradh|=%.4f  D.N/h=% .6f  D.xi=% .6f (2g(gradh,V)=% .6f)  D.V=% .6f "
           "(etag=% .2e)\n",
           data.h, std::sqrt(inner(St.g, grad_h, grad_h)), cN, cXi, 2.0 * gv, cV, etag);
    printf("   tau2.N=% .6f  combined=% .6f split=% .6f  dualgap=%.2e  tau2.xi=% .2e "
           "tau2.V=% .2e tau2.D=%.2e\n",
           r.tau2_normal, r.normal_residual_combined, r.normal_residual_split, r.dual_gap_normal,
           r.tau2_xi, r.tau2_v, r.tau2_d);
    printf("   transfer resid (c_h=-3): %.3e   (c_h=-2): %.3e\n",
           tw_laplacian_transfer_residual(geom, p, {2.0, 2.0, -3.0}),
           tw_laplacian_transfer_residual(geom, p, {2.0, 2.0, -2.0}));
  }
  double mu = measured_tangent_factor(geom, rs);
  printf("measured tangent factor mu = %.6f (m = %d)\n", mu, pr.m);
}

int main() {
  SpaceFormParams pr{1, -3.0};
  DiffConfig cfg;
  Point p(VecD{0.3, -0.7, 1.1});

  printf("== identities at a generic point ==\n");
  printf("kcontact   %.3e\n", kcontact_check(pr, p, cfg));
  printf("sasakian   %.3e\n", sasakian_check(pr, p, cfg));
  auto conv = detect_deta_convention(pr, cfg);
  printf("deta half=%d  (resid half %.3e, nohalf %.3e)\n", int(conv.with_half),
         conv.residual_half, conv.residual_nohalf);
  auto tw = tw_checks(pr, p, conv.with_half, cfg);
  printf("tw: g %.3e eta %.3e xi %.3e tors %.3e agree %.3e xiphi %.3e\n", tw.parallel_g,
         tw.parallel_eta, tw.parallel_xi, tw.torsion, tw.forms_agree, tw.torsion_xi_phi);

  // curvature closed form vs numeric
  auto St = structure_at(pr, p);
  auto frame = adapted_frame_at(pr, p);
  VecD Rnum = curvature_numeric(ConnKind::levi_civita, pr, frame_field(pr, 0), frame_field(pr, 1),
                                frame_field(pr, 1), p, cfg);
  VecD Rcf = curvature_spaceform(pr, frame[0], frame[1], frame[1], St);
  printf("R(e1,e2)e2 num vs cf: ");
  for (int k = 0; k < 3; ++k) printf("%.6f/%.6f ", Rnum[k], Rcf[k]);
  printf("\nK(e1,e2) = %.9f\n", inner(St.g, Rnum, frame[0]));
  printf("phi-sectional: %.9f\n", phi_sectional_oracle(pr, p, frame[0], cfg));

  // TW curvature pointwise vs numeric commutator with a synthetic H along a
  // gated surface normal
  {
    dsl::Expr f = dsl::parse("x^2 + y^2", 1);
    SurfaceGeometry geom(make_surface(pr, f, 1.0), cfg);
    Point q0(VecD{1.4, 0.2, 0.4});
    auto pp = geom.project(q0);
    if (pp) {
      auto data = geom.analyze_point(*pp);
      printf("\n== gated cylinder x^2+y^2=1 at projected point ==\n");
      printf("xi_tangency %.3e gated %d h %.9f\n", data.xi_tangency, int(data.gated), data.h);
      auto St2 = structure_at(pr, *pp);
      VecD H = data.N;
      for (auto& x : H) x *= data.h;
      // numeric R* vs pointwise closed form, X = first frame leg
      VecD Xv = data.frame[0];
      VectorField Xf = constant_field(pr, Xv);
      VectorField Hf = geom.mean_curvature_vector();
      VecD Rtw_num =
          curvature_numeric(ConnKind::tw_sasakian, pr, Xf, Hf, Xf, *pp, cfg);
      VecD Rtw_cf = tw_curvature_pointwise(pr, Xv, H, St2);
      printf("R*(X,H)X num vs cf: ");
      for (int k = 0; k < 3; ++k) printf("% .6f/% .6f ", Rtw_num[k], Rtw_cf[k]);
      printf("\n");
      // frozen-H comparison too (H constant field)
      VectorField Hc = constant_field(pr, H);
      VecD Rtw_numc = curvature_numeric(ConnKind::tw_sasakian, pr, Xf, Hc, Xf, *pp, cfg);
      printf("R*(X,Hc)X num: ");
      for (int k = 0; k < 3; ++k) printf("% .6f ", Rtw_numc[k]);
      printf("\n");
      // k measurement
      VecD trace(3, 0.0);
      for (auto& leg : data.frame) {
        VecD t = tw_curvature_pointwise(pr, leg, H, St2);
        trace = vec_add(trace, t);
      }
      double k_meas = inner(St2.g, trace, data.N) / data.h;
      printf("measured k = %.9f\n", k_meas);
    }
  }

  probe_surface("gated paraboloid-ish x^2+2y^2", "x^2 + 2*y^2", 1.0);
  probe_surface("gated x^2+y^2 cylinder (CMC)", "x^2 + y^2", 1.0);
  probe_surface("gated x + y^3", "x + y^3", 0.5);
  return 0;
}
