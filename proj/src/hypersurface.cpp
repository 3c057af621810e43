#include "sasaki/hypersurface.hpp"

#include <cmath>
#include <random>

namespace sasaki {

LevelSurface make_surface(const SpaceFormParams& pr, const dsl::Expr& f, double level,
                          double orientation) {
  if (f.m() != pr.m) throw std::invalid_argument("expression m does not match space form m");
  LevelSurface s;
  s.params = pr;
  s.f = f;
  s.level = level;
  s.orientation = orientation;
  s.field = field_from_expr(f);
  return s;
}

namespace {

// grad f / |grad f|_g with the orientation sign, generic over the scalar type.
// Instantiated at double (uses f's first jets) and at J (uses nested jets).
template <class T>
TVec<T> normal_impl(const LevelSurface& s, const TVec<T>& q) {
  int n = s.params.dim();
  TVec<T> df(n, T(0.0));
  for (int a = 0; a < n; ++a) {
    TVec<Jet<T>> jq(n);
    for (int b = 0; b < n; ++b) jq[b] = Jet<T>(q[b], T(b == a ? 1.0 : 0.0));
    df[a] = s.f.eval<Jet<T>>(jq).d1;
  }
  Mat<T> ginv = inverse(metric_at(s.params, q));
  TVec<T> grad = matvec(ginv, df);
  T norm2 = dot(df, grad);  // g(grad, grad) = df(grad)
  using std::sqrt;
  T nrm = sqrt(norm2);
  TVec<T> r(n, T(0.0));
  for (int k = 0; k < n; ++k) r[k] = grad[k] * s.orientation / nrm;
  return r;
}

template <class T>
TVec<T> v_impl(const LevelSurface& s, const TVec<T>& q) {
  TVec<T> N = normal_impl(s, q);
  Mat<T> phi = phi_at(s.params, q);
  TVec<T> r = matvec(phi, N);
  for (auto& x : r) x = -x;
  return r;
}

}  // namespace

SurfaceGeometry::SurfaceGeometry(LevelSurface s, DiffConfig cfg, double gate_tol)
    : s_(std::move(s)), cfg_(cfg), gate_tol_(gate_tol) {
  LevelSurface surf = s_;
  normal_ = VectorField::from_callables(
      [surf](const VecD& q) { return normal_impl<double>(surf, q); },
      [surf](const TVec<J>& q) { return normal_impl<J>(surf, q); });
  v_ = VectorField::from_callables([surf](const VecD& q) { return v_impl<double>(surf, q); },
                                   [surf](const TVec<J>& q) { return v_impl<J>(surf, q); });

  // trace A = -div_g N, taken over the global adapted frame; smooth in q and
  // free of any frame construction, so finite differences of h are clean.
  VectorField N = normal_;
  SpaceFormParams pr = s_.params;
  DiffConfig jcfg = cfg_;
  h_ = ScalarField::from_callables([pr, N, jcfg](const VecD& q) {
    Point p(q);
    auto St = structure_at(pr, p);
    auto frame = adapted_frame_at(pr, p);
    double acc = 0.0;
    for (const auto& e : frame) {
      VecD dN = covariant_value(ConnKind::levi_civita, pr, N, p, e, jcfg);
      acc += inner(St.g, dN, e);
    }
    return -acc / (2.0 * pr.m);
  });

  ScalarField h = h_;
  H_ = VectorField::from_callables([h, N](const VecD& q) {
    double hv = h.eval_d(q);
    VecD nv = N.eval_d(q);
    for (auto& x : nv) x *= hv;
    return nv;
  });
}

std::optional<Point> SurfaceGeometry::project(const Point& q) const {
  const SpaceFormParams& pr = s_.params;
  VecD dir;
  try {
    dir = metric_gradient(pr, s_.field, q, cfg_);
  } catch (const dsl::EvalError&) {
    return std::nullopt;
  }
  double nrm = g_norm(pr, q, dir);
  if (!(nrm > 1e-8)) return std::nullopt;

  double t = 0.0;
  int n = pr.dim();
  for (int it = 0; it < 50; ++it) {
    TVec<J> line(n);
    for (int k = 0; k < n; ++k) line[k] = J(q.c[k] + t * dir[k], dir[k]);
    J val;
    try {
      val = s_.field.eval_j(line);
    } catch (const dsl::EvalError&) {
      return std::nullopt;
    }
    double r = val.v - s_.level;
    if (std::fabs(r) <= 1e-12) break;
    if (std::fabs(val.d1) < 1e-14) return std::nullopt;
    t -= r / val.d1;
    if (std::fabs(t) > 10.0) return std::nullopt;
  }
  VecD pc(n);
  for (int k = 0; k < n; ++k) pc[k] = q.c[k] + t * dir[k];
  Point p(pc);
  double resid;
  try {
    resid = std::fabs(s_.field(p) - s_.level);
  } catch (const dsl::EvalError&) {
    return std::nullopt;
  }
  if (resid > 1e-10) return std::nullopt;
  return p;
}

namespace {

std::vector<VecD> build_frame(const SpaceFormParams& pr, const StructureTensors& St, const VecD& N,
                              const VecD& V, double gate_tol) {
  double xi_t = std::fabs(inner(St.g, St.xi, N));
  bool gated = xi_t <= gate_tol;

  std::vector<VecD> against;  // already-fixed g-orthonormal directions, N first
  against.push_back(N);
  std::vector<VecD> legs;

  auto try_add = [&](const VecD& seed, std::vector<VecD>& dst) {
    VecD w = seed;
    for (const auto& u : against) {
      double c = inner(St.g, w, u);
      for (size_t k = 0; k < w.size(); ++k) w[k] -= c * u[k];
    }
    double n2 = inner(St.g, w, w);
    if (n2 < 1e-12) return false;
    double inv = 1.0 / std::sqrt(n2);
    for (auto& x : w) x *= inv;
    dst.push_back(w);
    against.push_back(w);
    return true;
  };

  int n = pr.dim();
  int want = 2 * pr.m;
  if (gated) {
    // orthonormalize xi and V first, keep them as the LAST two legs
    std::vector<VecD> tail;
    try_add(St.xi, tail);
    try_add(V, tail);
    std::vector<VecD> dlegs;
    for (int a = 0; a < n && int(dlegs.size()) + int(tail.size()) < want; ++a) {
      VecD axis(n, 0.0);
      axis[a] = 1.0;
      try_add(axis, dlegs);
    }
    legs = dlegs;
    for (auto& u : tail) legs.push_back(u);
  } else {
    double v2 = inner(St.g, V, V);
    if (v2 > 1e-12) try_add(V, legs);
    for (int a = 0; a < n && int(legs.size()) < want; ++a) {
      VecD axis(n, 0.0);
      axis[a] = 1.0;
      try_add(axis, legs);
    }
  }
  if (int(legs.size()) != want)
    throw std::runtime_error("tangent_frame: rank deficiency while building the frame");
  return legs;
}

}  // namespace

std::vector<VecD> SurfaceGeometry::tangent_frame(const Point& p) const {
  auto St = structure_at(s_.params, p);
  return build_frame(s_.params, St, normal_(p), v_(p), gate_tol_);
}

VectorField SurfaceGeometry::frame_leg_field(int a) const {
  SpaceFormParams pr = s_.params;
  VectorField N = normal_;
  VectorField V = v_;
  double gate = gate_tol_;
  return VectorField::from_callables([pr, N, V, gate, a](const VecD& q) {
    Point p(q);
    auto St = structure_at(pr, p);
    return build_frame(pr, St, N.eval_d(q), V.eval_d(q), gate)[a];
  });
}

HypersurfacePointData SurfaceGeometry::analyze_point(const Point& p) const {
  const SpaceFormParams& pr = s_.params;
  auto St = structure_at(pr, p);
  HypersurfacePointData out;
  out.p = p;
  out.N = normal_(p);
  out.V = v_(p);
  out.xi_tangency = std::fabs(inner(St.g, St.xi, out.N));
  out.gated = out.xi_tangency <= gate_tol_;
  out.frame = tangent_frame(p);
  int d = int(out.frame.size());
  out.A = MatD(d, d);
  for (int a = 0; a < d; ++a) {
    VecD dN = covariant_value(ConnKind::levi_civita, pr, normal_, p, out.frame[a], cfg_);
    for (int b = 0; b < d; ++b) out.A(a, b) = -inner(St.g, dN, out.frame[b]);
  }
  double tr = 0.0;
  for (int a = 0; a < d; ++a) tr += out.A(a, a);
  out.h = tr / (2.0 * pr.m);
  return out;
}

VecD SurfaceGeometry::tangential(const Point& p, const VecD& w) const {
  auto St = structure_at(s_.params, p);
  VecD N = normal_(p);
  double c = inner(St.g, w, N);
  VecD r = w;
  for (size_t k = 0; k < r.size(); ++k) r[k] -= c * N[k];
  return r;
}

VecD SurfaceGeometry::intrinsic_covariant(const VectorField& X, const VectorField& Y,
                                          const Point& p) const {
  auto St = structure_at(s_.params, p);
  VecD N = normal_(p);
  VecD xv = X(p), yv = Y(p);
  double nx = std::sqrt(std::max(1e-300, inner(St.g, xv, xv)));
  double ny = std::sqrt(std::max(1e-300, inner(St.g, yv, yv)));
  if (std::fabs(inner(St.g, xv, N)) > 1e-8 * nx || std::fabs(inner(St.g, yv, N)) > 1e-8 * ny)
    throw std::invalid_argument("intrinsic_covariant: inputs must be tangent");
  VecD amb = covariant_value(ConnKind::levi_civita, s_.params, Y, p, xv, cfg_);
  return tangential(p, amb);
}

VecD SurfaceGeometry::surface_gradient(const ScalarField& u, const Point& p) const {
  VecD amb = metric_gradient(s_.params, u, p, cfg_);
  return tangential(p, amb);
}

double SurfaceGeometry::surface_scalar_laplacian(const ScalarField& u, const Point& p) const {
  int want = 2 * s_.params.m;
  double acc = 0.0;
  DiffConfig cfg = cfg_;
  for (int a = 0; a < want; ++a) {
    VectorField leg = frame_leg_field(a);
    VecD leg_p = leg(p);
    ScalarField du_along = ScalarField::from_callables([u, leg, cfg](const VecD& q) {
      Point pq(q);
      return dir_deriv(u, pq, leg.eval_d(q), 1, cfg);
    });
    double second = dir_deriv(du_along, p, leg_p, 1, cfg_);
    VecD amb = covariant_value(ConnKind::levi_civita, s_.params, leg, p, leg_p, cfg_);
    VecD w = tangential(p, amb);
    double corr = dir_deriv(u, p, w, 1, cfg_);
    acc += second - corr;
  }
  return -acc;
}

std::vector<MatD> SurfaceGeometry::frame_connection_coeffs(const Point& p) const {
  auto St = structure_at(s_.params, p);
  int d = 2 * s_.params.m;
  auto frame = tangent_frame(p);

  // orthonormality guard
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      double gij = inner(St.g, frame[i], frame[j]);
      if (std::fabs(gij - (i == j ? 1.0 : 0.0)) > 1e-8)
        throw std::invalid_argument("frame_connection_coeffs: frame is not orthonormal");
    }

  std::vector<MatD> w(d, MatD(d, d));
  for (int k = 0; k < d; ++k) {
    VectorField ek = frame_leg_field(k);
    for (int i = 0; i < d; ++i) {
      VectorField ei = frame_leg_field(i);
      VecD amb = covariant_value(ConnKind::levi_civita, s_.params, ei, p, ek(p), cfg_);
      VecD t = tangential(p, amb);
      for (int j = 0; j < d; ++j) w[k](i, j) = inner(St.g, t, frame[j]);
    }
  }
  return w;
}

SurfaceSample sample_surface(const SurfaceGeometry& geom, int count, uint64_t seed,
                             double box_halfwidth) {
  SurfaceSample out;
  std::mt19937_64 eng(seed);
  auto uniform = [&eng](double lo, double hi) {
    // fixed 53-bit mapping keeps the stream identical across standard libraries
    double u = double(eng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  };
  int n = geom.params().dim();
  int attempts = 0;
  const int max_attempts = count * 40 + 200;
  while (int(out.accepted.size()) < count && attempts < max_attempts) {
    ++attempts;
    VecD q(n);
    for (int k = 0; k < n; ++k) q[k] = uniform(-box_halfwidth, box_halfwidth);
    auto p = geom.project(Point(q));
    if (!p) {
      ++out.rejected;
      continue;
    }
    bool ok = true;
    try {
      geom.tangent_frame(*p);
    } catch (const std::exception&) {
      ok = false;
    }
    if (!ok) {
      ++out.rejected;
      continue;
    }
    out.accepted.push_back(*p);
  }
  return out;
}

}  // namespace sasaki
