#pragma once

#include <cmath>
#include <stdexcept>

namespace sasaki {

/// Truncated univariate Taylor jet: value and derivatives d1,d2,d3 of a
/// scalar expression along a parametrized line t -> f(c(t)) at t = 0.
/// Nest the scalar type (T = Jet<double>) to obtain mixed second-level
/// directional derivatives; that is how metric derivatives reach the
/// Christoffel symbols at jet-valued points.
template <class T>
struct Jet {
  T v{};
  T d1{};
  T d2{};
  T d3{};

  Jet() = default;
  Jet(double c) : v(c), d1(), d2(), d3() {}
  Jet(const T& v_, const T& d1_) : v(v_), d1(d1_), d2(), d3() {}
  Jet(const T& v_, const T& d1_, const T& d2_, const T& d3_)
      : v(v_), d1(d1_), d2(d2_), d3(d3_) {}
};

inline double scalar_part(double x) { return x; }
template <class T>
double scalar_part(const Jet<T>& j) {
  return scalar_part(j.v);
}

inline bool all_finite(double x) { return std::isfinite(x); }
template <class T>
bool all_finite(const Jet<T>& j) {
  return all_finite(j.v) && all_finite(j.d1) && all_finite(j.d2) && all_finite(j.d3);
}

// ---- arithmetic -----------------------------------------------------------

template <class T>
Jet<T> operator-(const Jet<T>& a) {
  return {-a.v, -a.d1, -a.d2, -a.d3};
}

template <class T>
Jet<T> operator+(const Jet<T>& a, const Jet<T>& b) {
  return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}
template <class T>
Jet<T> operator-(const Jet<T>& a, const Jet<T>& b) {
  return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

// Leibniz rule through third order.
template <class T>
Jet<T> operator*(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r;
  r.v = a.v * b.v;
  r.d1 = a.d1 * b.v + a.v * b.d1;
  r.d2 = a.d2 * b.v + a.d1 * b.d1 + a.d1 * b.d1 + a.v * b.d2;
  r.d3 = a.d3 * b.v + (a.d2 * b.d1 + a.d2 * b.d1 + a.d2 * b.d1) +
         (a.d1 * b.d2 + a.d1 * b.d2 + a.d1 * b.d2) + a.v * b.d3;
  return r;
}

// Solve a = r*b order by order.
template <class T>
Jet<T> operator/(const Jet<T>& a, const Jet<T>& b) {
  Jet<T> r;
  r.v = a.v / b.v;
  r.d1 = (a.d1 - r.v * b.d1) / b.v;
  r.d2 = (a.d2 - (r.d1 * b.d1 + r.d1 * b.d1) - r.v * b.d2) / b.v;
  r.d3 = (a.d3 - (r.d2 * b.d1 + r.d2 * b.d1 + r.d2 * b.d1) -
          (r.d1 * b.d2 + r.d1 * b.d2 + r.d1 * b.d2) - r.v * b.d3) /
         b.v;
  return r;
}

template <class T>
Jet<T> operator+(const Jet<T>& a, double c) {
  Jet<T> r = a;
  r.v = a.v + T(c);
  return r;
}
template <class T>
Jet<T> operator+(double c, const Jet<T>& a) {
  return a + c;
}
template <class T>
Jet<T> operator-(const Jet<T>& a, double c) {
  return a + (-c);
}
template <class T>
Jet<T> operator-(double c, const Jet<T>& a) {
  return (-a) + c;
}
template <class T>
Jet<T> operator*(const Jet<T>& a, double c) {
  T f(c);
  return {a.v * f, a.d1 * f, a.d2 * f, a.d3 * f};
}
template <class T>
Jet<T> operator*(double c, const Jet<T>& a) {
  return a * c;
}
template <class T>
Jet<T> operator/(const Jet<T>& a, double c) {
  T f(c);
  return {a.v / f, a.d1 / f, a.d2 / f, a.d3 / f};
}
template <class T>
Jet<T> operator/(double c, const Jet<T>& a) {
  return Jet<T>(c) / a;
}

// ---- composition with elementary functions --------------------------------

// Chain rule through third order for y = phi(x) with the derivatives of phi
// evaluated at x.v supplied by the caller.
template <class T>
Jet<T> compose(const Jet<T>& x, const T& f0, const T& f1, const T& f2, const T& f3) {
  Jet<T> r;
  r.v = f0;
  r.d1 = f1 * x.d1;
  r.d2 = f2 * (x.d1 * x.d1) + f1 * x.d2;
  r.d3 = f3 * (x.d1 * x.d1 * x.d1) +
         3.0 * (f2 * (x.d1 * x.d2)) + f1 * x.d3;
  return r;
}

template <class T>
Jet<T> sin(const Jet<T>& x) {
  using std::cos;
  using std::sin;
  T s = sin(x.v), c = cos(x.v);
  return compose(x, s, c, -s, -c);
}

template <class T>
Jet<T> cos(const Jet<T>& x) {
  using std::cos;
  using std::sin;
  T s = sin(x.v), c = cos(x.v);
  return compose(x, c, -s, -c, s);
}

template <class T>
Jet<T> tan(const Jet<T>& x) {
  using std::tan;
  T t = tan(x.v);
  T sec2 = T(1.0) + t * t;
  T f2 = (t + t) * sec2;
  T f3 = sec2 * (T(2.0) + T(6.0) * (t * t));
  return compose(x, t, sec2, f2, f3);
}

template <class T>
Jet<T> exp(const Jet<T>& x) {
  using std::exp;
  T e = exp(x.v);
  return compose(x, e, e, e, e);
}

template <class T>
Jet<T> log(const Jet<T>& x) {
  using std::log;
  T inv = T(1.0) / x.v;
  T inv2 = inv * inv;
  return compose(x, log(x.v), inv, -inv2, T(2.0) * (inv2 * inv));
}

template <class T>
Jet<T> sqrt(const Jet<T>& x) {
  using std::sqrt;
  T s = sqrt(x.v);
  T f1 = T(0.5) / s;
  T f2 = T(-0.25) / (s * (x.v));
  T f3 = T(0.375) / (s * (x.v * x.v));
  return compose(x, s, f1, f2, f3);
}

// Integer power by repeated multiplication; stays polynomial-exact and
// defined for negative bases.
template <class T>
Jet<T> pow_int(const Jet<T>& x, long long n) {
  if (n == 0) return Jet<T>(1.0);
  if (n < 0) return Jet<T>(1.0) / pow_int(x, -n);
  Jet<T> acc(1.0);
  Jet<T> base = x;
  long long e = n;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

inline double pow_int(double x, long long n) { return std::pow(x, double(n)); }

template <class T>
Jet<T> pow(const Jet<T>& x, const Jet<T>& p) {
  return exp(p * log(x));
}

using J = Jet<double>;
using JJ = Jet<Jet<double>>;

}  // namespace sasaki
