#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sasaki/jet.hpp"

namespace sasaki {

/// Dense row-major matrix over a scalar type that supports field arithmetic.
/// Dimensions here are tiny (2m+1 with m = 1 or 2 in practice), so plain
/// Gaussian elimination is all the machinery needed. Templating over the
/// scalar lets the same code run on doubles and on nested jets.
template <class T>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<T> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(size_t(r) * c, T(0.0)) {}

  T& operator()(int i, int j) { return a[size_t(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[size_t(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }
};

using MatD = Mat<double>;
using VecD = std::vector<double>;

template <class T>
std::vector<T> matvec(const Mat<T>& m, const std::vector<T>& v) {
  std::vector<T> r(m.rows, T(0.0));
  for (int i = 0; i < m.rows; ++i) {
    T acc(0.0);
    for (int j = 0; j < m.cols; ++j) acc = acc + m(i, j) * v[j];
    r[i] = acc;
  }
  return r;
}

template <class T>
Mat<T> matmul(const Mat<T>& x, const Mat<T>& y) {
  Mat<T> r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k)
      for (int j = 0; j < y.cols; ++j) r(i, j) = r(i, j) + x(i, k) * y(k, j);
  return r;
}

/// Gauss-Jordan inverse; pivoting compares the scalar parts, which is the
/// right notion of magnitude for jet-valued entries.
template <class T>
Mat<T> inverse(const Mat<T>& m) {
  if (m.rows != m.cols) throw std::invalid_argument("inverse: square matrix required");
  int n = m.rows;
  Mat<T> a = m;
  Mat<T> inv = Mat<T>::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::fabs(scalar_part(a(col, col)));
    for (int r = col + 1; r < n; ++r) {
      double mag = std::fabs(scalar_part(a(r, col)));
      if (mag > best) {
        best = mag;
        piv = r;
      }
    }
    if (best < 1e-300) throw std::runtime_error("inverse: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    T d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) = a(col, j) / d;
      inv(col, j) = inv(col, j) / d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      T f = a(r, col);
      for (int j = 0; j < n; ++j) {
        a(r, j) = a(r, j) - f * a(col, j);
        inv(r, j) = inv(r, j) - f * inv(col, j);
      }
    }
  }
  return inv;
}

// ---- vector helpers ---------------------------------------------------------

template <class T>
std::vector<T> vec_add(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
std::vector<T> vec_sub(const std::vector<T>& a, const std::vector<T>& b) {
  std::vector<T> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T, class S>
std::vector<T> vec_scale(const S& s, const std::vector<T>& a) {
  std::vector<T> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T acc(0.0);
  for (size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

/// Inner product u^T g v for a metric given as a matrix of components.
template <class T>
T inner(const Mat<T>& g, const std::vector<T>& u, const std::vector<T>& v) {
  T acc(0.0);
  for (int i = 0; i < g.rows; ++i)
    for (int j = 0; j < g.cols; ++j) acc = acc + u[i] * (g(i, j) * v[j]);
  return acc;
}

inline double norm_inf(const VecD& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

inline double mat_norm_inf(const MatD& m) {
  double r = 0.0;
  for (double x : m.a) r = std::max(r, std::fabs(x));
  return r;
}

inline double frobenius_sq(const MatD& m) {
  double r = 0.0;
  for (double x : m.a) r += x * x;
  return r;
}

}  // namespace sasaki
