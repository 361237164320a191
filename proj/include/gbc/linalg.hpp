#pragma once

// Small dense matrix helpers for the dimensions that occur here (m <= ~10).
// Determinant is generic over the scalar (exact Rational or double); the
// floating-point-only routines serve the finite-difference metric engine.

#include <cmath>
#include <stdexcept>
#include <vector>

namespace gbc {

template <class S>
class SquareMatrix {
 public:
  explicit SquareMatrix(int n) : n_(n), a_(n * n, S(0)) {
    if (n < 1) throw std::domain_error("SquareMatrix: size must be >= 1");
  }
  int size() const { return n_; }
  S& operator()(int i, int j) { return a_[i * n_ + j]; }
  const S& operator()(int i, int j) const { return a_[i * n_ + j]; }

  static SquareMatrix identity(int n) {
    SquareMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

 private:
  int n_;
  std::vector<S> a_;
};

/// Cofactor-expansion determinant; exact for Rational, fine for the tiny
/// sizes used here.
template <class S>
S determinant(const SquareMatrix<S>& m) {
  int n = m.size();
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  S det(0);
  SquareMatrix<S> sub(n - 1);
  for (int col = 0; col < n; ++col) {
    if (m(0, col) == S(0)) continue;
    for (int i = 1; i < n; ++i) {
      int sj = 0;
      for (int j = 0; j < n; ++j) {
        if (j == col) continue;
        sub(i - 1, sj++) = m(i, j);
      }
    }
    S term = m(0, col) * determinant(sub);
    det += (col % 2 == 0) ? term : -term;
  }
  return det;
}

using Matd = SquareMatrix<double>;

/// Gauss-Jordan inverse with partial pivoting. Throws on (numerically)
/// singular input.
inline Matd inverse(const Matd& m) {
  int n = m.size();
  Matd a = m;
  Matd inv = Matd::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
    if (std::abs(a(piv, col)) < 1e-14)
      throw std::domain_error("inverse: singular matrix");
    if (piv != col) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    double d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      double f = a(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// True iff m is symmetric positive definite (by Cholesky).
inline bool is_spd(const Matd& m) {
  int n = m.size();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > 1e-9 * (1.0 + std::abs(m(i, j)))) return false;
  Matd l(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      if (i == j) {
        if (s <= 0.0) return false;
        l(i, i) = std::sqrt(s);
      } else {
        l(i, j) = s / l(j, j);
      }
    }
  }
  return true;
}

/// Gram-Schmidt of the coordinate basis with respect to the metric g,
/// processed in index order with positive diagonal. Column i of the result
/// holds the chart components of the i-th orthonormal frame vector, so the
/// output is upper triangular and positively oriented when g is.
inline Matd gram_schmidt_frame(const Matd& g) {
  int n = g.size();
  Matd e(n);
  auto dot = [&](const std::vector<double>& u, const std::vector<double>& v) {
    double s = 0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) s += g(a, b) * u[a] * v[b];
    return s;
  };
  std::vector<std::vector<double>> cols;
  for (int i = 0; i < n; ++i) {
    std::vector<double> v(n, 0.0);
    v[i] = 1.0;
    for (int j = 0; j < i; ++j) {
      double proj = dot(v, cols[j]);
      for (int a = 0; a < n; ++a) v[a] -= proj * cols[j][a];
    }
    double nrm = std::sqrt(dot(v, v));
    if (!(nrm > 0.0)) throw std::domain_error("gram_schmidt_frame: metric not positive definite");
    for (int a = 0; a < n; ++a) v[a] /= nrm;
    cols.push_back(v);
  }
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) e(a, i) = cols[i][a];
  return e;
}

/// Deterministic pseudo-random rotation (special orthogonal) built by
/// Gram-Schmidt from supplied raw entries; used by frame-invariance tests.
inline Matd orthonormalize_euclidean(const Matd& raw) {
  int n = raw.size();
  Matd q(n);
  std::vector<std::vector<double>> cols;
  for (int i = 0; i < n; ++i) {
    std::vector<double> v(n);
    for (int a = 0; a < n; ++a) v[a] = raw(a, i);
    for (int j = 0; j < i; ++j) {
      double proj = 0;
      for (int a = 0; a < n; ++a) proj += v[a] * cols[j][a];
      for (int a = 0; a < n; ++a) v[a] -= proj * cols[j][a];
    }
    double nrm = 0;
    for (int a = 0; a < n; ++a) nrm += v[a] * v[a];
    nrm = std::sqrt(nrm);
    if (nrm < 1e-10) throw std::domain_error("orthonormalize_euclidean: degenerate input");
    for (int a = 0; a < n; ++a) v[a] /= nrm;
    cols.push_back(v);
  }
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < n; ++a) q(a, i) = cols[i][a];
  return q;
}

}  // namespace gbc
