// Test-only dense oracles, built directly from the defining formulas and kept
// independent of the matrix-free implementation paths they check.
#pragma once

#include "lfamg/grid.hpp"

#include <Eigen/Dense>

#include <stdexcept>

namespace oracle {

using lfamg::Index;
using lfamg::Mat;
using lfamg::Vec;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Operator acting as `t` along direction `dir` of a d-dimensional grid with
// m points per direction, identity elsewhere. Storage is first-direction
// fastest, so the fastest axis is the rightmost Kronecker factor.
inline Mat dir_matrix(const Mat& t, int d, int dir, Index m) {
  Mat out = Mat::Identity(1, 1);
  for (int axis = d - 1; axis >= 0; --axis) out = kron(out, axis == dir ? t : Mat::Identity(m, m));
  return out;
}

inline Mat kron_sum(const Mat& t, int d, double c) {
  const Index m = t.rows();
  Index total = 1;
  for (int a = 0; a < d; ++a) total *= m;
  Mat out = c * Mat::Identity(total, total);
  for (int dir = 0; dir < d; ++dir) out += dir_matrix(t, d, dir, m);
  return out;
}

// 1/h^2 tridiag(-1, 2, -1), size (n-1).
inline Mat dirichlet_T(int n) {
  const double w = static_cast<double>(n) * n;
  Mat t = Mat::Zero(n - 1, n - 1);
  for (Index i = 0; i < t.rows(); ++i) {
    t(i, i) = 2.0 * w;
    if (i > 0) t(i, i - 1) = -w;
    if (i + 1 < t.rows()) t(i, i + 1) = -w;
  }
  return t;
}

// Circulant with wrap couplings scaled by 1/h^2; N points with step h.
inline Mat periodic_T_sized(int N, double h) {
  const double w = 1.0 / (h * h);
  Mat t = Mat::Zero(N, N);
  for (Index i = 0; i < N; ++i) {
    t(i, i) = 2.0 * w;
    t(i, (i + 1) % N) -= w;
    t(i, (i + N - 1) % N) -= w;
  }
  return t;
}

inline Mat periodic_T(int n) { return periodic_T_sized(2 * n, 1.0 / n); }

// Odd extension, columns e_i - e_{N-i} in the paper's 1-based indexing.
inline Mat odd_E(int n) {
  const int N = 2 * n;
  Mat e = Mat::Zero(N, n - 1);
  for (int i = 1; i <= n - 1; ++i) {
    e(i - 1, i - 1) = 1.0;
    e(N - i - 1, i - 1) = -1.0;
  }
  return e;
}

inline Mat odd_R(int n) { return 0.5 * odd_E(n).transpose(); }

// Even extension of node values u_0..u_n into a period-2n vector anchored at
// x = 0.
inline Mat even_E(int n) {
  const int N = 2 * n;
  Mat e = Mat::Zero(N, n + 1);
  for (int j = 0; j <= n; ++j) e(j, j) = 1.0;
  for (int j = 1; j <= n - 1; ++j) e(N - j, j) = 1.0;
  return e;
}

inline Mat even_R(int n) {
  Vec w = Vec::Constant(n + 1, 0.5);
  w(0) = 1.0;
  w(n) = 1.0;
  return w.asDiagonal() * even_E(n).transpose();
}

// Mixed extension: even reflection about the Neumann end composed with the
// odd extension of the doubled interval (period 4n).
inline Mat mixed_E(int n) {
  Mat reflect = Mat::Zero(2 * n - 1, n);  // doubled-interval Dirichlet vector
  for (int j = 0; j < n; ++j) reflect(j, j) = 1.0;
  for (int j = n; j < 2 * n - 1; ++j) reflect(j, 2 * n - 2 - j) = 1.0;
  return odd_E(2 * n) * reflect;
}

inline Mat mixed_R(int n) {
  Vec w = Vec::Constant(n, 0.25);
  w(n - 1) = 0.5;
  return w.asDiagonal() * mixed_E(n).transpose();
}

inline Mat extension_E(lfamg::BoundaryKind bc, int n) {
  switch (bc) {
    case lfamg::BoundaryKind::Dirichlet: return odd_E(n);
    case lfamg::BoundaryKind::Neumann: return even_E(n);
    case lfamg::BoundaryKind::MixedDN: return mixed_E(n);
    default: throw std::invalid_argument("no extension for periodic grids");
  }
}

inline Mat extension_R(lfamg::BoundaryKind bc, int n) {
  switch (bc) {
    case lfamg::BoundaryKind::Dirichlet: return odd_R(n);
    case lfamg::BoundaryKind::Neumann: return even_R(n);
    case lfamg::BoundaryKind::MixedDN: return mixed_R(n);
    default: throw std::invalid_argument("no extension for periodic grids");
  }
}

// Dense 1D periodic full weighting with anchor a (coarse q from fine
// 2q+a-1, 2q+a, 2q+a+1) and its interpolation partner 2 R^T.
inline Mat periodic_FW(int N, int a) {
  const int Nc = N / 2;
  Mat r = Mat::Zero(Nc, N);
  for (int q = 0; q < Nc; ++q) {
    r(q, ((2 * q + a - 1) % N + N) % N) += 0.25;
    r(q, (2 * q + a) % N) += 0.5;
    r(q, (2 * q + a + 1) % N) += 0.25;
  }
  return r;
}

inline Mat periodic_interp(int N, int a) { return 2.0 * periodic_FW(N, a).transpose(); }

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
