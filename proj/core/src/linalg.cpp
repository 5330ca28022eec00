#include "volx/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace volx {

Matrix inverse(const Matrix& m, double* cond, double cond_limit) {
  const int n = m.rows;
  Matrix a = m;
  Matrix inv = Matrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(piv, col))) piv = r;
    if (a(piv, col) == 0.0) throw SingularMatrix("inverse: zero pivot");
    if (piv != col)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const double d = a(col, col);
    for (int j = 0; j < n; ++j) {
      a(col, j) /= d;
      inv(col, j) /= d;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a(r, col);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  const double c = norm1(m) * norm1(inv);
  if (cond) *cond = c;
  if (!(c <= cond_limit))
    throw SingularMatrix("inverse: condition number " + std::to_string(c) + " exceeds limit");
  return inv;
}

double determinant(Matrix m) {
  const int n = m.rows;
  double det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::fabs(m(r, col)) > std::fabs(m(piv, col))) piv = r;
    if (m(piv, col) == 0.0) return 0.0;
    if (piv != col) {
      det = -det;
      for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(col, j));
    }
    det *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      const double f = m(r, col) / m(col, col);
      for (int j = col; j < n; ++j) m(r, j) -= f * m(col, j);
    }
  }
  return det;
}

double minor_det(const Matrix& m, const std::vector<int>& row_subset) {
  const int k = static_cast<int>(row_subset.size());
  if (k == 0) return 1.0;
  if (k == 1) return m(row_subset[0], 0);
  if (k == 2)
    return m(row_subset[0], 0) * m(row_subset[1], 1) - m(row_subset[0], 1) * m(row_subset[1], 0);
  Matrix sub(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) sub(i, j) = m(row_subset[i], j);
  return determinant(std::move(sub));
}

std::vector<double> solve_least_squares(const Matrix& A, const std::vector<double>& b,
                                        std::vector<double>* singular_values) {
  const int n = A.cols;
  Matrix At = A.transposed();
  Matrix AtA = At * A;
  std::vector<double> Atb = At * b;

  if (singular_values) {
    // singular values of A = sqrt(eigenvalues of A^T A); Jacobi sweeps are
    // plenty for n <= 5 symmetric matrices
    Matrix s = AtA;
    for (int sweep = 0; sweep < 60; ++sweep) {
      double off = 0.0;
      for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
      if (off < 1e-300) break;
      for (int p = 0; p < n; ++p)
        for (int q = p + 1; q < n; ++q) {
          if (s(p, q) == 0.0) continue;
          const double theta = 0.5 * std::atan2(2.0 * s(p, q), s(q, q) - s(p, p));
          const double c = std::cos(theta), sn = std::sin(theta);
          for (int j = 0; j < n; ++j) {
            const double sp = s(p, j), sq = s(q, j);
            s(p, j) = c * sp - sn * sq;
            s(q, j) = sn * sp + c * sq;
          }
          for (int i = 0; i < n; ++i) {
            const double sp = s(i, p), sq = s(i, q);
            s(i, p) = c * sp - sn * sq;
            s(i, q) = sn * sp + c * sq;
          }
        }
    }
    singular_values->resize(n);
    for (int i = 0; i < n; ++i) (*singular_values)[i] = std::sqrt(std::max(0.0, s(i, i)));
    std::sort(singular_values->rbegin(), singular_values->rend());
  }

  Matrix inv = inverse(AtA);
  return inv * Atb;
}

bool is_positive_definite(const Matrix& m) {
  const int n = m.rows;
  Matrix L(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = m(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (s <= 0.0) return false;
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return true;
}

}  // namespace volx
