#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "volx/errors.hpp"

namespace volx {

/// Small dense row-major matrix. The charts in this library have dim <= 5,
/// so nothing here is tuned beyond correctness.
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  Matrix transposed() const {
    Matrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
};

inline Matrix operator*(const Matrix& x, const Matrix& y) {
  Matrix z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const double v = x(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) z(i, j) += v * y(k, j);
    }
  return z;
}

inline std::vector<double> operator*(const Matrix& m, const std::vector<double>& v) {
  std::vector<double> out(static_cast<std::size_t>(m.rows), 0.0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out[i] += m(i, j) * v[j];
  return out;
}

inline double norm1(const Matrix& m) {
  double best = 0.0;
  for (int j = 0; j < m.cols; ++j) {
    double s = 0.0;
    for (int i = 0; i < m.rows; ++i) s += std::fabs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

/// Gauss-Jordan inverse with partial pivoting. Reports the 1-norm condition
/// number estimate through `cond` and throws SingularMatrix when it exceeds
/// `cond_limit` or a pivot vanishes.
Matrix inverse(const Matrix& m, double* cond = nullptr, double cond_limit = 1e12);

/// Determinant of a square matrix by partial-pivot elimination.
double determinant(Matrix m);

/// Determinant of the submatrix taking `rows` of m and all of its columns
/// (m must have cols == rows.size()).
double minor_det(const Matrix& m, const std::vector<int>& row_subset);

/// Solve the least-squares problem min |Ax - b| via normal equations.
/// `singular_values` (optional) receives the singular values of A computed
/// from the eigenvalues of A^T A, for rank-deficiency reporting.
std::vector<double> solve_least_squares(const Matrix& A, const std::vector<double>& b,
                                        std::vector<double>* singular_values = nullptr);

/// True when the symmetric matrix admits a Cholesky factorisation.
bool is_positive_definite(const Matrix& m);

}  // namespace volx
