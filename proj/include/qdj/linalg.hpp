#pragma once

// Linear algebra on top of Matrix: exact elimination over the rationals, and
// a high-precision rank-revealing toolkit (pivoted QR, complete orthogonal
// decomposition, symmetric Jacobi eigensolver) over Real.

#include "qdj/kernels.hpp"
#include "qdj/matrix.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qdj {

/// Gauss-Jordan inverse. Exact scalars pivot on the first nonzero entry,
/// Reals on the largest magnitude. Throws std::domain_error when singular.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
  m.require_square("inverse");
  const std::size_t n = m.rows();
  if (m.is_diagonal()) {
    Matrix<T> inv(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (m(i, i) == T(0)) throw std::domain_error("inverse: matrix is singular");
      inv(i, i) = T(1) / m(i, i);
    }
    return inv;
  }
  Matrix<T> a = m;
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = n;
    if constexpr (is_exact_v<T>) {
      for (std::size_t r = col; r < n; ++r)
        if (!a(r, col).is_zero()) {
          piv = r;
          break;
        }
    } else {
      T best(0);
      for (std::size_t r = col; r < n; ++r) {
        T v = abs(a(r, col));
        if (v > best) {
          best = v;
          piv = r;
        }
      }
      if (piv != n && best <= std::numeric_limits<T>::epsilon() * 16) piv = n;
    }
    if (piv == n) throw std::domain_error("inverse: matrix is singular");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    }
    const T p = a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) /= p;
      inv(col, j) /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a(r, col);
      if (f == T(0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(col, j);
        inv(r, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

/// Basis of the right null space of an exact matrix, one vector per column,
/// read off the reduced row echelon form with each free variable set to 1.
QMatrix kernel_basis(const QMatrix& m);

/// Number of linearly independent columns, exactly.
std::size_t exact_rank(const QMatrix& m);

/// Complete orthogonal decomposition A P = Q [T 0; 0 0] Z^T of a real matrix,
/// with the numerical rank decided by |R_jj| <= rank_tol * |R_00|.
class CompleteOrthogonalDecomposition {
 public:
  explicit CompleteOrthogonalDecomposition(const RealMatrix& a, const Real& rank_tol = kInternalTol);

  std::size_t rank() const { return rank_; }
  std::size_t cols() const { return n_; }

  /// Minimum-norm least-squares solution of A x = b.
  std::vector<Real> solve(std::span<const Real> b) const;

  /// Orthonormal basis of the numerical null space, one vector per column.
  RealMatrix null_space() const;

  /// Magnitudes of the pivoted diagonal of R, largest first.
  const std::vector<Real>& pivots() const { return pivots_; }

 private:
  std::size_t m_ = 0;
  std::size_t n_ = 0;
  std::size_t rank_ = 0;
  std::vector<std::size_t> perm_;
  std::vector<std::vector<Real>> reflectors_;  // Householder vectors of the first QR
  std::vector<Real> pivots_;
  RealMatrix upper_;  // L (rank x rank), [R11 R12] = [L^T 0] U^T
  std::vector<std::vector<Real>> second_;  // Householder vectors of U

  void apply_u(std::vector<Real>& y) const;
};

struct SymmetricEigen {
  std::vector<Real> values;  // ascending
  RealMatrix vectors;        // column k belongs to values[k]
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
SymmetricEigen symmetric_eigen(const RealMatrix& s);

/// Principal square root of a symmetric positive semidefinite matrix.
RealMatrix spd_sqrt(const RealMatrix& s);

/// Upper-triangular R with s = R^T R. Throws std::domain_error unless s is
/// numerically positive definite.
RealMatrix cholesky_upper(const RealMatrix& s);

/// Real matrices over the real field: the adjoint is the transpose.
inline RealMatrix adjoint(const RealMatrix& m) { return m.transpose(); }

}  // namespace qdj
