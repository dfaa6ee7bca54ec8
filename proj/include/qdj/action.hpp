#pragma once

// *-actions of U_q(g) on finite-dimensional algebras A = M_{n_1} (+) ... (+)
// M_{n_k}, stored as linear operators on the vectorized algebra.
//
// Layout. A is embedded block-diagonally in End(C^N), N = sum n_j. The basis
// of A is the matrix units of each block, ordered by block and then row-major
// inside the block, so the unit e_rs of block j has index offset_j + r n_j + s
// and D = dim A = sum n_j^2.

#include "qdj/cartan.hpp"
#include "qdj/matrix.hpp"
#include "qdj/rep.hpp"

#include <vector>

namespace qdj {

class AlgebraLayout {
 public:
  AlgebraLayout() = default;
  explicit AlgebraLayout(std::vector<std::size_t> blocks);

  const std::vector<std::size_t>& blocks() const { return blocks_; }
  std::size_t block_count() const { return blocks_.size(); }
  std::size_t size(std::size_t j) const { return blocks_[j]; }
  /// Offset of block j in the vectorized algebra.
  std::size_t vec_offset(std::size_t j) const { return vec_offsets_[j]; }
  /// Offset of block j on the Hilbert space C^N.
  std::size_t space_offset(std::size_t j) const { return space_offsets_[j]; }
  std::size_t algebra_dim() const { return algebra_dim_; }
  std::size_t space_dim() const { return space_dim_; }

  /// Block j of the algebra element stored in `v` (a D-vector) as an n_j x n_j matrix.
  template <class T>
  Matrix<T> block_of(std::span<const T> v, std::size_t j) const;
  /// Block-diagonal N x N matrix of the algebra element `v`.
  template <class T>
  Matrix<T> unvec(std::span<const T> v) const;
  /// Reads the diagonal blocks of an N x N matrix; off-block entries are ignored.
  template <class T>
  std::vector<T> vec(const Matrix<T>& m) const;
  /// Column `col` of an operator on A, as an N x N block-diagonal matrix.
  template <class T>
  Matrix<T> column(const Matrix<T>& op, std::size_t col) const;

 private:
  std::vector<std::size_t> blocks_;
  std::vector<std::size_t> vec_offsets_;
  std::vector<std::size_t> space_offsets_;
  std::size_t algebra_dim_ = 0;
  std::size_t space_dim_ = 0;
};

template <class S>
struct BasicAction {
  CartanDatum cartan;
  QScalar q;
  std::vector<std::size_t> blocks;
  std::vector<Matrix<S>> E;  // per node, D x D
  std::vector<Matrix<S>> F;
  std::vector<Matrix<S>> K;
  /// Per-block inner product on C^{n_j}; empty means the standard one. The
  /// *-operation on block j is a* = gram_j^-1 a^T gram_j.
  std::vector<Matrix<S>> gram;

  int rank() const { return cartan.rank; }
  AlgebraLayout layout() const { return AlgebraLayout(blocks); }
  /// Throws std::invalid_argument on inconsistent shapes.
  void validate() const;
};

using Action = BasicAction<QScalar>;
using RealAction = BasicAction<Real>;

/// Adjoint action of r on the block-diagonal subalgebra given by `blocks`:
///   K.a = K a K^-1,  E.a = E a K^-1 - a E K^-1,  F.a = F a - K^-1 a K F.
/// Rejects partitions whose sizes do not add up to r.dim, and partitions for
/// which some generator or the gram is not block-diagonal.
Action induce_action_exact(const Rep& r, const std::vector<std::size_t>& blocks);

/// Real action in orthonormal coordinates: induce_action_exact followed by
/// to_orthonormal_frame.
RealAction induce_action(const Rep& r, const std::vector<std::size_t>& blocks);

RealAction to_real(const Action& a);

/// Re-expresses a real action in the orthonormal frame of its grams
/// (gram_j = R_j^T R_j, a -> R_j a R_j^-1). The result has empty grams.
RealAction to_orthonormal_frame(const RealAction& a);

/// The action transported along a -> u a u^T with u = (+) u_j orthogonal.
RealAction conjugate(const RealAction& a, const std::vector<RealMatrix>& u);

/// The action over 1/q obtained by the K-fixing Hopf *-isomorphism of
/// invert_q: E' = q_i^-1 F o K, F' = q_i K^-1 o E, K' = K.
template <class S>
BasicAction<S> invert_q(const BasicAction<S>& a);

/// Checks the module-algebra axioms on all pairs of basis elements (K
/// multiplicative, the two twisted Leibniz rules), the *-compatibility
///   (E(a))* = -F(a*),  (F(a))* = -E(a*),  K((K(a))*) = a*,
/// and the defining relations of U_q(g) for the operators themselves, with
/// [E_i, F_i] written as [E_i, F_i](q_i - q_i^-1) K_i = K_i^2 - 1. The pair
/// checks cost O(sum n_j^7).
template <class S>
RelationReport check_action(const BasicAction<S>& a, const Real& tol = kReportTol);

}  // namespace qdj
