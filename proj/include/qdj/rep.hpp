#pragma once

// Finite-dimensional representations of U_q(g): generator images, the Hopf
// structure used to form tensor products, and exhaustive relation checks.

#include "qdj/cartan.hpp"
#include "qdj/linalg.hpp"
#include "qdj/matrix.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qdj {

/// The single Hopf convention used everywhere in the library.
///
///   Delta(K) = K (x) K        eps(K) = 1   S(K) = K^-1
///   Delta(E) = E (x) K + 1 (x) E   eps(E) = 0   S(E) = -E K^-1
///   Delta(F) = F (x) 1 + K^-1 (x) F   eps(F) = 0   S(F) = -K F
///
/// With this coproduct the adjoint action obeys E(ab) = E(a)K(b) + aE(b) and
/// F(ab) = F(a)b + K^-1(a)F(b), and the *-structure is K* = K, E* = KF,
/// F* = EK^-1.
struct HopfConvention {
  static constexpr std::string_view coproduct_K = "K(x)K";
  static constexpr std::string_view coproduct_E = "E(x)K + 1(x)E";
  static constexpr std::string_view coproduct_F = "F(x)1 + K^-1(x)F";
  static constexpr std::string_view antipode_E = "-E K^-1";
  static constexpr std::string_view antipode_F = "-K F";
};

template <class S>
struct BasicRep {
  CartanDatum cartan;
  QScalar q;
  std::size_t dim = 0;
  std::vector<Matrix<S>> E;
  std::vector<Matrix<S>> F;
  std::vector<Matrix<S>> K;
  Matrix<S> gram;  // inner product <x, y> = x^T gram y

  int rank() const { return cartan.rank; }

  /// Adjoint with respect to gram: gram^-1 x^T gram.
  Matrix<S> adjoint(const Matrix<S>& x) const;
};

using Rep = BasicRep<QScalar>;
using RealRep = BasicRep<Real>;

/// (n+1)-dimensional irreducible U_q(su(2))-module on v_0..v_n with
/// K v_m = q^{n-2m} v_m, F v_m = [m+1] v_{m+1}, E v_m = [n-m+1] v_{m-1}, and
/// the diagonal gram (gram_00 = 1) that makes E^dagger = KF.
Rep irrep_su2(int n, const QScalar& q);

/// Diagonal entries of the gram matrix of irrep_su2(n, q). q = 1 gives the
/// classical binomial weights.
std::vector<QScalar> su2_gram_weights(int n, const QScalar& q);

/// Vector representation of U_q(sl_n) on C^n (E_i = e_{i,i+1}, F_i = e_{i+1,i})
/// with gram diag(1, q, ..., q^{n-1}).
Rep vector_rep_sln(int n, const QScalar& q);

/// One-dimensional counit representation E = F = 0, K = 1.
Rep trivial_rep(const CartanDatum& cartan, const QScalar& q);

/// Block-diagonal direct sum; all parts must share cartan and q.
Rep direct_sum(const std::vector<Rep>& parts);

/// Tensor product through the coproduct. Basis index i1 * dim2 + i2.
template <class S>
BasicRep<S> tensor(const BasicRep<S>& r1, const BasicRep<S>& r2);

/// The module over U_{1/q} obtained through the Hopf *-isomorphism that fixes
/// K_i: E_i' = q_i^-1 F_i K_i (= q_i E_i^dagger), F_i' = q_i K_i^-1 E_i
/// (= q_i^-1 F_i^dagger). The map is an involution.
template <class S>
BasicRep<S> invert_q(const BasicRep<S>& r);

struct RelationEntry {
  std::string relation;
  int i = 0;
  int j = 0;
  std::string residual;  // exact rational (max |entry|) or decimal Frobenius norm
  double magnitude = 0;
  bool pass = false;
};

struct RelationReport {
  bool exact = true;
  double tol = 0;
  std::vector<RelationEntry> entries;

  bool passed() const;
  const RelationEntry* first_failure() const;
};

/// Checks every instance of the defining relations, the quantum Serre
/// relations, the *-structure, the weight-module spectrum condition and the
/// antipode axioms. Failing relations are entries, not errors; mismatched
/// matrix shapes throw std::invalid_argument. `tol` only applies to Real reps.
template <class S>
RelationReport verify_relations(const BasicRep<S>& r, const Real& tol = kReportTol);

RealRep to_real(const Rep& r);

/// sum_k (-1)^k [1-a_ij choose k]_{q_i} x_i^{1-a_ij-k} x_j x_i^k.
template <class S>
Matrix<S> serre_element(const CartanDatum& cartan, const QScalar& q, const std::vector<Matrix<S>>& x,
                        int i, int j);

}  // namespace qdj
