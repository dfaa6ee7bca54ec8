#pragma once

// Clebsch-Gordan decomposition of V_a (x) V_b for U_q(su(2)) (q = 1 is the
// classical case), the block of the Drinfeld-Jimbo twist on each such tensor
// product, and the associator of the twist on triple products.
//
// Frames. Each V_n carries the weight basis of irrep_su2 and its diagonal
// gram g. The orthonormal frame rescales v_m by 1/sqrt(g_m); quantum and
// classical V_n are identified through these frames, so the identification
// of the centers acts as the identity on block matrices. Twist and associator
// blocks are matrices in the orthonormal frame of the tensor product.

#include "qdj/kernels.hpp"
#include "qdj/matrix.hpp"
#include "qdj/qnum.hpp"

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qdj {

/// Generator images of an su(2) module in the weight basis. At q = 1 the same
/// formulas give the classical module (K = identity, q-integers become n).
struct Su2Module {
  QScalar q;
  QMatrix E;
  QMatrix F;
  std::vector<int> weights;   // K acts by q^weight on basis vector m
  std::vector<QScalar> gram;  // diagonal inner product

  std::size_t dim() const { return weights.size(); }
  QMatrix K() const;
};

Su2Module su2_module(int n, const QScalar& q);

/// V (x) W through the coproduct of HopfConvention (classical coproduct at q = 1).
Su2Module tensor(const Su2Module& v, const Su2Module& w);

/// Converts a weight-basis matrix to the orthonormal frame of `gram`.
RealMatrix to_orthonormal_frame(const QMatrix& x, const std::vector<QScalar>& gram);

struct CGComponent {
  int label = 0;
  /// Column m is the image of v_m of V_label: the highest-weight vector w_0 is
  /// a kernel vector of Delta(E), and w_{m+1} = Delta(F) w_m / [m+1].
  QMatrix embedding;
  std::vector<QScalar> norms_sq;  // gram norms of the columns
};

struct CGDecomposition {
  int a = 0;
  int b = 0;
  QScalar q;
  std::vector<CGComponent> components;  // ascending labels
  std::vector<QScalar> gram;            // diagonal gram of V_a (x) V_b
  QScalar completeness_residual;        // max |sum of component projectors - I|
  QScalar intertwine_residual;          // max over components and generators

  /// Orthonormal-frame isometry V_label -> V_a (x) V_b of component k.
  RealMatrix isometry(std::size_t k) const;
  std::vector<int> labels() const;
};

/// Decomposes V_a (x) V_b into irreducibles. q > 0; q = 1 is allowed.
CGDecomposition cg_decompose(int a, int b, const QScalar& q);

struct TwistBlock {
  int a = 0;
  int b = 0;
  QScalar q;
  RealMatrix F;  // (a+1)(b+1) square, orthonormal frame
  Real unitarity_residual;
  Real intertwine_residual;
  std::string gauge;
  std::vector<int> labels;
  std::vector<RealMatrix> classical_isometries;  // same order as labels

  bool passed(const Real& tol) const { return unitarity_residual <= tol && intertwine_residual <= tol; }
};

inline constexpr const char* kTwistGauge =
    "per component, <quantum highest-weight vector, classical highest-weight vector> > 0";

/// F restricted to End(V_a (x) V_b): sum over components of the quantum
/// isometry composed with the adjoint of the classical one. Throws
/// std::runtime_error if the intertwining residual exceeds `tol`.
TwistBlock solve_twist_block(int a, int b, const QScalar& q, const Real& tol = Real("1e-10"));

struct AssociatorBlock {
  int a = 0;
  int b = 0;
  int c = 0;
  QScalar q;
  RealMatrix Phi;
  Real commutation_residual;  // max over x in {E, F, K} of ||[Phi, Delta^(2)(x)]||
  Real unitarity_residual;
  Real identity_residual;  // ||Phi - I||

  /// Commutation and unitarity within tol; blocks with b = 0 must also be the
  /// identity (normalization of the twist).
  bool passed(const Real& tol) const {
    return commutation_residual <= tol && unitarity_residual <= tol && (b != 0 || identity_residual <= tol);
  }
};

/// Lookup for twist blocks; associator computations need (a,b), (b,c), (d,c)
/// and (a,e) for every d in a (x) b and e in b (x) c.
class TwistTable {
 public:
  explicit TwistTable(QScalar q) : q_(std::move(q)) {}

  const QScalar& q() const { return q_; }
  const TwistBlock& get(int a, int b);
  /// Solves all pairs with a, b <= max_label up front.
  void precompute(int max_label, kernels::Execution exec = kernels::Execution::parallel);
  bool contains(int a, int b) const { return blocks_.count({a, b}) != 0; }

 private:
  QScalar q_;
  std::map<std::pair<int, int>, TwistBlock> blocks_;
};

/// Phi = (id (x) Delta)(F*) F_23* F_12 (Delta (x) id)(F) on V_a (x) V_b (x) V_c,
/// where Delta is the classical coproduct. Commutation is tested against the
/// classical Delta^(2) of E and F and against K (x) K (x) K. `f12_override`
/// replaces F_12 (negative controls).
AssociatorBlock associator_block(int a, int b, int c, TwistTable& table,
                                 const std::optional<RealMatrix>& f12_override = std::nullopt);
AssociatorBlock associator_block(int a, int b, int c, const QScalar& q);

/// All twist blocks with a, b <= max_spin, ordered by (a, b).
std::vector<TwistBlock> twist_sweep(int max_spin, const QScalar& q,
                                    kernels::Execution exec = kernels::Execution::parallel);

/// All associator blocks with a, b, c <= max_triple, ordered by (a, b, c).
std::vector<AssociatorBlock> associator_sweep(int max_triple, const QScalar& q,
                                              kernels::Execution exec = kernels::Execution::parallel);

}  // namespace qdj
