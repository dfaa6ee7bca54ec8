#pragma once

// Lifting a *-action of U_q(g) on A = (+) M_{n_j} to a *-representation on
// H = (+) C^{n_j}: matrices e_i, f_i, k_i with
//   K_i(a) = k_i a k_i^-1,  E_i(a) = (e_i a - a e_i) k_i^-1,
//   F_i(a) = f_i a - k_i^-1 a k_i f_i,
// k_i e_i k_i^-1 = q_i^2 e_i and [e_i, f_i] = (k_i - k_i^-1)/(q_i - q_i^-1).
// Everything runs over Real in orthonormal coordinates, where * is the
// transpose.

#include "qdj/action.hpp"
#include "qdj/matrix.hpp"
#include "qdj/rep.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdj {

enum class LiftErrorKind {
  degenerate_input,
  not_a_module_action,
  inconsistent_action,
  positivity_violation,
  unsupported_parameter,
  internal_failure,
};

std::string to_string(LiftErrorKind kind);

class LiftError : public std::runtime_error {
 public:
  LiftError(std::string stage, LiftErrorKind kind, int node, const std::string& detail);

  const std::string& stage() const { return stage_; }
  LiftErrorKind kind() const { return kind_; }
  int node() const { return node_; }

 private:
  std::string stage_;
  LiftErrorKind kind_;
  int node_;
};

struct LiftOptions {
  Real tol = kReportTol;             // stage checks and reported residuals
  Real internal_tol = kInternalTol;  // numerical rank decisions
};

struct LiftResult {
  CartanDatum cartan;
  QScalar q;
  std::vector<std::size_t> blocks;
  std::vector<RealMatrix> e;  // per node, N x N
  std::vector<RealMatrix> f;
  std::vector<RealMatrix> k;
  /// k_implements, e_coboundary, f_coboundary, kek_scaling, kfk_scaling,
  /// ef_commutator, star_identity, serre_x, serre_y, module_compat, plus
  /// cross_relations when rank > 1. Maxima over nodes.
  std::map<std::string, Real> residuals;
  bool inverted = false;  // lifted through the q -> 1/q isomorphism

  bool passed(const Real& tol) const;
  /// The lifted representation (orthonormal basis, identity gram).
  RealRep as_rep() const;
};

/// Positive k = (+) k_j with det k_j = 1 and K_node(a) = k a k^-1. The
/// intertwiner space of each block must be one-dimensional.
RealMatrix implement_k(const RealAction& a, int node, const LiftOptions& options = {});

/// Minimum-norm least-squares solution of [e, a] = E(a) k over the matrix
/// units, followed by the correction that makes k e k^-1 = q_i^2 e.
RealMatrix solve_coboundary_e(const RealAction& a, int node, const RealMatrix& k,
                              const LiftOptions& options = {});

/// Same for F(a) = f a - k^-1 a k f and k f k^-1 = q_i^-2 f, solved through
/// g = k f, which satisfies [g, a] = k F(a).
RealMatrix solve_coboundary_f(const RealAction& a, int node, const RealMatrix& k,
                              const LiftOptions& options = {});

struct NormalizedPair {
  RealMatrix e;
  RealMatrix k;
  std::vector<Real> lambda;  // per block
};

/// c' = ([e, f] - k/(q_i - q_i^-1)) k is central; on a genuine
/// representation it equals -1/(mu^2 (q_i - q_i^-1)) per block, so with
/// lambda = (-c'(q_i - q_i^-1))^{-1/2} the pair (lambda e, lambda k) satisfies
/// the commutator relation. Requires 0 < q_i < 1.
NormalizedPair normalize_commutator(const RealMatrix& e, const RealMatrix& f, const RealMatrix& k,
                                    const QScalar& qi, const std::vector<std::size_t>& blocks,
                                    const LiftOptions& options = {});

/// Runs the pipeline on every node (through invert_q when q > 1) and records
/// the residuals against the input action. Actions with grams are first moved
/// to the orthonormal frame. q = 1 is rejected.
LiftResult lift_action(const RealAction& a, const LiftOptions& options = {});

}  // namespace qdj
