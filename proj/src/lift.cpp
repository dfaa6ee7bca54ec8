#include "qdj/lift.hpp"

#include "qdj/kernels.hpp"
#include "qdj/linalg.hpp"

#include <array>

namespace qdj {

std::string to_string(LiftErrorKind kind) {
  switch (kind) {
    case LiftErrorKind::degenerate_input: return "degenerate-input";
    case LiftErrorKind::not_a_module_action: return "not-a-module-action";
    case LiftErrorKind::inconsistent_action: return "inconsistent-action";
    case LiftErrorKind::positivity_violation: return "positivity-violation";
    case LiftErrorKind::unsupported_parameter: return "unsupported-parameter";
    case LiftErrorKind::internal_failure: return "internal-failure";
  }
  return "unknown";
}

LiftError::LiftError(std::string stage, LiftErrorKind kind, int node, const std::string& detail)
    : std::runtime_error(stage + " [" + to_string(kind) + ", node " + std::to_string(node) + "]: " + detail),
      stage_(std::move(stage)),
      kind_(kind),
      node_(node) {}

namespace {

std::string fmt(const Real& x) { return to_decimal_string(x, 6); }

RealMatrix block_part(const RealMatrix& m, const AlgebraLayout& layout, std::size_t j) {
  return m.block(layout.space_offset(j), layout.space_offset(j), layout.size(j), layout.size(j));
}

RealMatrix unit(const AlgebraLayout& layout, std::size_t j, std::size_t r, std::size_t s) {
  return RealMatrix::unit(layout.space_dim(), layout.space_dim(), layout.space_offset(j) + r,
                          layout.space_offset(j) + s);
}

std::size_t unit_index(const AlgebraLayout& layout, std::size_t j, std::size_t r, std::size_t s) {
  return layout.vec_offset(j) + r * layout.size(j) + s;
}

/// sqrt(sum over matrix units a of ||observed(a) - predicted(a)||^2), where
/// observed(a) is column a of `op`.
template <class Predict>
Real operator_residual(const RealMatrix& op, const AlgebraLayout& layout, Predict predicted) {
  Real acc = 0;
  for (std::size_t j = 0; j < layout.block_count(); ++j)
    for (std::size_t r = 0; r < layout.size(j); ++r)
      for (std::size_t s = 0; s < layout.size(j); ++s) {
        const RealMatrix diff = layout.column(op, unit_index(layout, j, r, s)) - predicted(unit(layout, j, r, s));
        for (const auto& x : diff.flat()) acc += x * x;
      }
  return sqrt(acc);
}

/// Distance of a block-diagonal matrix from the center of A, and the
/// per-block scalars of its central part.
std::pair<Real, std::vector<Real>> central_part(const RealMatrix& c, const AlgebraLayout& layout) {
  std::vector<Real> scalars;
  RealMatrix center(c.rows(), c.cols());
  for (std::size_t j = 0; j < layout.block_count(); ++j) {
    const RealMatrix cj = block_part(c, layout, j);
    const Real gamma = cj.trace() / Real(layout.size(j));
    scalars.push_back(gamma);
    for (std::size_t p = 0; p < layout.size(j); ++p) center(layout.space_offset(j) + p, layout.space_offset(j) + p) = gamma;
  }
  return {frobenius(c - center), scalars};
}

/// Minimum-norm least-squares g with [g, e_rs] = targets[j][r n + s] on each
/// block. The normal operator of g -> ([g, e_rs])_rs is 2n (I - P), P the
/// projection onto the identity, and the right-hand side is orthogonal to
/// the identity, so the solution is (sum_rs T_rs e_sr - e_sr T_rs) / 2n.
RealMatrix solve_commutator_system(const AlgebraLayout& layout, const std::vector<std::vector<RealMatrix>>& targets) {
  std::vector<RealMatrix> parts;
  for (std::size_t j = 0; j < layout.block_count(); ++j) {
    const std::size_t n = layout.size(j);
    RealMatrix g(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) {
        const RealMatrix& t = targets[j][r * n + s];
        for (std::size_t p = 0; p < n; ++p) g(p, r) += t(p, s);
        for (std::size_t p = 0; p < n; ++p) g(s, p) -= t(r, p);
      }
    parts.push_back(g * (Real(1) / Real(2 * n)));
  }
  return direct_sum(std::span<const RealMatrix>(parts));
}

RealAction orthonormal(const RealAction& a) { return a.gram.empty() ? a : to_orthonormal_frame(a); }

Real qreal(const QScalar& x) { return x.to_real(); }

}  // namespace

RealMatrix implement_k(const RealAction& a, int node, const LiftOptions& options) {
  const char* stage = "implement_k";
  const AlgebraLayout layout = a.layout();
  const RealMatrix& kmap = a.K.at(static_cast<std::size_t>(node));
  std::vector<RealMatrix> parts;
  for (std::size_t j = 0; j < layout.block_count(); ++j) {
    const std::size_t n = layout.size(j);
    // Normal matrix of s -> (K(e_rs) s - s e_rs)_rs on M_n.
    std::vector<RealMatrix> images;
    RealMatrix gram_sum(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) {
        images.push_back(block_part(layout.column(kmap, unit_index(layout, j, r, s)), layout, j));
        gram_sum += images.back().transpose() * images.back();
      }
    RealMatrix normal = kron(gram_sum, RealMatrix::identity(n));
    for (std::size_t i = 0; i < n * n; ++i) normal(i, i) += Real(n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s)
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q) {
            const Real v = images[r * n + s](p, q);
            normal(p * n + r, q * n + s) -= v;
            normal(q * n + s, p * n + r) -= v;
          }
    const RealMatrix null = CompleteOrthogonalDecomposition(normal, options.internal_tol).null_space();
    if (null.cols() != 1) {
      throw LiftError(stage, LiftErrorKind::degenerate_input, node,
                      "intertwiner space of block " + std::to_string(j) + " has dimension " +
                          std::to_string(null.cols()) + ", expected 1");
    }
    RealMatrix s(n, n);
    for (std::size_t i = 0; i < n * n; ++i) s.flat()[i] = null(i, 0);
    RealMatrix kj = spd_sqrt(s * s.transpose());
    const SymmetricEigen eig = symmetric_eigen(kj);
    Real det = 1;
    for (const auto& v : eig.values) det *= v;
    if (eig.values.front() <= 0) {
      throw LiftError(stage, LiftErrorKind::internal_failure, node,
                      "implementing matrix of block " + std::to_string(j) + " is not positive");
    }
    kj = kj * (Real(1) / pow(det, Real(1) / Real(n)));
    parts.push_back(std::move(kj));
  }
  RealMatrix k = direct_sum(std::span<const RealMatrix>(parts));
  const RealMatrix k_inv = inverse(k);
  const Real residual = operator_residual(kmap, layout, [&](const RealMatrix& u) { return k * u * k_inv; });
  if (residual > options.tol) {
    throw LiftError(stage, LiftErrorKind::not_a_module_action, node,
                    "K is not implemented by conjugation (residual " + fmt(residual) + ")");
  }
  return k;
}

RealMatrix solve_coboundary_e(const RealAction& a, int node, const RealMatrix& k, const LiftOptions& options) {
  const char* stage = "solve_coboundary_e";
  const AlgebraLayout layout = a.layout();
  const RealMatrix& emap = a.E.at(static_cast<std::size_t>(node));
  std::vector<std::vector<RealMatrix>> targets(layout.block_count());
  for (std::size_t j = 0; j < layout.block_count(); ++j)
    for (std::size_t r = 0; r < layout.size(j); ++r)
      for (std::size_t s = 0; s < layout.size(j); ++s)
        targets[j].push_back(block_part(layout.column(emap, unit_index(layout, j, r, s)) * k, layout, j));
  RealMatrix e = solve_commutator_system(layout, targets);

  const RealMatrix k_inv = inverse(k);
  const Real residual = operator_residual(emap, layout, [&](const RealMatrix& u) { return commutator(e, u) * k_inv; });
  if (residual > options.tol) {
    throw LiftError(stage, LiftErrorKind::not_a_module_action, node,
                    "E is not a twisted coboundary (residual " + fmt(residual) + ")");
  }
  const Real q2 = qreal(q_i(a.cartan, a.q, node).pow(2));
  const RealMatrix c = k * e * k_inv - q2 * e;
  const Real defect = central_part(c, layout).first;
  if (defect > options.tol) {
    throw LiftError(stage, LiftErrorKind::inconsistent_action, node,
                    "k e k^-1 - q^2 e is not central (defect " + fmt(defect) + ")");
  }
  return e - c * (Real(1) / (Real(1) - q2));
}

RealMatrix solve_coboundary_f(const RealAction& a, int node, const RealMatrix& k, const LiftOptions& options) {
  const char* stage = "solve_coboundary_f";
  const AlgebraLayout layout = a.layout();
  const RealMatrix& fmap = a.F.at(static_cast<std::size_t>(node));
  std::vector<std::vector<RealMatrix>> targets(layout.block_count());
  for (std::size_t j = 0; j < layout.block_count(); ++j)
    for (std::size_t r = 0; r < layout.size(j); ++r)
      for (std::size_t s = 0; s < layout.size(j); ++s)
        targets[j].push_back(block_part(k * layout.column(fmap, unit_index(layout, j, r, s)), layout, j));
  RealMatrix g = solve_commutator_system(layout, targets);

  const RealMatrix k_inv = inverse(k);
  const RealMatrix f0 = k_inv * g;
  const Real residual =
      operator_residual(fmap, layout, [&](const RealMatrix& u) { return f0 * u - k_inv * u * k * f0; });
  if (residual > options.tol) {
    throw LiftError(stage, LiftErrorKind::not_a_module_action, node,
                    "F is not a twisted coboundary (residual " + fmt(residual) + ")");
  }
  // k g k^-1 - q^-2 g is central, while k f k^-1 - q^-2 f is only k^-1 times a central element.
  const Real q2inv = qreal(q_i(a.cartan, a.q, node).pow(-2));
  const RealMatrix c = k * g * k_inv - q2inv * g;
  const Real defect = central_part(c, layout).first;
  if (defect > options.tol) {
    throw LiftError(stage, LiftErrorKind::inconsistent_action, node,
                    "k g k^-1 - q^-2 g is not central (defect " + fmt(defect) + ")");
  }
  return k_inv * (g - c * (Real(1) / (Real(1) - q2inv)));
}

NormalizedPair normalize_commutator(const RealMatrix& e, const RealMatrix& f, const RealMatrix& k,
                                    const QScalar& qi, const std::vector<std::size_t>& blocks,
                                    const LiftOptions& options) {
  const char* stage = "normalize_commutator";
  if (!(qi.sign() > 0 && qi < QScalar(1))) {
    throw LiftError(stage, LiftErrorKind::unsupported_parameter, -1, "requires 0 < q_i < 1, got " + qi.str());
  }
  const AlgebraLayout layout(blocks);
  const Real delta = qreal(qi - qi.inverse());
  const RealMatrix c = (commutator(e, f) - k * (Real(1) / delta)) * k;
  const auto [defect, gammas] = central_part(c, layout);
  if (defect > options.tol) {
    throw LiftError(stage, LiftErrorKind::inconsistent_action, -1,
                    "([e,f] - k/(q-q^-1)) k is not central (defect " + fmt(defect) + ")");
  }
  NormalizedPair out;
  RealMatrix scale(k.rows(), k.cols());
  for (std::size_t j = 0; j < layout.block_count(); ++j) {
    const Real mu = -gammas[j] * delta;
    if (!(mu > options.internal_tol)) {
      throw LiftError(stage, LiftErrorKind::positivity_violation, -1,
                      "-c'(q-q^-1) on block " + std::to_string(j) + " is " + fmt(mu) + ", not positive");
    }
    out.lambda.push_back(Real(1) / sqrt(mu));
    for (std::size_t p = 0; p < layout.size(j); ++p)
      scale(layout.space_offset(j) + p, layout.space_offset(j) + p) = out.lambda.back();
  }
  out.e = scale * e;
  out.k = scale * k;
  return out;
}

bool LiftResult::passed(const Real& tol) const {
  for (const auto& [name, value] : residuals)
    if (!(value <= tol)) return false;
  return true;
}

RealRep LiftResult::as_rep() const {
  RealRep r;
  r.cartan = cartan;
  r.q = q;
  r.dim = k.empty() ? 0 : k.front().rows();
  r.E = e;
  r.F = f;
  r.K = k;
  r.gram = RealMatrix::identity(r.dim);
  return r;
}

namespace {

struct NodeLift {
  RealMatrix e, f, k;
};

NodeLift lift_node(const RealAction& a, int node, const LiftOptions& options) {
  const RealMatrix k = implement_k(a, node, options);
  const RealMatrix e = solve_coboundary_e(a, node, k, options);
  const RealMatrix f = solve_coboundary_f(a, node, k, options);
  try {
    NormalizedPair n = normalize_commutator(e, f, k, q_i(a.cartan, a.q, node), a.blocks, options);
    return {std::move(n.e), f, std::move(n.k)};
  } catch (const LiftError& err) {
    // Re-tag with the node index.
    const std::string what = err.what();
    throw LiftError(err.stage(), err.kind(), node, what.substr(what.find("]: ") + 3));
  }
}

}  // namespace

LiftResult lift_action(const RealAction& input, const LiftOptions& options) {
  input.validate();
  if (input.q.sign() <= 0 || input.q == QScalar(1)) {
    throw LiftError("lift_action", LiftErrorKind::unsupported_parameter, -1,
                    "q must be positive and different from 1, got " + input.q.str());
  }
  const RealAction a = orthonormal(input);
  const AlgebraLayout layout = a.layout();
  const bool inverted = QScalar(1) < a.q;
  const RealAction work = inverted ? invert_q(a) : a;

  std::vector<NodeLift> nodes = kernels::generate(static_cast<std::size_t>(a.rank()), [&](std::size_t i) {
    return lift_node(work, static_cast<int>(i), options);
  });

  LiftResult out;
  out.cartan = a.cartan;
  out.q = a.q;
  out.blocks = a.blocks;
  out.inverted = inverted;
  for (int i = 0; i < a.rank(); ++i) {
    NodeLift& n = nodes[static_cast<std::size_t>(i)];
    if (inverted) {
      // The lift at 1/q gives e' = q_i^-1 f k and f' = q_i k^-1 e.
      const Real qi = qreal(q_i(a.cartan, a.q, i));
      const RealMatrix k_inv = inverse(n.k);
      const RealMatrix e = qi * (n.f * n.k);
      const RealMatrix f = (Real(1) / qi) * (k_inv * n.e);
      n.e = e;
      n.f = f;
    }
    out.e.push_back(std::move(n.e));
    out.f.push_back(std::move(n.f));
    out.k.push_back(std::move(n.k));
  }

  const std::array<const char*, 10> keys{"k_implements", "e_coboundary", "f_coboundary", "kek_scaling",
                                         "kfk_scaling",  "ef_commutator", "star_identity", "serre_x",
                                         "serre_y",      "module_compat"};
  for (const char* key : keys) out.residuals[key] = 0;
  if (a.rank() > 1) out.residuals["cross_relations"] = 0;
  auto record = [&](const char* key, const Real& v) {
    Real& slot = out.residuals[key];
    if (slot < v) slot = v;
  };

  for (int i = 0; i < a.rank(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const RealMatrix& e = out.e[ui];
    const RealMatrix& f = out.f[ui];
    const RealMatrix& k = out.k[ui];
    const RealMatrix k_inv = inverse(k);
    const QScalar qi = q_i(a.cartan, a.q, i);
    const Real qr = qreal(qi);
    record("k_implements", operator_residual(a.K[ui], layout, [&](const RealMatrix& u) { return k * u * k_inv; }));
    record("e_coboundary",
           operator_residual(a.E[ui], layout, [&](const RealMatrix& u) { return commutator(e, u) * k_inv; }));
    record("f_coboundary",
           operator_residual(a.F[ui], layout, [&](const RealMatrix& u) { return f * u - k_inv * u * k * f; }));
    record("kek_scaling", frobenius(k * e * k_inv - (qr * qr) * e));
    record("kfk_scaling", frobenius(k * f * k_inv - (Real(1) / (qr * qr)) * f));
    record("ef_commutator", frobenius(commutator(e, f) - (k - k_inv) * (Real(1) / qreal(qi - qi.inverse()))));
    record("star_identity", frobenius(e.transpose() - k * f));

    // pi(x) a - sum (x_1 . a) pi(x_2), with the module maps taken from the input.
    const RealMatrix kmap_inv = inverse(a.K[ui]);
    Real compat = 0;
    for (std::size_t j = 0; j < layout.block_count(); ++j)
      for (std::size_t r = 0; r < layout.size(j); ++r)
        for (std::size_t s = 0; s < layout.size(j); ++s) {
          const std::size_t idx = unit_index(layout, j, r, s);
          const RealMatrix u = unit(layout, j, r, s);
          const std::array<RealMatrix, 3> diffs{
              e * u - layout.column(a.E[ui], idx) * k - u * e,
              f * u - layout.column(a.F[ui], idx) - layout.column(kmap_inv, idx) * f,
              k * u - layout.column(a.K[ui], idx) * k,
          };
          for (const auto& d : diffs)
            for (const auto& x : d.flat()) compat += x * x;
        }
    record("module_compat", sqrt(compat));

    for (int j = 0; j < a.rank(); ++j) {
      if (i == j) continue;
      const auto uj = static_cast<std::size_t>(j);
      record("serre_x", frobenius(serre_element(a.cartan, a.q, out.e, i, j)));
      record("serre_y", frobenius(serre_element(a.cartan, a.q, out.f, i, j)));
      const int aij = a.cartan.entry(i, j);
      record("cross_relations", frobenius(k * out.e[uj] * k_inv - qreal(qi.pow(aij)) * out.e[uj]));
      record("cross_relations", frobenius(k * out.f[uj] * k_inv - qreal(qi.pow(-aij)) * out.f[uj]));
      record("cross_relations", frobenius(commutator(e, out.f[uj])));
      record("cross_relations", frobenius(commutator(k, out.k[uj])));
    }
  }
  return out;
}

}  // namespace qdj
