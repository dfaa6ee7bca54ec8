#include "qdj/cgtwist.hpp"

#include "qdj/linalg.hpp"
#include "qdj/rep.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <stdexcept>

namespace qdj {

namespace {

void require_labels(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("spin labels must be nonnegative");
}

void require_positive(const QScalar& q) {
  if (q.sign() <= 0) throw std::invalid_argument("q must be positive, got " + q.str());
}

QScalar max_of(const QScalar& x, const QScalar& y) { return x < y ? y : x; }

Real max_of(const Real& x, const Real& y) { return x < y ? y : x; }

RealMatrix kron3(const RealMatrix& x, const RealMatrix& y, const RealMatrix& z) { return kron(kron(x, y), z); }

}  // namespace

QMatrix Su2Module::K() const {
  QMatrix k(dim(), dim());
  for (std::size_t m = 0; m < dim(); ++m) k(m, m) = q.pow(weights[m]);
  return k;
}

Su2Module su2_module(int n, const QScalar& q) {
  require_positive(q);
  require_labels(n, 0);
  const auto dim = static_cast<std::size_t>(n) + 1;
  Su2Module v;
  v.q = q;
  v.E = QMatrix(dim, dim);
  v.F = QMatrix(dim, dim);
  for (int m = 0; m <= n; ++m) {
    const auto um = static_cast<std::size_t>(m);
    v.weights.push_back(n - 2 * m);
    if (m < n) v.F(um + 1, um) = q_int_or_classical(m + 1, q);
    if (m > 0) v.E(um - 1, um) = q_int_or_classical(n - m + 1, q);
  }
  v.gram = su2_gram_weights(n, q);
  return v;
}

Su2Module tensor(const Su2Module& v, const Su2Module& w) {
  if (!(v.q == w.q)) throw std::invalid_argument("tensor: modules have different q");
  Su2Module out;
  out.q = v.q;
  const QMatrix iv = QMatrix::identity(v.dim());
  const QMatrix iw = QMatrix::identity(w.dim());
  out.E = kron(v.E, w.K()) + kron(iv, w.E);
  out.F = kron(v.F, iw) + kron(inverse(v.K()), w.F);
  for (std::size_t i = 0; i < v.dim(); ++i)
    for (std::size_t j = 0; j < w.dim(); ++j) {
      out.weights.push_back(v.weights[i] + w.weights[j]);
      out.gram.push_back(v.gram[i] * w.gram[j]);
    }
  return out;
}

RealMatrix to_orthonormal_frame(const QMatrix& x, const std::vector<QScalar>& gram) {
  std::vector<Real> root(gram.size());
  for (std::size_t i = 0; i < gram.size(); ++i) root[i] = sqrt(gram[i].to_real());
  RealMatrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.rows(); ++i)
    for (std::size_t j = 0; j < x.cols(); ++j)
      if (!x(i, j).is_zero()) out(i, j) = root[i] * x(i, j).to_real() / root[j];
  return out;
}

RealMatrix CGDecomposition::isometry(std::size_t k) const {
  const CGComponent& comp = components.at(k);
  RealMatrix out(comp.embedding.rows(), comp.embedding.cols());
  for (std::size_t m = 0; m < comp.embedding.cols(); ++m) {
    const Real norm = sqrt(comp.norms_sq[m].to_real());
    for (std::size_t i = 0; i < comp.embedding.rows(); ++i) {
      if (comp.embedding(i, m).is_zero()) continue;
      out(i, m) = sqrt(gram[i].to_real()) * comp.embedding(i, m).to_real() / norm;
    }
  }
  return out;
}

std::vector<int> CGDecomposition::labels() const {
  std::vector<int> out;
  for (const auto& c : components) out.push_back(c.label);
  return out;
}

CGDecomposition cg_decompose(int a, int b, const QScalar& q) {
  require_labels(a, b);
  require_positive(q);
  const Su2Module v = tensor(su2_module(a, q), su2_module(b, q));
  const std::size_t dim = v.dim();

  CGDecomposition out;
  out.a = a;
  out.b = b;
  out.q = q;
  out.gram = v.gram;

  for (int w = 0; w <= a + b; ++w) {
    std::vector<std::size_t> source;
    std::vector<std::size_t> target;
    for (std::size_t i = 0; i < dim; ++i) {
      if (v.weights[i] == w) source.push_back(i);
      if (v.weights[i] == w + 2) target.push_back(i);
    }
    if (source.empty()) continue;
    // Highest-weight vectors of weight w: kernel of Delta(E) on the weight space.
    QMatrix restricted(std::max<std::size_t>(target.size(), 1), source.size());
    for (std::size_t r = 0; r < target.size(); ++r)
      for (std::size_t c = 0; c < source.size(); ++c) restricted(r, c) = v.E(target[r], source[c]);
    const QMatrix kernel = kernel_basis(restricted);
    for (std::size_t kcol = 0; kcol < kernel.cols(); ++kcol) {
      CGComponent comp;
      comp.label = w;
      comp.embedding = QMatrix(dim, static_cast<std::size_t>(w) + 1);
      for (std::size_t c = 0; c < source.size(); ++c) comp.embedding(source[c], 0) = kernel(c, kcol);
      for (int m = 0; m < w; ++m) {
        const QScalar scale = q_int_or_classical(m + 1, q).inverse();
        for (std::size_t i = 0; i < dim; ++i) {
          QScalar acc(0);
          for (std::size_t j = 0; j < dim; ++j)
            if (!v.F(i, j).is_zero()) acc += v.F(i, j) * comp.embedding(j, static_cast<std::size_t>(m));
          comp.embedding(i, static_cast<std::size_t>(m) + 1) = acc * scale;
        }
      }
      for (std::size_t m = 0; m < comp.embedding.cols(); ++m) {
        QScalar norm(0);
        for (std::size_t i = 0; i < dim; ++i) norm += comp.embedding(i, m) * v.gram[i] * comp.embedding(i, m);
        comp.norms_sq.push_back(norm);
      }
      out.components.push_back(std::move(comp));
    }
  }

  // Completeness: the component projectors sum to the identity.
  QMatrix total(dim, dim);
  for (const auto& comp : out.components) {
    for (std::size_t m = 0; m < comp.embedding.cols(); ++m) {
      if (comp.norms_sq[m].is_zero()) continue;
      const QScalar inv = comp.norms_sq[m].inverse();
      for (std::size_t i = 0; i < dim; ++i) {
        if (comp.embedding(i, m).is_zero()) continue;
        for (std::size_t j = 0; j < dim; ++j)
          if (!comp.embedding(j, m).is_zero())
            total(i, j) += comp.embedding(i, m) * comp.embedding(j, m) * v.gram[j] * inv;
      }
    }
  }
  out.completeness_residual = max_abs(total - QMatrix::identity(dim));

  const QMatrix k = v.K();
  out.intertwine_residual = QScalar(0);
  for (const auto& comp : out.components) {
    const Su2Module target = su2_module(comp.label, q);
    const QMatrix& phi = comp.embedding;
    out.intertwine_residual = max_of(out.intertwine_residual, max_abs(v.E * phi - phi * target.E));
    out.intertwine_residual = max_of(out.intertwine_residual, max_abs(v.F * phi - phi * target.F));
    out.intertwine_residual = max_of(out.intertwine_residual, max_abs(k * phi - phi * target.K()));
  }
  return out;
}

TwistBlock solve_twist_block(int a, int b, const QScalar& q, const Real& tol) {
  require_labels(a, b);
  require_deformation_parameter(q);
  const CGDecomposition quantum = cg_decompose(a, b, q);
  const CGDecomposition classical = cg_decompose(a, b, QScalar(1));
  if (quantum.labels() != classical.labels()) {
    throw std::runtime_error("solve_twist_block: quantum and classical decompositions disagree");
  }
  const std::size_t dim = quantum.gram.size();

  TwistBlock out;
  out.a = a;
  out.b = b;
  out.q = q;
  out.gauge = kTwistGauge;
  out.labels = quantum.labels();
  out.F = RealMatrix(dim, dim);
  std::vector<RealMatrix> quantum_iso;
  for (std::size_t k = 0; k < quantum.components.size(); ++k) {
    RealMatrix qk = quantum.isometry(k);
    RealMatrix ck = classical.isometry(k);
    Real overlap = 0;
    for (std::size_t i = 0; i < dim; ++i) overlap += qk(i, 0) * ck(i, 0);
    if (overlap < 0) qk = -qk;
    if (abs(overlap) < kInternalTol) {
      throw std::runtime_error("solve_twist_block: highest-weight overlap vanishes, gauge undefined");
    }
    out.F += qk * ck.transpose();
    quantum_iso.push_back(std::move(qk));
    out.classical_isometries.push_back(std::move(ck));
  }
  out.unitarity_residual = frobenius(out.F * out.F.transpose() - RealMatrix::identity(dim));

  const Su2Module v = tensor(su2_module(a, q), su2_module(b, q));
  const std::vector<QMatrix> generators{v.E, v.F, v.K()};
  out.intertwine_residual = 0;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    const RealMatrix lhs = to_orthonormal_frame(generators[g], v.gram);
    RealMatrix classical_image(dim, dim);
    for (std::size_t k = 0; k < out.labels.size(); ++k) {
      const Su2Module irrep = su2_module(out.labels[k], q);
      const QMatrix x = g == 0 ? irrep.E : (g == 1 ? irrep.F : irrep.K());
      const RealMatrix& ck = out.classical_isometries[k];
      classical_image += ck * to_orthonormal_frame(x, irrep.gram) * ck.transpose();
    }
    const Real r = frobenius(lhs - out.F * classical_image * out.F.transpose());
    out.intertwine_residual = max_of(out.intertwine_residual, r);
  }
  if (out.intertwine_residual > tol) {
    throw std::runtime_error("solve_twist_block(" + std::to_string(a) + "," + std::to_string(b) +
                             "): intertwining residual " + to_decimal_string(out.intertwine_residual, 6) +
                             " exceeds tolerance");
  }
  return out;
}

const TwistBlock& TwistTable::get(int a, int b) {
  auto it = blocks_.find({a, b});
  if (it != blocks_.end()) return it->second;
  if (omp_in_parallel()) {
    throw std::logic_error("TwistTable: block (" + std::to_string(a) + "," + std::to_string(b) +
                           ") missing inside a parallel region; precompute first");
  }
  return blocks_.emplace(std::make_pair(a, b), solve_twist_block(a, b, q_)).first->second;
}

void TwistTable::precompute(int max_label, kernels::Execution exec) {
  std::vector<std::pair<int, int>> missing;
  for (int a = 0; a <= max_label; ++a)
    for (int b = 0; b <= max_label; ++b)
      if (!contains(a, b)) missing.emplace_back(a, b);
  auto solved = kernels::generate(
      missing.size(), [&](std::size_t i) { return solve_twist_block(missing[i].first, missing[i].second, q_); },
      exec);
  for (std::size_t i = 0; i < missing.size(); ++i) blocks_.emplace(missing[i], std::move(solved[i]));
}

AssociatorBlock associator_block(int a, int b, int c, TwistTable& table,
                                 const std::optional<RealMatrix>& f12_override) {
  require_labels(a, b);
  require_labels(c, 0);
  const QScalar& q = table.q();
  const std::size_t da = static_cast<std::size_t>(a) + 1;
  const std::size_t db = static_cast<std::size_t>(b) + 1;
  const std::size_t dc = static_cast<std::size_t>(c) + 1;
  const std::size_t dim = da * db * dc;
  const RealMatrix ia = RealMatrix::identity(da);
  const RealMatrix ic = RealMatrix::identity(dc);

  const TwistBlock& f_ab = table.get(a, b);
  const TwistBlock& f_bc = table.get(b, c);
  RealMatrix f12 = f12_override ? *f12_override : f_ab.F;
  if (f12.rows() != da * db || f12.cols() != da * db) {
    throw std::invalid_argument("associator_block: F_12 override has the wrong shape");
  }
  f12 = kron(f12, ic);
  const RealMatrix f23 = kron(ia, f_bc.F);

  // (Delta (x) id)(F): decompose the first two legs classically.
  RealMatrix delta_left(dim, dim);
  for (std::size_t k = 0; k < f_ab.labels.size(); ++k) {
    const RealMatrix lift = kron(f_ab.classical_isometries[k], ic);
    delta_left += lift * table.get(f_ab.labels[k], c).F * lift.transpose();
  }
  // (id (x) Delta)(F): decompose the last two legs classically.
  RealMatrix delta_right(dim, dim);
  for (std::size_t k = 0; k < f_bc.labels.size(); ++k) {
    const RealMatrix lift = kron(ia, f_bc.classical_isometries[k]);
    delta_right += lift * table.get(a, f_bc.labels[k]).F * lift.transpose();
  }

  AssociatorBlock out;
  out.a = a;
  out.b = b;
  out.c = c;
  out.q = q;
  out.Phi = delta_right.transpose() * f23.transpose() * f12 * delta_left;
  const RealMatrix id = RealMatrix::identity(dim);
  out.unitarity_residual = frobenius(out.Phi * out.Phi.transpose() - id);
  out.identity_residual = frobenius(out.Phi - id);

  const Su2Module ca = su2_module(a, QScalar(1));
  const Su2Module cb = su2_module(b, QScalar(1));
  const Su2Module cc = su2_module(c, QScalar(1));
  const RealMatrix ib = RealMatrix::identity(db);
  auto triple = [&](const QMatrix& xa, const QMatrix& xb, const QMatrix& xc) {
    return kron3(to_orthonormal_frame(xa, ca.gram), ib, ic) + kron3(ia, to_orthonormal_frame(xb, cb.gram), ic) +
           kron3(ia, ib, to_orthonormal_frame(xc, cc.gram));
  };
  const Su2Module qa = su2_module(a, q);
  const Su2Module qb = su2_module(b, q);
  const Su2Module qc = su2_module(c, q);
  const RealMatrix k3 = kron3(to_real(qa.K()), to_real(qb.K()), to_real(qc.K()));
  const std::vector<RealMatrix> images{triple(ca.E, cb.E, cc.E), triple(ca.F, cb.F, cc.F), k3};
  out.commutation_residual = 0;
  for (const auto& x : images) out.commutation_residual = max_of(out.commutation_residual, frobenius(commutator(out.Phi, x)));
  return out;
}

AssociatorBlock associator_block(int a, int b, int c, const QScalar& q) {
  TwistTable table(q);
  return associator_block(a, b, c, table);
}

std::vector<TwistBlock> twist_sweep(int max_spin, const QScalar& q, kernels::Execution exec) {
  require_deformation_parameter(q);
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a <= max_spin; ++a)
    for (int b = 0; b <= max_spin; ++b) pairs.emplace_back(a, b);
  return kernels::generate(
      pairs.size(), [&](std::size_t i) { return solve_twist_block(pairs[i].first, pairs[i].second, q); }, exec);
}

std::vector<AssociatorBlock> associator_sweep(int max_triple, const QScalar& q, kernels::Execution exec) {
  require_deformation_parameter(q);
  TwistTable table(q);
  table.precompute(2 * max_triple, exec);
  std::vector<std::array<int, 3>> triples;
  for (int a = 0; a <= max_triple; ++a)
    for (int b = 0; b <= max_triple; ++b)
      for (int c = 0; c <= max_triple; ++c) triples.push_back({a, b, c});
  return kernels::generate(
      triples.size(),
      [&](std::size_t i) { return associator_block(triples[i][0], triples[i][1], triples[i][2], table); }, exec);
}

}  // namespace qdj
