#include "qdj/action.hpp"

#include "qdj/detail/report_builder.hpp"
#include "qdj/linalg.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>

namespace qdj {

using detail::ReportBuilder;
using detail::scalar;

AlgebraLayout::AlgebraLayout(std::vector<std::size_t> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t n : blocks_) {
    if (n == 0) throw std::invalid_argument("algebra blocks must have positive size");
    vec_offsets_.push_back(algebra_dim_);
    space_offsets_.push_back(space_dim_);
    algebra_dim_ += n * n;
    space_dim_ += n;
  }
}

template <class T>
Matrix<T> AlgebraLayout::block_of(std::span<const T> v, std::size_t j) const {
  const std::size_t n = blocks_[j];
  Matrix<T> m(n, n);
  const auto src = v.subspan(vec_offsets_[j], n * n);
  std::copy(src.begin(), src.end(), m.flat().begin());
  return m;
}

template <class T>
Matrix<T> AlgebraLayout::unvec(std::span<const T> v) const {
  if (v.size() != algebra_dim_) throw std::invalid_argument("unvec: vector has the wrong length");
  Matrix<T> m(space_dim_, space_dim_);
  for (std::size_t j = 0; j < blocks_.size(); ++j) m.set_block(space_offsets_[j], space_offsets_[j], block_of(v, j));
  return m;
}

template <class T>
std::vector<T> AlgebraLayout::vec(const Matrix<T>& m) const {
  if (m.rows() != space_dim_ || m.cols() != space_dim_) throw std::invalid_argument("vec: matrix has the wrong shape");
  std::vector<T> v(algebra_dim_);
  for (std::size_t j = 0; j < blocks_.size(); ++j) {
    const std::size_t n = blocks_[j];
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s)
        v[vec_offsets_[j] + r * n + s] = m(space_offsets_[j] + r, space_offsets_[j] + s);
  }
  return v;
}

template <class T>
Matrix<T> AlgebraLayout::column(const Matrix<T>& op, std::size_t col) const {
  std::vector<T> v(op.rows());
  for (std::size_t i = 0; i < op.rows(); ++i) v[i] = op(i, col);
  return unvec(std::span<const T>(v));
}

namespace {

template <class S>
void require_square_operator(const Matrix<S>& m, std::size_t d, const char* what) {
  if (m.rows() != d || m.cols() != d) {
    throw std::invalid_argument(std::string("action: ") + what + " must be " + std::to_string(d) + "x" +
                                std::to_string(d) + ", got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
}

/// Block-diagonal operator on A from per-block operators.
template <class S>
Matrix<S> assemble(const AlgebraLayout& layout, const std::vector<Matrix<S>>& parts) {
  Matrix<S> out(layout.algebra_dim(), layout.algebra_dim());
  for (std::size_t j = 0; j < parts.size(); ++j) out.set_block(layout.vec_offset(j), layout.vec_offset(j), parts[j]);
  return out;
}

/// Applies a -> A_j a B_j blockwise to every column of `op`.
RealMatrix left_apply(const RealMatrix& op, const AlgebraLayout& layout, const std::vector<RealMatrix>& left,
                      const std::vector<RealMatrix>& right) {
  RealMatrix out(op.rows(), op.cols());
  std::vector<Real> column(op.rows());
  for (std::size_t c = 0; c < op.cols(); ++c) {
    for (std::size_t i = 0; i < op.rows(); ++i) column[i] = op(i, c);
    for (std::size_t j = 0; j < layout.block_count(); ++j) {
      const RealMatrix y = layout.block_of(std::span<const Real>(column), j);
      if (y.is_zero()) continue;
      const RealMatrix z = left[j] * y * right[j];
      const std::size_t off = layout.vec_offset(j);
      for (std::size_t k = 0; k < z.size(); ++k) out(off + k, c) = z.flat()[k];
    }
  }
  return out;
}

/// T op T^-1 where T(a) = x a x^-1 blockwise.
RealMatrix transport(const RealMatrix& op, const AlgebraLayout& layout, const std::vector<RealMatrix>& x,
                     const std::vector<RealMatrix>& x_inv) {
  const RealMatrix left = left_apply(op, layout, x, x_inv);
  // op T^-1 = ((T^-1)^T op^T)^T and (T^-1)^T acts as a -> x_inv^T a x^T.
  std::vector<RealMatrix> xt;
  std::vector<RealMatrix> xit;
  for (std::size_t j = 0; j < x.size(); ++j) {
    xt.push_back(x[j].transpose());
    xit.push_back(x_inv[j].transpose());
  }
  return left_apply(left.transpose(), layout, xit, xt).transpose();
}

RealAction transport_action(const RealAction& a, const std::vector<RealMatrix>& x,
                            const std::vector<RealMatrix>& x_inv) {
  const AlgebraLayout layout = a.layout();
  RealAction out = a;
  for (int i = 0; i < a.rank(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    out.E[ui] = transport(a.E[ui], layout, x, x_inv);
    out.F[ui] = transport(a.F[ui], layout, x, x_inv);
    out.K[ui] = transport(a.K[ui], layout, x, x_inv);
  }
  return out;
}

/// Running residual over many terms: exact max-abs, or root-sum-square.
template <class S>
class Accumulator {
 public:
  void add(const Matrix<S>& m) {
    if constexpr (is_exact_v<S>) {
      const S v = max_abs(m);
      if (value_ < v) value_ = v;
    } else {
      for (const auto& x : m.flat()) value_ += x * x;
    }
  }
  S value() const {
    if constexpr (is_exact_v<S>) {
      return value_;
    } else {
      return sqrt(value_);
    }
  }

 private:
  S value_{0};
};

}  // namespace

template <class S>
void BasicAction<S>::validate() const {
  cartan.validate();
  const AlgebraLayout l(blocks);
  const auto n = static_cast<std::size_t>(rank());
  if (E.size() != n || F.size() != n || K.size() != n) {
    throw std::invalid_argument("action: need one E, F and K operator per node");
  }
  for (std::size_t i = 0; i < n; ++i) {
    require_square_operator(E[i], l.algebra_dim(), "E");
    require_square_operator(F[i], l.algebra_dim(), "F");
    require_square_operator(K[i], l.algebra_dim(), "K");
  }
  if (!gram.empty()) {
    if (gram.size() != blocks.size()) throw std::invalid_argument("action: need one gram per block");
    for (std::size_t j = 0; j < blocks.size(); ++j)
      if (gram[j].rows() != blocks[j] || gram[j].cols() != blocks[j]) {
        throw std::invalid_argument("action: gram " + std::to_string(j) + " has the wrong shape");
      }
  }
}

Action induce_action_exact(const Rep& r, const std::vector<std::size_t>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("induce_action: empty block partition");
  const AlgebraLayout layout(blocks);
  if (layout.space_dim() != r.dim) {
    throw std::invalid_argument("induce_action: blocks sum to " + std::to_string(layout.space_dim()) +
                                " but the representation has dimension " + std::to_string(r.dim));
  }
  auto require_block_diagonal = [&](const QMatrix& m, const std::string& what) {
    for (std::size_t j = 0; j < blocks.size(); ++j)
      for (std::size_t l = 0; l < blocks.size(); ++l) {
        if (j == l) continue;
        for (std::size_t p = 0; p < blocks[j]; ++p)
          for (std::size_t s = 0; s < blocks[l]; ++s)
            if (!m(layout.space_offset(j) + p, layout.space_offset(l) + s).is_zero()) {
              throw std::invalid_argument("induce_action: " + what +
                                          " is not block-diagonal for the given partition");
            }
      }
  };
  require_block_diagonal(r.gram, "gram");
  for (int i = 0; i < r.rank(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    require_block_diagonal(r.E[ui], "E_" + std::to_string(i));
    require_block_diagonal(r.F[ui], "F_" + std::to_string(i));
    require_block_diagonal(r.K[ui], "K_" + std::to_string(i));
  }

  auto piece = [&](const QMatrix& m, std::size_t j) {
    return m.block(layout.space_offset(j), layout.space_offset(j), blocks[j], blocks[j]);
  };

  Action out;
  out.cartan = r.cartan;
  out.q = r.q;
  out.blocks = blocks;
  for (std::size_t j = 0; j < blocks.size(); ++j) out.gram.push_back(piece(r.gram, j));
  for (int i = 0; i < r.rank(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    std::vector<QMatrix> e_parts;
    std::vector<QMatrix> f_parts;
    std::vector<QMatrix> k_parts;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      const QMatrix e = piece(r.E[ui], j);
      const QMatrix f = piece(r.F[ui], j);
      const QMatrix k = piece(r.K[ui], j);
      const QMatrix k_inv = inverse(k);
      const QMatrix id = QMatrix::identity(blocks[j]);
      // vec(X a Y) = (X (x) Y^T) vec(a) in the row-major layout.
      e_parts.push_back(kron(e, k_inv.transpose()) - kron(id, (e * k_inv).transpose()));
      f_parts.push_back(kron(f, id) - kron(k_inv, (k * f).transpose()));
      k_parts.push_back(kron(k, k_inv.transpose()));
    }
    out.E.push_back(assemble(layout, e_parts));
    out.F.push_back(assemble(layout, f_parts));
    out.K.push_back(assemble(layout, k_parts));
  }
  return out;
}

RealAction to_real(const Action& a) {
  RealAction out;
  out.cartan = a.cartan;
  out.q = a.q;
  out.blocks = a.blocks;
  for (const auto& m : a.E) out.E.push_back(to_real(m));
  for (const auto& m : a.F) out.F.push_back(to_real(m));
  for (const auto& m : a.K) out.K.push_back(to_real(m));
  for (const auto& m : a.gram) out.gram.push_back(to_real(m));
  return out;
}

RealAction to_orthonormal_frame(const RealAction& a) {
  a.validate();
  if (a.gram.empty()) return a;
  std::vector<RealMatrix> x;
  std::vector<RealMatrix> x_inv;
  for (const auto& g : a.gram) {
    x.push_back(cholesky_upper(g));
    x_inv.push_back(inverse(x.back()));
  }
  RealAction out = transport_action(a, x, x_inv);
  out.gram.clear();
  return out;
}

RealAction induce_action(const Rep& r, const std::vector<std::size_t>& blocks) {
  return to_orthonormal_frame(to_real(induce_action_exact(r, blocks)));
}

RealAction conjugate(const RealAction& a, const std::vector<RealMatrix>& u) {
  a.validate();
  if (u.size() != a.blocks.size()) throw std::invalid_argument("conjugate: need one matrix per block");
  std::vector<RealMatrix> ut;
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (u[j].rows() != a.blocks[j] || u[j].cols() != a.blocks[j]) {
      throw std::invalid_argument("conjugate: matrix " + std::to_string(j) + " has the wrong shape");
    }
    ut.push_back(u[j].transpose());
  }
  RealAction out = transport_action(a, u, ut);
  for (std::size_t j = 0; j < out.gram.size(); ++j) out.gram[j] = u[j] * a.gram[j] * ut[j];
  return out;
}

template <class S>
BasicAction<S> invert_q(const BasicAction<S>& a) {
  a.validate();
  BasicAction<S> out = a;
  out.q = a.q.inverse();
  for (int i = 0; i < a.rank(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const QScalar qi = q_i(a.cartan, a.q, i);
    out.E[ui] = scalar<S>(qi.inverse()) * (a.F[ui] * a.K[ui]);
    out.F[ui] = scalar<S>(qi) * (inverse(a.K[ui]) * a.E[ui]);
  }
  return out;
}

template <class S>
RelationReport check_action(const BasicAction<S>& a, const Real& tol) {
  a.validate();
  const AlgebraLayout layout = a.layout();
  const std::size_t d = layout.algebra_dim();
  const std::size_t big = layout.space_dim();
  ReportBuilder<S> out(tol);

  Matrix<S> gram(big, big);
  for (std::size_t j = 0; j < layout.block_count(); ++j) {
    const Matrix<S> g = a.gram.empty() ? Matrix<S>::identity(layout.size(j)) : a.gram[j];
    gram.set_block(layout.space_offset(j), layout.space_offset(j), g);
  }
  const Matrix<S> gram_inv = inverse(gram);
  auto star = [&](const Matrix<S>& m) { return gram_inv * m.transpose() * gram; };
  auto act = [&](const Matrix<S>& op, const Matrix<S>& m) {
    const std::vector<S> v = layout.vec(m);
    return layout.unvec(std::span<const S>(apply(op, std::span<const S>(v))));
  };

  // Basis element index -> (block, row, col).
  struct Unit {
    std::size_t block, r, s;
  };
  std::vector<Unit> units;
  for (std::size_t j = 0; j < layout.block_count(); ++j)
    for (std::size_t r = 0; r < layout.size(j); ++r)
      for (std::size_t s = 0; s < layout.size(j); ++s) units.push_back({j, r, s});
  std::vector<Matrix<S>> basis;
  for (const auto& u : units) {
    basis.push_back(Matrix<S>::unit(big, big, layout.space_offset(u.block) + u.r, layout.space_offset(u.block) + u.s));
  }

  std::vector<Matrix<S>> k_inv_ops;
  for (int i = 0; i < a.rank(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    try {
      k_inv_ops.push_back(inverse(a.K[ui]));
      out.add_scalar("K_invertible", i, i, S(0));
    } catch (const std::domain_error&) {
      k_inv_ops.emplace_back(d, d);
      out.add_scalar("K_invertible", i, i, S(1));
    }
  }

  for (int i = 0; i < a.rank(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    std::vector<Matrix<S>> e_img, f_img, k_img, kinv_img;
    for (std::size_t c = 0; c < d; ++c) {
      e_img.push_back(layout.column(a.E[ui], c));
      f_img.push_back(layout.column(a.F[ui], c));
      k_img.push_back(layout.column(a.K[ui], c));
      kinv_img.push_back(layout.column(k_inv_ops[ui], c));
    }
    Accumulator<S> k_mult, leibniz_e, leibniz_f, star_e, star_f, star_k;
    for (std::size_t x = 0; x < d; ++x) {
      for (std::size_t y = 0; y < d; ++y) {
        // Index of the product basis[x] basis[y], if nonzero.
        std::optional<std::size_t> prod;
        if (units[x].block == units[y].block && units[x].s == units[y].r) {
          const std::size_t n = layout.size(units[x].block);
          prod = layout.vec_offset(units[x].block) + units[x].r * n + units[y].s;
        }
        Matrix<S> k_res = k_img[x] * k_img[y];
        Matrix<S> e_res = e_img[x] * k_img[y] + basis[x] * e_img[y];
        Matrix<S> f_res = f_img[x] * basis[y] + kinv_img[x] * f_img[y];
        if (prod) {
          k_res -= k_img[*prod];
          e_res -= e_img[*prod];
          f_res -= f_img[*prod];
        }
        k_mult.add(k_res);
        leibniz_e.add(e_res);
        leibniz_f.add(f_res);
      }
      const Matrix<S> a_star = star(basis[x]);
      star_e.add(star(e_img[x]) + act(a.F[ui], a_star));
      star_f.add(star(f_img[x]) + act(a.E[ui], a_star));
      star_k.add(act(a.K[ui], star(k_img[x])) - a_star);
    }
    out.add_scalar("K_automorphism", i, i, k_mult.value());
    out.add_scalar("leibniz_E", i, i, leibniz_e.value());
    out.add_scalar("leibniz_F", i, i, leibniz_f.value());
    out.add_scalar("star_E", i, i, star_e.value());
    out.add_scalar("star_F", i, i, star_f.value());
    out.add_scalar("star_K", i, i, star_k.value());
  }

  const Matrix<S> id = Matrix<S>::identity(d);
  for (int i = 0; i < a.rank(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const QScalar qi = q_i(a.cartan, a.q, i);
    for (int j = 0; j < a.rank(); ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const int aij = a.cartan.entry(i, j);
      if (i < j) out.add("K_commute", i, j, commutator(a.K[ui], a.K[uj]));
      out.add("K_E", i, j, a.K[ui] * a.E[uj] - scalar<S>(qi.pow(aij)) * (a.E[uj] * a.K[ui]));
      out.add("K_F", i, j, a.K[ui] * a.F[uj] - scalar<S>(qi.pow(-aij)) * (a.F[uj] * a.K[ui]));
      Matrix<S> ef = commutator(a.E[ui], a.F[uj]);
      if (i == j) ef = scalar<S>(qi - qi.inverse()) * (ef * a.K[ui]) - (a.K[ui] * a.K[ui] - id);
      out.add("EF_commutator", i, j, ef);
      if (i != j) {
        out.add("serre_E", i, j, serre_element(a.cartan, a.q, a.E, i, j));
        out.add("serre_F", i, j, serre_element(a.cartan, a.q, a.F, i, j));
      }
    }
  }
  return out.take();
}

template Matrix<QScalar> AlgebraLayout::block_of(std::span<const QScalar>, std::size_t) const;
template Matrix<Real> AlgebraLayout::block_of(std::span<const Real>, std::size_t) const;
template Matrix<QScalar> AlgebraLayout::unvec(std::span<const QScalar>) const;
template Matrix<Real> AlgebraLayout::unvec(std::span<const Real>) const;
template std::vector<QScalar> AlgebraLayout::vec(const Matrix<QScalar>&) const;
template std::vector<Real> AlgebraLayout::vec(const Matrix<Real>&) const;
template Matrix<QScalar> AlgebraLayout::column(const Matrix<QScalar>&, std::size_t) const;
template Matrix<Real> AlgebraLayout::column(const Matrix<Real>&, std::size_t) const;

template struct BasicAction<QScalar>;
template struct BasicAction<Real>;
template Action invert_q(const Action&);
template RealAction invert_q(const RealAction&);
template RelationReport check_action(const Action&, const Real&);
template RelationReport check_action(const RealAction&, const Real&);

}  // namespace qdj
