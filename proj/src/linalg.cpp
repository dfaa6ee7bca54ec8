#include "qdj/linalg.hpp"

#include <cmath>

namespace qdj {

namespace {

struct Echelon {
  QMatrix reduced;
  std::vector<std::size_t> pivot_cols;
};

Echelon rref(const QMatrix& m) {
  Echelon e{m, {}};
  QMatrix& a = e.reduced;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = a.rows();
    for (std::size_t r = row; r < a.rows(); ++r)
      if (!a(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv == a.rows()) continue;
    if (piv != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(piv, j), a(row, j));
    const QScalar p = a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) /= p;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const QScalar f = a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(r, j) -= f * a(row, j);
    }
    e.pivot_cols.push_back(col);
    ++row;
  }
  return e;
}

// Householder vector v (v[0] = 1 convention not used; v is stored unscaled)
// such that (I - 2 v v^T / v^T v) x = -sign(x0) |x| e0. Returns the resulting
// diagonal entry.
Real make_reflector(std::vector<Real>& x) {
  Real norm = 0;
  for (const auto& xi : x) norm += xi * xi;
  norm = sqrt(norm);
  if (norm == 0) {
    x.clear();
    return 0;
  }
  const Real alpha = x[0] >= 0 ? Real(-norm) : norm;
  x[0] -= alpha;
  return alpha;
}

// Applies H = I - 2 v v^T / (v^T v) to rows [offset, offset + v.size()) of
// the given columns of `a`.
void apply_reflector_cols(const std::vector<Real>& v, std::size_t offset, RealMatrix& a,
                          std::size_t col_begin) {
  if (v.empty()) return;
  Real vv = 0;
  for (const auto& vi : v) vv += vi * vi;
  for (std::size_t j = col_begin; j < a.cols(); ++j) {
    Real dot = 0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * a(offset + i, j);
    const Real f = 2 * dot / vv;
    for (std::size_t i = 0; i < v.size(); ++i) a(offset + i, j) -= f * v[i];
  }
}

void apply_reflector_vec(const std::vector<Real>& v, std::size_t offset, std::vector<Real>& b) {
  if (v.empty()) return;
  Real vv = 0;
  Real dot = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    vv += v[i] * v[i];
    dot += v[i] * b[offset + i];
  }
  const Real f = 2 * dot / vv;
  for (std::size_t i = 0; i < v.size(); ++i) b[offset + i] -= f * v[i];
}

}  // namespace

QMatrix kernel_basis(const QMatrix& m) {
  const Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  QMatrix basis(m.cols(), free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    basis(f, k) = QScalar(1);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) basis(e.pivot_cols[r], k) = -e.reduced(r, f);
  }
  return basis;
}

std::size_t exact_rank(const QMatrix& m) { return rref(m).pivot_cols.size(); }

CompleteOrthogonalDecomposition::CompleteOrthogonalDecomposition(const RealMatrix& a,
                                                                 const Real& rank_tol)
    : m_(a.rows()), n_(a.cols()), perm_(a.cols()) {
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});
  RealMatrix w = a;
  const std::size_t steps = std::min(m_, n_);
  // Remaining column norms, downdated after each step and recomputed when
  // cancellation makes the downdate unreliable.
  std::vector<Real> norms(n_, Real(0));
  std::vector<Real> reference(n_);
  for (std::size_t i = 0; i < m_; ++i)
    for (std::size_t c = 0; c < n_; ++c) norms[c] += w(i, c) * w(i, c);
  reference = norms;
  Real first_pivot = 0;
  for (std::size_t j = 0; j < steps; ++j) {
    std::size_t best = j;
    for (std::size_t c = j + 1; c < n_; ++c)
      if (norms[c] > norms[best]) best = c;
    const Real best_norm = sqrt(norms[best]);
    if (j == 0) first_pivot = best_norm;
    if (best_norm == 0 || best_norm <= rank_tol * first_pivot) break;
    if (best != j) {
      for (std::size_t i = 0; i < m_; ++i) std::swap(w(i, j), w(i, best));
      std::swap(perm_[j], perm_[best]);
      std::swap(norms[j], norms[best]);
      std::swap(reference[j], reference[best]);
    }
    std::vector<Real> v(m_ - j);
    for (std::size_t i = j; i < m_; ++i) v[i - j] = w(i, j);
    const Real diag = make_reflector(v);
    apply_reflector_cols(v, j, w, j);
    w(j, j) = diag;
    for (std::size_t i = j + 1; i < m_; ++i) w(i, j) = 0;
    reflectors_.push_back(std::move(v));
    pivots_.push_back(abs(diag));
    ++rank_;
    for (std::size_t c = j + 1; c < n_; ++c) {
      norms[c] -= w(j, c) * w(j, c);
      if (norms[c] < reference[c] * Real("1e-10")) {
        norms[c] = 0;
        for (std::size_t i = j + 1; i < m_; ++i) norms[c] += w(i, c) * w(i, c);
        reference[c] = norms[c];
      }
    }
  }

  // Second factorization: [R11 R12]^T = U [L; 0], U = H_0 H_1 ... H_{r-1}.
  RealMatrix rt(n_, rank_);
  for (std::size_t i = 0; i < rank_; ++i)
    for (std::size_t j = i; j < n_; ++j) rt(j, i) = w(i, j);
  for (std::size_t j = 0; j < rank_; ++j) {
    std::vector<Real> v(n_ - j);
    for (std::size_t i = j; i < n_; ++i) v[i - j] = rt(i, j);
    const Real diag = make_reflector(v);
    apply_reflector_cols(v, j, rt, j);
    rt(j, j) = diag;
    for (std::size_t i = j + 1; i < n_; ++i) rt(i, j) = 0;
    second_.push_back(std::move(v));
  }
  upper_ = rt.block(0, 0, rank_, rank_);
}

void CompleteOrthogonalDecomposition::apply_u(std::vector<Real>& y) const {
  for (std::size_t k = second_.size(); k-- > 0;) apply_reflector_vec(second_[k], k, y);
}

std::vector<Real> CompleteOrthogonalDecomposition::solve(std::span<const Real> b) const {
  if (b.size() != m_) throw std::invalid_argument("COD solve: right-hand side has wrong length");
  std::vector<Real> c(b.begin(), b.end());
  for (std::size_t j = 0; j < reflectors_.size(); ++j) apply_reflector_vec(reflectors_[j], j, c);
  // L^T z = c[0:r], L^T lower triangular.
  std::vector<Real> y(n_, Real(0));
  for (std::size_t i = 0; i < rank_; ++i) {
    Real s = c[i];
    for (std::size_t k = 0; k < i; ++k) s -= upper_(k, i) * y[k];
    y[i] = s / upper_(i, i);
  }
  apply_u(y);
  std::vector<Real> x(n_);
  for (std::size_t j = 0; j < n_; ++j) x[perm_[j]] = y[j];
  return x;
}

RealMatrix CompleteOrthogonalDecomposition::null_space() const {
  RealMatrix ns(n_, n_ - rank_);
  for (std::size_t k = rank_; k < n_; ++k) {
    std::vector<Real> y(n_, Real(0));
    y[k] = 1;
    apply_u(y);
    for (std::size_t j = 0; j < n_; ++j) ns(perm_[j], k - rank_) = y[j];
  }
  return ns;
}

SymmetricEigen symmetric_eigen(const RealMatrix& s) {
  s.require_square("symmetric_eigen");
  const std::size_t n = s.rows();
  RealMatrix a = s;
  RealMatrix v = RealMatrix::identity(n);
  Real total = 0;
  for (const auto& x : a.flat()) total += x * x;
  const Real eps = std::numeric_limits<Real>::epsilon();
  for (int sweep = 0; sweep < 100; ++sweep) {
    Real off = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) off += a(i, j) * a(i, j);
    if (off <= eps * eps * total || off == 0) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0) continue;
        const Real theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        const Real t = (theta >= 0 ? Real(1) : Real(-1)) / (abs(theta) + sqrt(theta * theta + 1));
        const Real c = 1 / sqrt(t * t + 1);
        const Real sn = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const Real akp = a(k, p);
          const Real akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(k, q) = sn * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Real apk = a(p, k);
          const Real aqk = a(q, k);
          a(p, k) = c * apk - sn * aqk;
          a(q, k) = sn * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Real vkp = v(k, p);
          const Real vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymmetricEigen out{std::vector<Real>(n), RealMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

RealMatrix spd_sqrt(const RealMatrix& s) {
  const SymmetricEigen eig = symmetric_eigen(s);
  const std::size_t n = s.rows();
  RealMatrix out(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const Real root = eig.values[k] > 0 ? sqrt(eig.values[k]) : Real(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) out(i, j) += eig.vectors(i, k) * root * eig.vectors(j, k);
  }
  return out;
}

RealMatrix cholesky_upper(const RealMatrix& s) {
  s.require_square("cholesky_upper");
  const std::size_t n = s.rows();
  RealMatrix r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    Real d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= r(k, j) * r(k, j);
    if (d <= 0) throw std::domain_error("cholesky_upper: matrix is not positive definite");
    r(j, j) = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      Real x = s(j, i);
      for (std::size_t k = 0; k < j; ++k) x -= r(k, j) * r(k, i);
      r(j, i) = x / r(j, j);
    }
  }
  return r;
}

}  // namespace qdj
