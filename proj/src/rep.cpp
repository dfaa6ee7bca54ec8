#include "qdj/rep.hpp"

#include "qdj/detail/report_builder.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace qdj {

using detail::ReportBuilder;
using detail::scalar;

namespace {


template <class S>
void require_compatible(const BasicRep<S>& r1, const BasicRep<S>& r2) {
  if (!(r1.cartan == r2.cartan)) throw std::invalid_argument("tensor: representations have different Cartan data");
  if (!(r1.q == r2.q)) throw std::invalid_argument("tensor: representations have different q");
}

template <class S>
void require_shapes(const BasicRep<S>& r) {
  const auto n = static_cast<std::size_t>(r.rank());
  if (r.E.size() != n || r.F.size() != n || r.K.size() != n) {
    throw std::invalid_argument("rep: need one E, F and K matrix per node");
  }
  auto check = [&](const Matrix<S>& m, const char* what) {
    if (m.rows() != r.dim || m.cols() != r.dim) {
      throw std::invalid_argument(std::string("rep: ") + what + " is not " + std::to_string(r.dim) + "x" +
                                  std::to_string(r.dim));
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    check(r.E[i], "E");
    check(r.F[i], "F");
    check(r.K[i], "K");
  }
  check(r.gram, "gram");
}

// Exponent m with q^m == x, if any.
std::optional<long> exact_log(const QScalar& x, const QScalar& q) {
  if (x.sign() <= 0) return std::nullopt;
  const double ratio = std::log(approx_double(x)) / std::log(approx_double(q));
  if (!std::isfinite(ratio)) return std::nullopt;
  const long m = std::lround(ratio);
  if (q.pow(m) == x) return m;
  return std::nullopt;
}

QScalar exact_spectrum_defect(const QMatrix& k, const QScalar& qi) {
  const std::size_t n = k.rows();
  if (k.is_diagonal()) {
    long missing = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (!exact_log(k(i, i), qi)) ++missing;
    return QScalar(missing);
  }
  // Sum of geometric multiplicities over the candidate eigenvalues q_i^m.
  auto row_bound = [](const QMatrix& m) {
    double best = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      double s = 0;
      for (std::size_t j = 0; j < m.cols(); ++j) s += std::fabs(approx_double(m(i, j)));
      best = std::max(best, s);
    }
    return best;
  };
  QMatrix kinv;
  try {
    kinv = inverse(k);
  } catch (const std::domain_error&) {
    return QScalar(static_cast<long>(n));
  }
  const double lq = std::log(approx_double(qi));
  const double hi = std::log(row_bound(k) * 1.01) / lq;
  const double lo = -std::log(row_bound(kinv) * 1.01) / lq;
  const long m0 = static_cast<long>(std::floor(std::min(hi, lo)));
  const long m1 = static_cast<long>(std::ceil(std::max(hi, lo)));
  long found = 0;
  for (long m = m0; m <= m1; ++m) {
    QMatrix shifted = k - qi.pow(m) * QMatrix::identity(n);
    found += static_cast<long>(n - exact_rank(shifted));
  }
  return QScalar(static_cast<long>(n) - found);
}

Real real_spectrum_defect(const RealMatrix& k, const QScalar& qi) {
  const RealMatrix sym = (k + k.transpose()) * Real("0.5");
  Real defect = frobenius(k - sym);
  const SymmetricEigen eig = symmetric_eigen(sym);
  const Real lq = log(qi.to_real());
  const Real qr = qi.to_real();
  for (const auto& lambda : eig.values) {
    if (lambda <= 0) {
      const Real bad = abs(lambda) + 1;
      if (bad > defect) defect = bad;
      continue;
    }
    const Real m = round(log(lambda) / lq);
    const Real off = abs(lambda - pow(qr, m));
    if (off > defect) defect = off;
  }
  return defect;
}

bool gram_positive_exact(const QMatrix& g) {
  if (!(g == g.transpose())) return false;
  QMatrix a = g;
  const std::size_t n = a.rows();
  for (std::size_t p = 0; p < n; ++p) {
    if (a(p, p).sign() <= 0) return false;
    for (std::size_t r = p + 1; r < n; ++r) {
      if (a(r, p).is_zero()) continue;
      const QScalar f = a(r, p) / a(p, p);
      for (std::size_t c = p; c < n; ++c) a(r, c) -= f * a(p, c);
    }
  }
  return true;
}


}  // namespace

template <class S>
Matrix<S> BasicRep<S>::adjoint(const Matrix<S>& x) const {
  return inverse(gram) * x.transpose() * gram;
}

std::vector<QScalar> su2_gram_weights(int n, const QScalar& q) {
  std::vector<QScalar> g(static_cast<std::size_t>(n) + 1);
  g[0] = QScalar(1);
  for (int m = 1; m <= n; ++m) {
    // g_m / g_{m-1} = [n-m+1] / (q^{n-2m} [m]).
    g[static_cast<std::size_t>(m)] = g[static_cast<std::size_t>(m) - 1] * q_int_or_classical(n - m + 1, q) /
                                     (q.pow(n - 2 * m) * q_int_or_classical(m, q));
  }
  return g;
}

Rep irrep_su2(int n, const QScalar& q) {
  require_deformation_parameter(q);
  if (n < 0) throw std::invalid_argument("irrep_su2: n must be nonnegative");
  const auto dim = static_cast<std::size_t>(n) + 1;
  Rep r;
  r.cartan = builtin_cartan("A1");
  r.q = q;
  r.dim = dim;
  QMatrix e(dim, dim), f(dim, dim), k(dim, dim);
  for (int m = 0; m <= n; ++m) {
    const auto um = static_cast<std::size_t>(m);
    k(um, um) = q.pow(n - 2 * m);
    if (m < n) f(um + 1, um) = q_int(m + 1, q);
    if (m > 0) e(um - 1, um) = q_int(n - m + 1, q);
  }
  r.E = {e};
  r.F = {f};
  r.K = {k};
  const auto g = su2_gram_weights(n, q);
  r.gram = QMatrix::diagonal(g);
  return r;
}

Rep vector_rep_sln(int n, const QScalar& q) {
  require_deformation_parameter(q);
  if (n < 2) throw std::invalid_argument("vector_rep_sln: n must be at least 2");
  if (n > 5) throw std::invalid_argument("vector_rep_sln: only A1..A4 Cartan data are built in");
  const auto dim = static_cast<std::size_t>(n);
  Rep r;
  r.cartan = builtin_cartan("A" + std::to_string(n - 1));
  r.q = q;
  r.dim = dim;
  for (std::size_t i = 0; i + 1 < dim; ++i) {
    r.E.push_back(QMatrix::unit(dim, dim, i, i + 1));
    r.F.push_back(QMatrix::unit(dim, dim, i + 1, i));
    QMatrix k = QMatrix::identity(dim);
    k(i, i) = q;
    k(i + 1, i + 1) = q.inverse();
    r.K.push_back(k);
  }
  // gram_m = q^m makes E_i^dagger = K_i F_i.
  r.gram = QMatrix(dim, dim);
  for (std::size_t m = 0; m < dim; ++m) r.gram(m, m) = q.pow(static_cast<long>(m));
  return r;
}

Rep trivial_rep(const CartanDatum& cartan, const QScalar& q) {
  cartan.validate();
  Rep r;
  r.cartan = cartan;
  r.q = q;
  r.dim = 1;
  for (int i = 0; i < cartan.rank; ++i) {
    r.E.push_back(QMatrix(1, 1));
    r.F.push_back(QMatrix(1, 1));
    r.K.push_back(QMatrix::identity(1));
  }
  r.gram = QMatrix::identity(1);
  return r;
}

Rep direct_sum(const std::vector<Rep>& parts) {
  if (parts.empty()) throw std::invalid_argument("direct_sum: no summands");
  Rep out;
  out.cartan = parts.front().cartan;
  out.q = parts.front().q;
  std::vector<QMatrix> grams;
  for (const auto& p : parts) {
    require_compatible(out, p);
    out.dim += p.dim;
    grams.push_back(p.gram);
  }
  for (int i = 0; i < out.rank(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    std::vector<QMatrix> es, fs, ks;
    for (const auto& p : parts) {
      es.push_back(p.E[ui]);
      fs.push_back(p.F[ui]);
      ks.push_back(p.K[ui]);
    }
    out.E.push_back(qdj::direct_sum<QScalar>(es));
    out.F.push_back(qdj::direct_sum<QScalar>(fs));
    out.K.push_back(qdj::direct_sum<QScalar>(ks));
  }
  out.gram = qdj::direct_sum<QScalar>(grams);
  return out;
}

template <class S>
BasicRep<S> tensor(const BasicRep<S>& r1, const BasicRep<S>& r2) {
  require_compatible(r1, r2);
  require_shapes(r1);
  require_shapes(r2);
  BasicRep<S> out;
  out.cartan = r1.cartan;
  out.q = r1.q;
  out.dim = r1.dim * r2.dim;
  const auto id1 = Matrix<S>::identity(r1.dim);
  const auto id2 = Matrix<S>::identity(r2.dim);
  for (int i = 0; i < r1.rank(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    out.E.push_back(kron(r1.E[ui], r2.K[ui]) + kron(id1, r2.E[ui]));
    out.F.push_back(kron(r1.F[ui], id2) + kron(inverse(r1.K[ui]), r2.F[ui]));
    out.K.push_back(kron(r1.K[ui], r2.K[ui]));
  }
  out.gram = kron(r1.gram, r2.gram);
  return out;
}

template <class S>
BasicRep<S> invert_q(const BasicRep<S>& r) {
  require_shapes(r);
  BasicRep<S> out = r;
  out.q = r.q.inverse();
  for (int i = 0; i < r.rank(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const S qi = scalar<S>(q_i(r.cartan, r.q, i));
    out.E[ui] = (S(1) / qi) * (r.F[ui] * r.K[ui]);
    out.F[ui] = qi * (inverse(r.K[ui]) * r.E[ui]);
  }
  return out;
}

template <class S>
Matrix<S> serre_element(const CartanDatum& cartan, const QScalar& q, const std::vector<Matrix<S>>& x, int i,
                        int j) {
  const int order = 1 - cartan.entry(i, j);
  const QScalar qi = q_i(cartan, q, i);
  const auto& xi = x.at(static_cast<std::size_t>(i));
  const auto& xj = x.at(static_cast<std::size_t>(j));
  std::vector<Matrix<S>> powers{Matrix<S>::identity(xi.rows())};
  for (int p = 1; p <= order; ++p) powers.push_back(powers.back() * xi);
  Matrix<S> acc(xi.rows(), xi.cols());
  for (int k = 0; k <= order; ++k) {
    const QScalar coeff = (k % 2 == 0 ? QScalar(1) : QScalar(-1)) * q_binomial(order, k, qi);
    acc += scalar<S>(coeff) * (powers[static_cast<std::size_t>(order - k)] * xj * powers[static_cast<std::size_t>(k)]);
  }
  return acc;
}

bool RelationReport::passed() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

const RelationEntry* RelationReport::first_failure() const {
  for (const auto& e : entries)
    if (!e.pass) return &e;
  return nullptr;
}

template <class S>
RelationReport verify_relations(const BasicRep<S>& r, const Real& tol) {
  require_shapes(r);
  ReportBuilder<S> out(tol);
  const int n = r.rank();
  const std::size_t dim = r.dim;
  const auto id = Matrix<S>::identity(dim);

  std::vector<Matrix<S>> kinv;
  for (int i = 0; i < n; ++i) {
    try {
      kinv.push_back(inverse(r.K[static_cast<std::size_t>(i)]));
      out.add_scalar("K_invertible", i, i, S(0));
    } catch (const std::domain_error&) {
      kinv.emplace_back(dim, dim);
      out.add_scalar("K_invertible", i, i, S(1));
    }
  }

  Matrix<S> gram_inv(dim, dim);
  bool gram_ok = true;
  if constexpr (is_exact_v<S>) {
    gram_ok = gram_positive_exact(r.gram);
  } else {
    try {
      (void)cholesky_upper((r.gram + r.gram.transpose()) * Real("0.5"));
      gram_ok = frobenius(r.gram - r.gram.transpose()) <= tol;
    } catch (const std::domain_error&) {
      gram_ok = false;
    }
  }
  out.add_scalar("gram_positive", 0, 0, gram_ok ? S(0) : S(1));
  if (gram_ok) gram_inv = inverse(r.gram);
  auto adjoint = [&](const Matrix<S>& x) { return gram_inv * x.transpose() * r.gram; };

  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const QScalar qi = q_i(r.cartan, r.q, i);
    for (int j = 0; j < n; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      const int aij = r.cartan.entry(i, j);
      if (i < j) out.add("K_commute", i, j, r.K[ui] * r.K[uj] - r.K[uj] * r.K[ui]);
      out.add("K_E", i, j, r.K[ui] * r.E[uj] * kinv[ui] - scalar<S>(qi.pow(aij)) * r.E[uj]);
      out.add("K_F", i, j, r.K[ui] * r.F[uj] * kinv[ui] - scalar<S>(qi.pow(-aij)) * r.F[uj]);
      Matrix<S> ef = commutator(r.E[ui], r.F[uj]);
      if (i == j) ef -= scalar<S>((qi - qi.inverse()).inverse()) * (r.K[ui] - kinv[ui]);
      out.add("EF_commutator", i, j, ef);
      if (i != j) {
        out.add("serre_E", i, j, serre_element(r.cartan, r.q, r.E, i, j));
        out.add("serre_F", i, j, serre_element(r.cartan, r.q, r.F, i, j));
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    out.add("star_E", i, i, adjoint(r.E[ui]) - r.K[ui] * r.F[ui]);
    out.add("star_F", i, i, adjoint(r.F[ui]) - r.E[ui] * kinv[ui]);
    out.add("star_K", i, i, adjoint(r.K[ui]) - r.K[ui]);
    const QScalar qi = q_i(r.cartan, r.q, i);
    if constexpr (is_exact_v<S>) {
      out.add_scalar("weight_spectrum", i, i, exact_spectrum_defect(r.K[ui], qi));
    } else {
      out.add_scalar("weight_spectrum", i, i, real_spectrum_defect(r.K[ui], qi));
    }
    // m o (S (x) id) o Delta and m o (id (x) S) o Delta on each generator.
    const Matrix<S> s_e = -(r.E[ui] * kinv[ui]);
    const Matrix<S> s_f = -(r.K[ui] * r.F[ui]);
    out.add("antipode_left_E", i, i, s_e * r.K[ui] + r.E[ui]);
    out.add("antipode_right_E", i, i, r.E[ui] * kinv[ui] + s_e);
    out.add("antipode_left_F", i, i, s_f + r.K[ui] * r.F[ui]);
    out.add("antipode_right_F", i, i, r.F[ui] + kinv[ui] * s_f);
    out.add("antipode_K", i, i, kinv[ui] * r.K[ui] - id);
  }
  return out.take();
}

RealRep to_real(const Rep& r) {
  RealRep out;
  out.cartan = r.cartan;
  out.q = r.q;
  out.dim = r.dim;
  for (const auto& m : r.E) out.E.push_back(to_real(m));
  for (const auto& m : r.F) out.F.push_back(to_real(m));
  for (const auto& m : r.K) out.K.push_back(to_real(m));
  out.gram = to_real(r.gram);
  return out;
}

template struct BasicRep<QScalar>;
template struct BasicRep<Real>;
template Rep tensor(const Rep&, const Rep&);
template RealRep tensor(const RealRep&, const RealRep&);
template Rep invert_q(const Rep&);
template RealRep invert_q(const RealRep&);
template RelationReport verify_relations(const Rep&, const Real&);
template RelationReport verify_relations(const RealRep&, const Real&);
template QMatrix serre_element(const CartanDatum&, const QScalar&, const std::vector<QMatrix>&, int, int);
template RealMatrix serre_element(const CartanDatum&, const QScalar&, const std::vector<RealMatrix>&, int, int);

}  // namespace qdj
