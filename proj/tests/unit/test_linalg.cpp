#include "qdj/linalg.hpp"
#include "qdj/random.hpp"

#include <doctest.h>

using namespace qdj;

namespace {

const Real kTight("1e-30");

RealMatrix from_columns(const std::vector<std::vector<Real>>& cols) {
  RealMatrix m(cols.front().size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < cols[j].size(); ++i) m(i, j) = cols[j][i];
  return m;
}

}  // namespace

TEST_CASE("exact inverse and kernel") {
  QMatrix m(3, 3);
  m(0, 0) = QScalar(2);
  m(0, 1) = QScalar(1, 3);
  m(1, 1) = QScalar(-1);
  m(1, 2) = QScalar(4);
  m(2, 0) = QScalar(5, 7);
  m(2, 2) = QScalar(1);
  CHECK(inverse(m) * m == QMatrix::identity(3));
  CHECK(m * inverse(m) == QMatrix::identity(3));

  QMatrix s(2, 3);
  s(0, 0) = QScalar(1);
  s(0, 1) = QScalar(2);
  s(0, 2) = QScalar(3);
  s(1, 0) = QScalar(2);
  s(1, 1) = QScalar(4);
  s(1, 2) = QScalar(6);
  const QMatrix ker = kernel_basis(s);
  CHECK(ker.cols() == 2);
  CHECK((s * ker).is_zero());
  CHECK(exact_rank(s) == 1);
  CHECK_THROWS_AS(inverse(s.block(0, 0, 2, 2)), std::domain_error);
}

TEST_CASE("COD gives the minimum-norm least-squares solution") {
  Rng rng(3);
  // Rank 3 matrix of shape 6 x 5.
  const RealMatrix a = random_matrix(6, 3, rng) * random_matrix(3, 5, rng);
  const RealMatrix b = random_matrix(6, 1, rng);
  const CompleteOrthogonalDecomposition cod(a);
  CHECK(cod.rank() == 3);
  const auto x = cod.solve(b.column(0));
  const RealMatrix xm = from_columns({x});
  // Normal equations: A^T (A x - b) = 0.
  CHECK(frobenius(a.transpose() * (a * xm - b)) < kTight);
  // Minimum norm: x lies in the row space, i.e. is orthogonal to the null space.
  const RealMatrix n = cod.null_space();
  CHECK(n.cols() == 2);
  CHECK(frobenius(a * n) < kTight);
  CHECK(frobenius(n.transpose() * n - RealMatrix::identity(2)) < kTight);
  CHECK(frobenius(n.transpose() * xm) < kTight);
}

TEST_CASE("symmetric eigen, square root and Cholesky") {
  Rng rng(5);
  const RealMatrix g = random_matrix(5, 5, rng);
  const RealMatrix s = g * g.transpose() + RealMatrix::identity(5);
  const SymmetricEigen eig = symmetric_eigen(s);
  for (std::size_t k = 1; k < eig.values.size(); ++k) CHECK(eig.values[k - 1] <= eig.values[k]);
  const RealMatrix d = RealMatrix::diagonal(std::span<const Real>(eig.values));
  CHECK(frobenius(eig.vectors * d * eig.vectors.transpose() - s) < kTight);
  const RealMatrix r = spd_sqrt(s);
  CHECK(frobenius(r * r - s) < kTight);
  CHECK(frobenius(r - r.transpose()) < kTight);
  const RealMatrix u = cholesky_upper(s);
  CHECK(frobenius(u.transpose() * u - s) < kTight);
  CHECK_THROWS_AS(cholesky_upper(-s), std::domain_error);
}

TEST_CASE("random orthogonal matrices") {
  Rng rng(9);
  for (std::size_t n : {1u, 2u, 5u, 9u}) {
    const RealMatrix u = random_orthogonal(n, rng);
    CHECK(frobenius(u.transpose() * u - RealMatrix::identity(n)) < kTight);
  }
  const RealMatrix noise = random_noise(4, 4, Real("1e-2"), rng);
  CHECK(abs(frobenius(noise) - Real("1e-2")) < kTight);
}
