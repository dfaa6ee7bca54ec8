#include "qdj/harness.hpp"
#include "qdj/lift.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qdj;

namespace {

const Real kTol("1e-8");
const Real kTight("1e-25");

Real worst(const LiftResult& r) {
  Real w = 0;
  for (const auto& [name, value] : r.residuals) w = std::max(w, value);
  return w;
}

// Checks E(u) = e u k^-1 - u e k^-1, F(u) = f u - k^-1 u k f and
// K(u) = k u k^-1 on every matrix unit, straight from the result matrices.
Real module_defect(const RealAction& a, const LiftResult& r) {
  const AlgebraLayout layout = a.layout();
  Real defect = 0;
  for (std::size_t node = 0; node < r.e.size(); ++node) {
    const RealMatrix& e = r.e[node];
    const RealMatrix& f = r.f[node];
    const RealMatrix& k = r.k[node];
    const RealMatrix kinv = inverse(k);
    for (std::size_t col = 0; col < layout.algebra_dim(); ++col) {
      std::vector<Real> unit(layout.algebra_dim(), Real(0));
      unit[col] = 1;
      const RealMatrix u = layout.unvec(std::span<const Real>(unit));
      defect = std::max(defect, frobenius(layout.column(a.E[node], col) - (e * u * kinv - u * e * kinv)));
      defect = std::max(defect, frobenius(layout.column(a.F[node], col) - (f * u - kinv * u * k * f)));
      defect = std::max(defect, frobenius(layout.column(a.K[node], col) - k * u * kinv));
    }
  }
  return defect;
}

std::vector<Real> sorted_eigenvalues(const RealMatrix& m) {
  return symmetric_eigen((m + m.transpose()) * Real("0.5")).values;
}

}  // namespace

TEST_CASE("implement_k on the standard examples") {
  const QScalar q(1, 2);
  const RealAction trivial = induce_action(irrep_su2(0, q), {1});
  CHECK(frobenius(implement_k(trivial, 0) - RealMatrix::identity(1)) < kTight);

  const RealMatrix k1 = implement_k(induce_action(irrep_su2(1, q), {2}), 0);
  RealMatrix expected(2, 2);
  expected(0, 0) = Real("0.5");
  expected(1, 1) = 2;
  CHECK(frobenius(k1 - expected) < kTight);

  const RealMatrix k2 = implement_k(induce_action(direct_sum({irrep_su2(1, q), irrep_su2(0, q)}), {2, 1}), 0);
  RealMatrix expected2(3, 3);
  expected2(0, 0) = Real("0.5");
  expected2(1, 1) = 2;
  expected2(2, 2) = 1;
  CHECK(frobenius(k2 - expected2) < kTight);
}

TEST_CASE("coboundary solutions have the right scaling") {
  const QScalar q(1, 2);
  const Real q2 = Real("0.25");
  const RealAction a = induce_action(irrep_su2(1, q), {2});
  const RealMatrix k = implement_k(a, 0);
  const RealMatrix kinv = inverse(k);
  const RealMatrix e = solve_coboundary_e(a, 0, k);
  const RealMatrix f = solve_coboundary_f(a, 0, k);
  CHECK(frobenius(k * e * kinv - q2 * e) < Real("1e-10"));
  CHECK(frobenius(k * f * kinv - f * (1 / q2)) < Real("1e-10"));

  const RealAction trivial = induce_action(irrep_su2(0, q), {1});
  const RealMatrix one = RealMatrix::identity(1);
  CHECK(solve_coboundary_e(trivial, 0, one).is_zero());
  CHECK(solve_coboundary_f(trivial, 0, one).is_zero());
  const NormalizedPair n = normalize_commutator(RealMatrix(1, 1), RealMatrix(1, 1), one, q, {1});
  CHECK(abs(n.lambda.at(0) - 1) < kTight);
  CHECK(frobenius(n.k - one) < kTight);
}

TEST_CASE("trivial lift") {
  const LiftResult r = lift_action(induce_action(irrep_su2(0, QScalar(1, 2)), {1}));
  CHECK(r.e[0].is_zero());
  CHECK(r.f[0].is_zero());
  CHECK(frobenius(r.k[0] - RealMatrix::identity(1)) < kTight);
  CHECK(worst(r) < kTight);
}

TEST_CASE("round trips reproduce the module and the spectrum of K") {
  for (const auto& q : {QScalar(1, 2), QScalar(2, 3), QScalar(2)})
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
      Rng rng(seed);
      const RoundTripCase c = random_round_trip(q, rng, 3, 3);
      CAPTURE(c.describe());
      const LiftResult r = lift_action(c.action);
      CHECK(r.passed(kTol));
      CHECK(r.inverted == (q > QScalar(1)));
      CHECK(module_defect(c.action, r) < kTol);
      CHECK(verify_relations(r.as_rep(), kTol).passed());

      // Per block, the spectrum of the lifted k is that of K on the inducing
      // representation up to one positive scalar.
      std::size_t offset = 0;
      std::size_t label = 0;
      for (std::size_t n : c.blocks) {
        std::vector<Real> expected;
        for (std::size_t used = 0; used < n; ++label) {
          const int lab = c.labels[label];
          for (int m = 0; m <= lab; ++m) expected.push_back(q.pow(lab - 2 * m).to_real());
          used += static_cast<std::size_t>(lab + 1);
        }
        std::sort(expected.begin(), expected.end());
        const std::vector<Real> got = sorted_eigenvalues(r.k[0].block(offset, offset, n, n));
        REQUIRE(got.size() == expected.size());
        const Real ratio = got[0] / expected[0];
        CHECK(ratio > 0);
        for (std::size_t i = 0; i < n; ++i) CHECK(abs(got[i] / expected[i] - ratio) < kTol);
        offset += n;
      }
    }
}

TEST_CASE("larger irreducible blocks") {
  const LiftResult r = lift_action(induce_action(irrep_su2(2, QScalar(1, 2)), {3}));
  CHECK(r.residuals.at("ef_commutator") < kTol);
  CHECK(r.passed(kTol));
}

TEST_CASE("rank two: cross relations and Serre elements") {
  Rng rng(3);
  const RealAction plain = induce_action(vector_rep_sln(3, QScalar(1, 2)), {3});
  const RealAction dense = conjugate(plain, {random_orthogonal(3, rng)});
  for (const RealAction* a : {&plain, &dense}) {
    const LiftResult r = lift_action(*a);
    CHECK(r.residuals.count("cross_relations") == 1);
    CHECK(r.residuals.at("serre_x") < kTol);
    CHECK(r.residuals.at("serre_y") < kTol);
    CHECK(r.passed(kTol));
    CHECK(module_defect(*a, r) < kTol);
  }
  CHECK(lift_action(induce_action(vector_rep_sln(3, QScalar(2)), {3})).passed(kTol));
}

TEST_CASE("conjugating the input leaves the residuals in place") {
  const QScalar q(2, 3);
  const RealAction base = induce_action(direct_sum({irrep_su2(2, q), irrep_su2(1, q)}), {5});
  const LiftResult r0 = lift_action(base);
  Rng rng(44);
  const RealMatrix u = random_orthogonal(5, rng);
  const LiftResult r1 = lift_action(conjugate(base, {u}));
  for (const auto& [name, value] : r0.residuals) CHECK(abs(value - r1.residuals.at(name)) < Real("1e-10"));
  // k transforms by the same conjugation.
  CHECK(frobenius(r1.k[0] - u * r0.k[0] * u.transpose()) < kTol);
}

TEST_CASE("corrupted actions are stopped or flagged") {
  for (Corruption which : {Corruption::E, Corruption::F, Corruption::K})
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      Rng rng(100 + seed);
      const RoundTripCase c = random_round_trip(QScalar(1, 2), rng);
      const RealAction bad = corrupt(c.action, which, Real("1e-2"), rng);
      bool caught = false;
      try {
        caught = worst(lift_action(bad)) > Real("1e-4");
      } catch (const LiftError& e) {
        caught = true;
        CHECK(!e.stage().empty());
      }
      CHECK(caught);
    }
}

TEST_CASE("q = 1 is unsupported") {
  RealAction a = induce_action(irrep_su2(1, QScalar(1, 2)), {2});
  a.q = QScalar(1);
  try {
    lift_action(a);
    FAIL("expected a LiftError");
  } catch (const LiftError& e) {
    CHECK(e.kind() == LiftErrorKind::unsupported_parameter);
  }
}

TEST_CASE("closed-form coboundary matches a generic minimum-norm solve") {
  const QScalar q(2, 3);
  const Real qr = q.to_real();
  const RealAction a = induce_action(irrep_su2(2, q), {3});
  const std::size_t n = 3;
  const AlgebraLayout layout = a.layout();
  const RealMatrix k = implement_k(a, 0);
  const RealMatrix kinv = inverse(k);

  // Unknown x (row-major n^2 vector); one equation per unit e_rs and entry
  // (i, j) of [x, e_rs] = E(e_rs) k.
  RealMatrix sys(n * n * n * n, n * n);
  RealMatrix rhs(n * n * n * n, 1);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s) {
      const RealMatrix target = layout.column(a.E[0], r * n + s) * k;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          const std::size_t row = ((r * n + s) * n + i) * n + j;
          if (s == j) sys(row, i * n + r) += 1;  // (x e_rs)_ij = x_ir [s = j]
          if (i == r) sys(row, s * n + j) -= 1;  // (e_rs x)_ij = [i = r] x_sj
          rhs(row, 0) = target(i, j);
        }
    }
  const auto x = CompleteOrthogonalDecomposition(sys).solve(rhs.column(0));
  RealMatrix e(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) e(i, j) = x[i * n + j];
  const RealMatrix c = k * e * kinv - qr * qr * e;
  e -= c * (1 / (1 - qr * qr));
  CHECK(frobenius(e - solve_coboundary_e(a, 0, k)) < kTight);
}
