#include "qdj/action.hpp"
#include "qdj/harness.hpp"

#include <doctest.h>

#include <algorithm>

using namespace qdj;

namespace {

bool all_zero(const RelationReport& r) {
  return r.exact && std::all_of(r.entries.begin(), r.entries.end(), [](const RelationEntry& e) { return e.magnitude == 0; });
}

// Restricts an N x N matrix to the block-diagonal part of the layout.
QMatrix block_part(const QMatrix& m, const AlgebraLayout& layout) {
  return layout.unvec(std::span<const QScalar>(layout.vec(m)));
}

QMatrix apply_map(const QMatrix& op, const QMatrix& a, const AlgebraLayout& layout) {
  const auto v = layout.vec(a);
  return layout.unvec(std::span<const QScalar>(apply(op, std::span<const QScalar>(v))));
}

}  // namespace

TEST_CASE("induced action matches the adjoint formulas on matrix units") {
  const QScalar q(1, 2);
  const Rep r = direct_sum({irrep_su2(1, q), irrep_su2(0, q)});
  const Action a = induce_action_exact(r, {2, 1});
  const AlgebraLayout layout = a.layout();
  REQUIRE(layout.algebra_dim() == 5);
  const QMatrix& e = r.E[0];
  const QMatrix& f = r.F[0];
  const QMatrix& k = r.K[0];
  const QMatrix kinv = inverse(k);
  for (std::size_t col = 0; col < layout.algebra_dim(); ++col) {
    std::vector<QScalar> unit(layout.algebra_dim(), QScalar(0));
    unit[col] = QScalar(1);
    const QMatrix u = layout.unvec(std::span<const QScalar>(unit));
    CHECK(layout.column(a.E[0], col) == block_part(e * u * kinv - u * e * kinv, layout));
    CHECK(layout.column(a.F[0], col) == block_part(f * u - kinv * u * k * f, layout));
    CHECK(layout.column(a.K[0], col) == block_part(k * u * kinv, layout));
  }
}

TEST_CASE("Leibniz rules on products of random elements") {
  const QScalar q(2, 3);
  const Action a = induce_action_exact(irrep_su2(2, q), {3});
  const AlgebraLayout layout = a.layout();
  Rng rng(2);
  auto random_element = [&] {
    QMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(i, j) = QScalar(uniform_int(rng, -5, 5), uniform_int(rng, 1, 4));
    return m;
  };
  for (int trial = 0; trial < 10; ++trial) {
    const QMatrix x = random_element();
    const QMatrix y = random_element();
    const QMatrix kx = apply_map(a.K[0], x, layout);
    const QMatrix kinv_x = apply_map(inverse(a.K[0]), x, layout);
    CHECK(apply_map(a.E[0], x * y, layout) ==
          apply_map(a.E[0], x, layout) * apply_map(a.K[0], y, layout) + x * apply_map(a.E[0], y, layout));
    CHECK(apply_map(a.F[0], x * y, layout) ==
          apply_map(a.F[0], x, layout) * y + kinv_x * apply_map(a.F[0], y, layout));
    CHECK(apply_map(a.K[0], x * y, layout) == kx * apply_map(a.K[0], y, layout));
  }
}

TEST_CASE("module-algebra axioms hold exactly for induced actions") {
  const QScalar q(1, 2);
  CHECK(all_zero(check_action(induce_action_exact(irrep_su2(0, q), {1}))));
  CHECK(all_zero(check_action(induce_action_exact(irrep_su2(1, q), {2}))));
  CHECK(all_zero(check_action(induce_action_exact(direct_sum({irrep_su2(1, q), irrep_su2(0, q)}), {2, 1}))));
  CHECK(all_zero(check_action(induce_action_exact(irrep_su2(2, q), {3}))));
  CHECK(all_zero(check_action(induce_action_exact(vector_rep_sln(3, q), {3}))));
  const Action inv = invert_q(induce_action_exact(irrep_su2(2, QScalar(2)), {3}));
  CHECK(inv.q == QScalar(1, 2));
  CHECK(all_zero(check_action(inv)));

  const Action trivial = induce_action_exact(irrep_su2(0, q), {1});
  CHECK(trivial.E[0].is_zero());
  CHECK(trivial.F[0].is_zero());
  CHECK(trivial.K[0] == QMatrix::identity(1));
}

TEST_CASE("approximate actions in random frames keep the axioms") {
  Rng rng(12);
  const RoundTripCase c = make_round_trip({1, 2}, QScalar(2, 3), rng);
  const RelationReport r = check_action(c.action);
  CHECK_FALSE(r.exact);
  CHECK(r.passed());
  const RelationReport broken = check_action(corrupt(c.action, Corruption::E, Real("1e-2"), rng));
  CHECK_FALSE(broken.passed());
}

TEST_CASE("incompatible partitions are rejected") {
  const QScalar q(1, 2);
  const Rep r = direct_sum({irrep_su2(1, q), irrep_su2(0, q)});
  CHECK_THROWS_AS(induce_action_exact(r, {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(induce_action_exact(r, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(induce_action_exact(irrep_su2(1, q), {1, 1}), std::invalid_argument);
}

TEST_CASE("round-trip cases are reproducible") {
  Rng a(5);
  Rng b(5);
  const RoundTripCase x = random_round_trip(QScalar(1, 2), a);
  const RoundTripCase y = random_round_trip(QScalar(1, 2), b);
  CHECK(x.labels == y.labels);
  CHECK(x.blocks == y.blocks);
  CHECK(x.action.E == y.action.E);
  std::size_t total = 0;
  for (int n : x.labels) total += static_cast<std::size_t>(n + 1);
  std::size_t blocks = 0;
  for (std::size_t n : x.blocks) blocks += n;
  CHECK(total == blocks);
}
