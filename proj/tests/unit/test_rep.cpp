#include "qdj/harness.hpp"
#include "qdj/rep.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace qdj;

namespace {

const std::vector<QScalar> kSampleQ{QScalar(1, 2), QScalar(2, 3), QScalar(3)};

bool all_zero(const RelationReport& r) {
  return r.exact && !r.entries.empty() &&
         std::all_of(r.entries.begin(), r.entries.end(), [](const RelationEntry& e) { return e.pass && e.magnitude == 0; });
}

bool has_relation(const RelationReport& r, const std::string& name) {
  return std::any_of(r.entries.begin(), r.entries.end(), [&](const RelationEntry& e) { return e.relation == name; });
}

// Exponent m with x = q^m, searched over a small window.
int log_q(const QScalar& x, const QScalar& q) {
  for (int m = -20; m <= 20; ++m)
    if (q.pow(m) == x) return m;
  FAIL("not a power of q");
  return 0;
}

}  // namespace

TEST_CASE("su(2) irreps satisfy every relation exactly") {
  for (const auto& q : kSampleQ)
    for (int n = 0; n <= 8; ++n) {
      CAPTURE(n);
      const Rep r = irrep_su2(n, q);
      CHECK(r.dim == static_cast<std::size_t>(n + 1));
      CHECK(all_zero(verify_relations(r)));
      // Weights {n, n-2, ..., -n}, independent of q.
      std::multiset<int> weights;
      for (std::size_t m = 0; m < r.dim; ++m) weights.insert(log_q(r.K[0](m, m), q));
      std::multiset<int> expected;
      for (int w = -n; w <= n; w += 2) expected.insert(w);
      CHECK(weights == expected);
    }
}

TEST_CASE("irrep matrices match the weight-basis formulas") {
  const QScalar q(1, 2);
  const Rep v2 = irrep_su2(2, q);
  CHECK(v2.K[0](0, 0) == QScalar(1, 4));
  CHECK(v2.K[0](1, 1) == QScalar(1));
  CHECK(v2.K[0](2, 2) == QScalar(4));
  // F v_0 = [1] v_1, F v_1 = [2] v_2, E v_1 = [2] v_0, E v_2 = [1] v_1.
  CHECK(v2.F[0](1, 0) == QScalar(1));
  CHECK(v2.F[0](2, 1) == q + q.inverse());
  CHECK(v2.E[0](0, 1) == q + q.inverse());
  CHECK(v2.E[0](1, 2) == QScalar(1));
  CHECK(v2.gram(0, 0) == QScalar(1));
  CHECK(su2_gram_weights(3, QScalar(1)) == std::vector<QScalar>{QScalar(1), QScalar(3), QScalar(3), QScalar(1)});
  CHECK_THROWS_AS(irrep_su2(1, QScalar(1)), std::invalid_argument);
  CHECK_THROWS_AS(irrep_su2(-1, q), std::invalid_argument);
}

TEST_CASE("vector representations of sl_n include the Serre relations") {
  for (int n : {3, 4})
    for (const auto& q : {QScalar(1, 2), QScalar(2)}) {
      const Rep r = vector_rep_sln(n, q);
      const RelationReport report = verify_relations(r);
      CHECK(all_zero(report));
      CHECK(has_relation(report, "serre_E"));
      CHECK(has_relation(report, "serre_F"));
      CHECK(r.K[0](0, 0) == q);
      CHECK(r.K[0](1, 1) == q.inverse());
    }
}

TEST_CASE("trivial representation for every Cartan type") {
  for (const auto& label : supported_cartan_labels()) {
    CAPTURE(label);
    CHECK(all_zero(verify_relations(trivial_rep(builtin_cartan(label), QScalar(2, 3)))));
  }
}

TEST_CASE("tensor products and direct sums") {
  const QScalar q(2, 3);
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b) {
      const Rep t = tensor(irrep_su2(a, q), irrep_su2(b, q));
      CHECK(t.dim == static_cast<std::size_t>((a + 1) * (b + 1)));
      CHECK(all_zero(verify_relations(t)));
    }
  const Rep s = direct_sum({irrep_su2(1, q), irrep_su2(2, q)});
  CHECK(s.dim == 5);
  CHECK(all_zero(verify_relations(s)));
  CHECK(all_zero(verify_relations(tensor(vector_rep_sln(3, q), vector_rep_sln(3, q)))));
  CHECK_THROWS_AS(direct_sum({irrep_su2(1, q), irrep_su2(1, QScalar(1, 2))}), std::invalid_argument);
}

TEST_CASE("q -> 1/q isomorphism fixes K and is an involution") {
  for (const auto& q : kSampleQ)
    for (int n = 0; n <= 4; ++n) {
      const Rep r = irrep_su2(n, q);
      const Rep inv = invert_q(r);
      CHECK(inv.q == q.inverse());
      CHECK(inv.K == r.K);
      CHECK(all_zero(verify_relations(inv)));
      const Rep back = invert_q(inv);
      CHECK(back.q == q);
      CHECK(back.E == r.E);
      CHECK(back.F == r.F);
    }
  CHECK(all_zero(verify_relations(invert_q(vector_rep_sln(3, QScalar(2))))));
}

TEST_CASE("approximate representations pass within tolerance") {
  const RealRep r = to_real(irrep_su2(3, QScalar(1, 2)));
  const RelationReport report = verify_relations(r);
  CHECK_FALSE(report.exact);
  CHECK(report.passed());
}

TEST_CASE("corrupted representations fail and name the relation") {
  Rep r = irrep_su2(2, QScalar(1, 2));
  r.E[0](0, 1) += QScalar(1, 1000);
  const RelationReport report = verify_relations(r);
  CHECK_FALSE(report.passed());
  REQUIRE(report.first_failure() != nullptr);
  CHECK(report.first_failure()->magnitude > 0);

  Rng rng(4);
  for (Corruption which : {Corruption::E, Corruption::F, Corruption::K}) {
    const RealRep noisy = corrupt(to_real(irrep_su2(2, QScalar(2, 3))), which, Real("1e-2"), rng);
    const RelationReport nr = verify_relations(noisy);
    CHECK_FALSE(nr.passed());
  }
}
