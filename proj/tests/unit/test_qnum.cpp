#include "qdj/qnum.hpp"
#include "qdj/random.hpp"

#include <doctest.h>

#include <map>
#include <stdexcept>
#include <vector>

using namespace qdj;

namespace {

const std::vector<QScalar> kSampleQ{QScalar(1, 2), QScalar(2, 3), QScalar(3)};

// Gaussian binomials from the q-Pascal rule alone, starting from the edges of
// the triangle. Shares no code with the factorial formula.
std::map<std::pair<long, long>, QScalar> pascal_table(long n_max, const QScalar& q) {
  std::map<std::pair<long, long>, QScalar> t;
  for (long n = 0; n <= n_max; ++n) {
    t[{n, 0}] = QScalar(1);
    t[{n, n}] = QScalar(1);
    for (long k = 1; k < n; ++k) {
      QScalar qmk(1);
      for (long i = 0; i < k; ++i) qmk /= q;
      QScalar qnk(1);
      for (long i = 0; i < n - k; ++i) qnk *= q;
      t[{n, k}] = qmk * t[{n - 1, k}] + qnk * t[{n - 1, k - 1}];
    }
  }
  return t;
}

QScalar random_rational(Rng& rng) {
  const int den = uniform_int(rng, 1, 50);
  return QScalar(uniform_int(rng, -100, 100), den);
}

}  // namespace

TEST_CASE("rationals stay canonical and print as p/q") {
  CHECK(QScalar(6, -4).str() == "-3/2");
  CHECK(QScalar(-3).str() == "-3/1");
  CHECK(QScalar::parse("10/4") == QScalar(5, 2));
  CHECK(QScalar::parse("-7") == QScalar(-7));
  CHECK_THROWS_AS(QScalar::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(QScalar::parse("abc"), std::invalid_argument);
  CHECK_THROWS_AS(QScalar(1, 0), std::invalid_argument);
  const QScalar x(84, 36);
  CHECK(gcd(x.numerator(), x.denominator()) == 1);
  CHECK(x.denominator() > 0);
}

TEST_CASE("field axioms on random triples") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const QScalar a = random_rational(rng);
    const QScalar b = random_rational(rng);
    const QScalar c = random_rational(rng);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == QScalar(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == QScalar(1));
  }
}

TEST_CASE("q-integers") {
  CHECK(q_int(3, QScalar(1, 2)) == QScalar(21, 4));
  CHECK(q_int(2, QScalar(2)) == QScalar(5, 2));
  for (const auto& q : kSampleQ) {
    CHECK(q_int(1, q) == QScalar(1));
    CHECK(q_int(0, q) == QScalar(0));
    CHECK(q_int(2, q) == q + q.inverse());
    for (long n = 1; n <= 12; ++n) {
      // Recurrence [n+1] = [2][n] - [n-1] as an independent oracle.
      CHECK(q_int(n + 1, q) == q_int(2, q) * q_int(n, q) - q_int(n - 1, q));
      CHECK(q_int(n, q) == q_int(n, q.inverse()));
      CHECK(q_int(-n, q) == -q_int(n, q));
      CHECK(q_int(n, q).sign() > 0);
    }
  }
  CHECK_THROWS_AS(q_int(2, QScalar(1)), std::invalid_argument);
  CHECK_THROWS_AS(q_int(2, QScalar(0)), std::invalid_argument);
  CHECK(q_int_or_classical(5, QScalar(1)) == QScalar(5));
  CHECK(q_factorial(4, QScalar(1)) == QScalar(24));
}

TEST_CASE("Gaussian binomials agree with the q-Pascal triangle") {
  // [4 choose 2] at q = 1/2 is q^-4 + q^-2 + 2 + q^2 + q^4 = 357/16.
  CHECK(q_binomial(4, 2, QScalar(1, 2)) == QScalar(357, 16));
  for (const auto& q : kSampleQ) {
    const auto table = pascal_table(12, q);
    for (long n = 0; n <= 12; ++n)
      for (long k = 0; k <= n; ++k) {
        CHECK(q_binomial(n, k, q) == table.at({n, k}));
        CHECK(q_binomial(n, k, q) == q_binomial(n, n - k, q));
      }
    CHECK(q_binomial(2, 1, q) == q + q.inverse());
  }
  CHECK_THROWS_AS(q_binomial(3, 4, QScalar(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(q_binomial(3, -1, QScalar(1, 2)), std::invalid_argument);
}

TEST_CASE("approximate scalars") {
  const Real x = parse_real("1.25e-3");
  CHECK(abs(x - Real("0.00125")) < Real("1e-35"));
  CHECK(abs(parse_real("5/2") - Real("2.5")) < Real("1e-35"));
  CHECK(to_decimal_string(Real("2.5"), 3) == to_decimal_string(Real("2.5"), 3));
  CHECK(std::numeric_limits<Real>::digits >= 64);
  CHECK(kInternalTol < kReportTol);
  CHECK_THROWS(parse_real("nope"));
}
