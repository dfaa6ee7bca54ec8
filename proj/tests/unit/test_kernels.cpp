#include "qdj/cgtwist.hpp"
#include "qdj/kernels.hpp"
#include "qdj/random.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace qdj;

TEST_CASE("serial and OpenMP matmul agree bit for bit") {
  Rng rng(21);
  for (std::size_t n : {1u, 7u, 40u}) {
    const RealMatrix a = random_matrix(n, n + 3, rng);
    const RealMatrix b = random_matrix(n + 3, n, rng);
    CHECK(kernels::matmul_serial(a, b) == kernels::matmul_omp(a, b));
  }
  QMatrix qa(12, 12);
  QMatrix qb(12, 12);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) {
      qa(i, j) = QScalar(static_cast<long>(i * 7 + j) % 5 - 2, static_cast<long>(j) + 1);
      qb(i, j) = QScalar(static_cast<long>(i + 3 * j) % 7 - 3, static_cast<long>(i) + 2);
    }
  CHECK(kernels::matmul_serial(qa, qb) == kernels::matmul_omp(qa, qb));
  CHECK_THROWS_AS(kernels::matmul_serial(qa, qb.block(0, 0, 3, 3)), std::invalid_argument);
}

TEST_CASE("generate returns results in order and rethrows the first error") {
  auto square = [](std::size_t i) { return static_cast<int>(i * i); };
  CHECK(kernels::generate(50, square, kernels::Execution::serial) ==
        kernels::generate(50, square, kernels::Execution::parallel));
  auto failing = [](std::size_t i) -> int {
    if (i == 3 || i == 8) throw std::runtime_error("index " + std::to_string(i));
    return 0;
  };
  for (auto exec : {kernels::Execution::serial, kernels::Execution::parallel}) {
    try {
      kernels::generate(10, failing, exec);
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "index 3");
    }
  }
}

TEST_CASE("parallel sweeps are bit-identical to serial ones") {
  const QScalar q(2, 3);
  const auto serial = twist_sweep(3, q, kernels::Execution::serial);
  const auto parallel = twist_sweep(3, q, kernels::Execution::parallel);
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].F == parallel[i].F);
    CHECK(serial[i].intertwine_residual == parallel[i].intertwine_residual);
  }
  const auto as = associator_sweep(2, q, kernels::Execution::serial);
  const auto ap = associator_sweep(2, q, kernels::Execution::parallel);
  REQUIRE(as.size() == ap.size());
  for (std::size_t i = 0; i < as.size(); ++i) CHECK(as[i].Phi == ap[i].Phi);
}
