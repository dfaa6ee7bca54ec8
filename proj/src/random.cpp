#include "qdj/random.hpp"

#include <stdexcept>

namespace qdj {

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

int uniform_int(Rng& rng, int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(rng() % span);
}

RealMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  RealMatrix m(rows, cols);
  for (auto& x : m.flat()) x = Real(2 * uniform01(rng) - 1);
  return m;
}

RealMatrix random_orthogonal(std::size_t n, Rng& rng) {
  for (;;) {
    RealMatrix m = random_matrix(n, n, rng);
    bool degenerate = false;
    for (std::size_t j = 0; j < n && !degenerate; ++j) {
      // Two passes of modified Gram-Schmidt keep the columns orthogonal to
      // working precision.
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < j; ++k) {
          Real dot = 0;
          for (std::size_t i = 0; i < n; ++i) dot += m(i, k) * m(i, j);
          for (std::size_t i = 0; i < n; ++i) m(i, j) -= dot * m(i, k);
        }
      }
      Real norm = 0;
      for (std::size_t i = 0; i < n; ++i) norm += m(i, j) * m(i, j);
      norm = sqrt(norm);
      if (norm < Real("1e-6")) {
        degenerate = true;
        break;
      }
      for (std::size_t i = 0; i < n; ++i) m(i, j) /= norm;
    }
    if (!degenerate) return m;
  }
}

RealMatrix random_noise(std::size_t rows, std::size_t cols, const Real& frobenius_norm, Rng& rng) {
  RealMatrix m = random_matrix(rows, cols, rng);
  const Real f = frobenius(m);
  if (f == 0) return m;
  return m * (frobenius_norm / f);
}

}  // namespace qdj
