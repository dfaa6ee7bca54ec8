#pragma once

// Seeded randomness for the property harness. Only the raw 64-bit output of
// mt19937_64 is consumed, so draws are reproducible across standard libraries.

#include "qdj/matrix.hpp"

#include <cstdint>
#include <random>

namespace qdj {

using Rng = std::mt19937_64;

/// Uniform in [0, 1) from the top 53 bits.
double uniform01(Rng& rng);

/// Uniform integer in [lo, hi].
int uniform_int(Rng& rng, int lo, int hi);

/// Matrix with independent entries uniform in [-1, 1).
RealMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Orthogonal (real unitary) matrix from Gram-Schmidt on a random matrix.
RealMatrix random_orthogonal(std::size_t n, Rng& rng);

/// Random matrix rescaled to the given Frobenius norm.
RealMatrix random_noise(std::size_t rows, std::size_t cols, const Real& frobenius_norm, Rng& rng);

}  // namespace qdj
