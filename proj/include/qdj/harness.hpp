#pragma once

// Seeded round-trip instances for the lift: direct sums of su(2) irreps,
// grouped into algebra blocks at random and conjugated by random orthogonal
// matrices, plus the corruptions used as negative controls.

#include "qdj/action.hpp"
#include "qdj/random.hpp"
#include "qdj/rep.hpp"

#include <string>
#include <vector>

namespace qdj {

struct RoundTripCase {
  std::vector<int> labels;           // irreps n_1, ..., n_m of the direct sum
  std::vector<std::size_t> blocks;   // algebra block sizes (consecutive groups)
  QScalar q;
  RealAction action;                 // orthonormal frame, conjugated

  std::string describe() const;
};

/// Builds the case for the given labels: consecutive irreps are merged into
/// one block with probability 1/2, then each block is conjugated by a random
/// orthogonal matrix.
RoundTripCase make_round_trip(const std::vector<int>& labels, const QScalar& q, Rng& rng);

/// Draws 1..max_irreps labels in [0, max_label] and builds the case.
RoundTripCase random_round_trip(const QScalar& q, Rng& rng, int max_irreps = 3, int max_label = 4);

enum class Corruption { E, F, K };

/// Adds noise of the given Frobenius norm to one operator of node 0.
RealAction corrupt(const RealAction& a, Corruption which, const Real& noise, Rng& rng);

/// Adds noise of the given Frobenius norm to E, F or K of node 0 of a rep.
RealRep corrupt(const RealRep& r, Corruption which, const Real& noise, Rng& rng);

}  // namespace qdj
