#pragma once

#include "qdj/qnum.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qdj {

/// Cartan matrix with symmetrizers. Row i indexes the simple root alpha_i and
/// a[i][j] = <alpha_j, alpha_i^vee>, so (d_i a_ij) is symmetric.
struct CartanDatum {
  std::string label;
  int rank = 0;
  std::vector<std::vector<int>> a;
  std::vector<int> d;

  int entry(int i, int j) const { return a.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(j)); }
  int symmetrizer(int i) const { return d.at(static_cast<std::size_t>(i)); }

  /// Throws std::invalid_argument naming the first violated invariant.
  void validate() const;

  friend bool operator==(const CartanDatum&, const CartanDatum&) = default;
};

/// Weight in coroot coordinates.
struct WeightLabel {
  std::vector<int> coordinates;
  bool dominant() const;
};

std::vector<std::string> supported_cartan_labels();

/// Standard Cartan data for A1..A4, B2, G2. Unknown labels are rejected with
/// the supported list in the message.
CartanDatum builtin_cartan(std::string_view label);

/// q_i = q^{d_i}, exact. Node indices are zero-based.
QScalar q_i(const CartanDatum& cartan, const QScalar& q, int i);

}  // namespace qdj
