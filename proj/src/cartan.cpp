#include "qdj/cartan.hpp"

#include <numeric>
#include <stdexcept>

namespace qdj {

namespace {

CartanDatum type_a(int rank) {
  CartanDatum c;
  c.label = "A" + std::to_string(rank);
  c.rank = rank;
  c.a.assign(static_cast<std::size_t>(rank), std::vector<int>(static_cast<std::size_t>(rank), 0));
  for (int i = 0; i < rank; ++i) {
    c.a[i][i] = 2;
    if (i + 1 < rank) {
      c.a[i][i + 1] = -1;
      c.a[i + 1][i] = -1;
    }
  }
  c.d.assign(static_cast<std::size_t>(rank), 1);
  return c;
}

}  // namespace

void CartanDatum::validate() const {
  if (rank <= 0) throw std::invalid_argument("cartan: rank must be positive");
  const auto n = static_cast<std::size_t>(rank);
  if (a.size() != n || d.size() != n) throw std::invalid_argument("cartan: a and d must have rank rows");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("cartan: a must be square");
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] != 2) throw std::invalid_argument("cartan: diagonal entries must equal 2");
    if (d[i] <= 0) throw std::invalid_argument("cartan: symmetrizers must be positive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      if (a[i][j] > 0) throw std::invalid_argument("cartan: off-diagonal entries must be <= 0");
      if ((a[i][j] == 0) != (a[j][i] == 0)) {
        throw std::invalid_argument("cartan: a_ij = 0 must hold exactly when a_ji = 0");
      }
      if (d[i] * a[i][j] != d[j] * a[j][i]) {
        throw std::invalid_argument("cartan: (d_i a_ij) is not symmetric");
      }
    }
  }
  int g = 0;
  for (int x : d) g = std::gcd(g, x);
  if (g != 1) throw std::invalid_argument("cartan: symmetrizers must be coprime");
}

bool WeightLabel::dominant() const {
  for (int x : coordinates)
    if (x < 0) return false;
  return true;
}

std::vector<std::string> supported_cartan_labels() { return {"A1", "A2", "A3", "A4", "B2", "G2"}; }

CartanDatum builtin_cartan(std::string_view label) {
  if (label.size() == 2 && label[0] == 'A' && label[1] >= '1' && label[1] <= '4') {
    return type_a(label[1] - '0');
  }
  if (label == "B2") return CartanDatum{"B2", 2, {{2, -1}, {-2, 2}}, {2, 1}};
  if (label == "G2") return CartanDatum{"G2", 2, {{2, -1}, {-3, 2}}, {3, 1}};
  std::string supported;
  for (const auto& s : supported_cartan_labels()) supported += (supported.empty() ? "" : ", ") + s;
  throw std::invalid_argument("unknown Cartan type '" + std::string(label) + "'; supported: " + supported);
}

QScalar q_i(const CartanDatum& cartan, const QScalar& q, int i) {
  if (q.sign() <= 0) throw std::invalid_argument("q_i: q must be positive");
  if (i < 0 || i >= cartan.rank) throw std::out_of_range("q_i: node index out of range");
  return q.pow(cartan.symmetrizer(i));
}

}  // namespace qdj
