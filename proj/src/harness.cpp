#include "qdj/harness.hpp"

#include <sstream>
#include <stdexcept>

namespace qdj {

std::string RoundTripCase::describe() const {
  std::ostringstream out;
  out << "irreps [";
  for (std::size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
  out << "] blocks [";
  for (std::size_t i = 0; i < blocks.size(); ++i) out << (i ? "," : "") << blocks[i];
  out << "] q=" << q.str();
  return out.str();
}

RoundTripCase make_round_trip(const std::vector<int>& labels, const QScalar& q, Rng& rng) {
  if (labels.empty()) throw std::invalid_argument("round trip needs at least one irrep");
  RoundTripCase c;
  c.labels = labels;
  c.q = q;
  std::vector<Rep> parts;
  for (int n : labels) {
    if (n < 0) throw std::invalid_argument("irrep labels must be nonnegative");
    parts.push_back(irrep_su2(n, q));
    const auto dim = static_cast<std::size_t>(n) + 1;
    if (c.blocks.empty() || uniform_int(rng, 0, 1) == 0) {
      c.blocks.push_back(dim);
    } else {
      c.blocks.back() += dim;
    }
  }
  const RealAction onb = induce_action(direct_sum(parts), c.blocks);
  std::vector<RealMatrix> u;
  for (std::size_t n : c.blocks) u.push_back(random_orthogonal(n, rng));
  c.action = conjugate(onb, u);
  return c;
}

RoundTripCase random_round_trip(const QScalar& q, Rng& rng, int max_irreps, int max_label) {
  const int count = uniform_int(rng, 1, max_irreps);
  std::vector<int> labels;
  for (int i = 0; i < count; ++i) labels.push_back(uniform_int(rng, 0, max_label));
  return make_round_trip(labels, q, rng);
}

RealAction corrupt(const RealAction& a, Corruption which, const Real& noise, Rng& rng) {
  RealAction out = a;
  RealMatrix& target = which == Corruption::E ? out.E.at(0) : (which == Corruption::F ? out.F.at(0) : out.K.at(0));
  target += random_noise(target.rows(), target.cols(), noise, rng);
  return out;
}

RealRep corrupt(const RealRep& r, Corruption which, const Real& noise, Rng& rng) {
  RealRep out = r;
  RealMatrix& target = which == Corruption::E ? out.E.at(0) : (which == Corruption::F ? out.F.at(0) : out.K.at(0));
  target += random_noise(target.rows(), target.cols(), noise, rng);
  return out;
}

}  // namespace qdj
