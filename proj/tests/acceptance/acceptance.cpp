// Acceptance run: one PASS/FAIL line per criterion, exit status 0 iff all pass.
// Every threshold below is pinned here; nothing is read from the environment.

#include "qdj/action.hpp"
#include "qdj/cgtwist.hpp"
#include "qdj/harness.hpp"
#include "qdj/lift.hpp"
#include "qdj/rep.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace qdj;

const Real kTwistTol("1e-10");
const Real kResidualTol("1e-8");
const Real kNoise("1e-2");
const Real kDetectTol("1e-4");
constexpr int kRoundTrips = 20;
constexpr int kControls = 20;

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string sci(const Real& x) { return to_decimal_string(x, 3); }

Real worst_residual(const LiftResult& r) {
  Real worst = 0;
  for (const auto& [name, value] : r.residuals) worst = std::max(worst, value);
  return worst;
}

Outcome exact_irreps() {
  int count = 0;
  for (const char* qs : {"1/2", "2/3", "3"}) {
    const QScalar q = QScalar::parse(qs);
    for (int n = 0; n <= 8; ++n) {
      const RelationReport r = verify_relations(irrep_su2(n, q));
      const bool zero = r.exact && std::all_of(r.entries.begin(), r.entries.end(),
                                               [](const RelationEntry& e) { return e.pass && e.magnitude == 0; });
      if (!zero) return {false, "irrep n=" + std::to_string(n) + " q=" + qs};
      ++count;
    }
  }
  return {true, std::to_string(count) + " irreps, all residuals exactly 0"};
}

Outcome serre_rank_two() {
  for (int n : {3, 4})
    for (const char* qs : {"1/2", "2"}) {
      const RelationReport r = verify_relations(vector_rep_sln(n, QScalar::parse(qs)));
      const bool has_serre = std::any_of(r.entries.begin(), r.entries.end(),
                                         [](const RelationEntry& e) { return e.relation.rfind("serre", 0) == 0; });
      if (!r.exact || !r.passed() || !has_serre) return {false, "sl" + std::to_string(n) + " q=" + qs};
    }
  return {true, "sl3, sl4 at q=1/2, 2 exact including Serre"};
}

Outcome cg_multiplicities() {
  int count = 0;
  for (const char* qs : {"1/2", "2/3", "3", "1"}) {
    const QScalar q = QScalar::parse(qs);
    for (int a = 0; a <= 6; ++a)
      for (int b = 0; b <= 6; ++b) {
        const CGDecomposition d = cg_decompose(a, b, q);
        std::vector<int> expected;
        for (int c = std::abs(a - b); c <= a + b; c += 2) expected.push_back(c);
        if (d.labels() != expected || !d.completeness_residual.is_zero() || !d.intertwine_residual.is_zero())
          return {false, "V" + std::to_string(a) + " x V" + std::to_string(b) + " q=" + qs};
        ++count;
      }
  }
  return {true, std::to_string(count) + " products, completeness exactly 0"};
}

Outcome twist_blocks() {
  Real worst = 0;
  for (const char* qs : {"1/2", "2/3"}) {
    for (const TwistBlock& t : twist_sweep(4, QScalar::parse(qs))) {
      worst = std::max({worst, t.unitarity_residual, t.intertwine_residual});
      if (!t.passed(kTwistTol)) return {false, "(" + std::to_string(t.a) + "," + std::to_string(t.b) + ") q=" + qs};
    }
  }
  return {true, "50 blocks, worst residual " + sci(worst)};
}

Outcome cocycle() {
  Real worst = 0;
  Real worst_identity = 0;
  for (const AssociatorBlock& a : associator_sweep(3, QScalar(1, 2))) {
    worst = std::max({worst, a.commutation_residual, a.unitarity_residual});
    if (a.b == 0) worst_identity = std::max(worst_identity, a.identity_residual);
    if (a.commutation_residual > kResidualTol || (a.b == 0 && a.identity_residual > kResidualTol))
      return {false, "(" + std::to_string(a.a) + "," + std::to_string(a.b) + "," + std::to_string(a.c) + ")"};
  }
  return {true, "64 triples, commutation " + sci(worst) + ", middle-0 identity " + sci(worst_identity)};
}

Outcome round_trips(const std::vector<QScalar>& qs, std::uint64_t seed) {
  Real worst = 0;
  int count = 0;
  for (std::size_t qi = 0; qi < qs.size(); ++qi) {
    for (int i = 0; i < kRoundTrips; ++i) {
      Rng rng(seed * 1000 + qi * 100 + static_cast<std::uint64_t>(i));
      const RoundTripCase c = random_round_trip(qs[qi], rng);
      try {
        const LiftResult r = lift_action(c.action);
        worst = std::max(worst, worst_residual(r));
        if (!r.passed(kResidualTol)) return {false, c.describe() + " residual " + sci(worst_residual(r))};
      } catch (const LiftError& e) {
        return {false, c.describe() + ": " + e.what()};
      }
      ++count;
    }
  }
  return {true, std::to_string(count) + " instances, worst residual " + sci(worst)};
}

Outcome serre_in_lift() {
  // The induced action as is, and conjugated by a random orthogonal matrix so
  // the lifted e_i are dense.
  const RealAction plain = induce_action(vector_rep_sln(3, QScalar(1, 2)), {3});
  Rng rng(8);
  const RealAction dense = conjugate(plain, {random_orthogonal(3, rng)});
  Real x = 0;
  Real y = 0;
  bool ok = true;
  for (const RealAction* a : {&plain, &dense}) {
    const LiftResult r = lift_action(*a);
    x = std::max(x, r.residuals.at("serre_x"));
    y = std::max(y, r.residuals.at("serre_y"));
    ok = ok && r.passed(kResidualTol);
  }
  ok = ok && x <= kResidualTol && y <= kResidualTol;
  return {ok, "serre_x " + sci(x) + ", serre_y " + sci(y) + " (plain and conjugated)"};
}

Real worst_relation(const RelationReport& r) {
  double worst = 0;
  for (const auto& e : r.entries) worst = std::max(worst, e.magnitude);
  return Real(worst);
}

Outcome negative_controls() {
  int detected = 0;
  std::string missed;
  for (int seed = 0; seed < kControls; ++seed) {
    Rng rng(1000 + static_cast<std::uint64_t>(seed));
    const auto which = static_cast<Corruption>(seed % 3);
    const QScalar q = seed % 2 ? QScalar(2, 3) : QScalar(1, 2);

    // Corrupted representation: some relation residual must exceed the threshold.
    const int n = uniform_int(rng, 1, 4);
    const RealRep noisy_rep = corrupt(to_real(irrep_su2(n, q)), which, kNoise, rng);
    const bool rep_caught = worst_relation(verify_relations(noisy_rep)) > kDetectTol;

    // Corrupted action: the lift must stop at a stage or report a large residual.
    const RoundTripCase c = random_round_trip(q, rng);
    bool action_caught = false;
    try {
      action_caught = worst_residual(lift_action(corrupt(c.action, which, kNoise, rng))) > kDetectTol;
    } catch (const LiftError&) {
      action_caught = true;
    }
    if (rep_caught && action_caught) {
      ++detected;
    } else if (missed.empty()) {
      missed = " (first miss: seed " + std::to_string(seed) + ")";
    }
  }
  return {detected == kControls, std::to_string(detected) + "/" + std::to_string(kControls) + " detected" + missed};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "exact su(2) irreps", 10, exact_irreps},
      {2, "Serre relations at rank > 1", 5, serre_rank_two},
      {3, "q-independent CG multiplicities", 30, cg_multiplicities},
      {4, "twist blocks unitary and intertwining", 60, twist_blocks},
      {5, "associator commutes with double coproduct", 120, cocycle},
      {6, "lift round trips at q < 1", 120, [] { return round_trips({QScalar(1, 2), QScalar(2, 3)}, 6); }},
      {7, "lift round trips at q > 1", 120, [] { return round_trips({QScalar(2)}, 7); }},
      {8, "Serre elements vanish in the sl3 lift", 60, serre_in_lift},
      {9, "negative controls detected", 120, negative_controls},
  };

  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget_s;
    const bool pass = o.ok && in_time;
    all = all && pass;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << ": " << o.detail << " [" << secs
         << " s, budget " << c.budget_s << " s" << (in_time ? "" : ", over budget") << "]";
    std::printf("%s\n", line.str().c_str());
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
