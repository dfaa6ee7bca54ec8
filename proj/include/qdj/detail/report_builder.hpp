#pragma once

// Internal helpers shared by the relation checkers.

#include "qdj/matrix.hpp"
#include "qdj/rep.hpp"

#include <string>

namespace qdj::detail {

template <class S>
S scalar(const QScalar& x) {
  if constexpr (is_exact_v<S>) {
    return x;
  } else {
    return x.to_real();
  }
}

template <class S>
class ReportBuilder {
 public:
  explicit ReportBuilder(const Real& tol) : tol_(tol) {
    report_.exact = is_exact_v<S>;
    report_.tol = is_exact_v<S> ? 0.0 : static_cast<double>(tol);
  }

  void add(std::string relation, int i, int j, const Matrix<S>& difference) {
    add_scalar(std::move(relation), i, j, residual_norm(difference));
  }

  void add_scalar(std::string relation, int i, int j, const S& value) {
    RelationEntry e;
    e.relation = std::move(relation);
    e.i = i;
    e.j = j;
    if constexpr (is_exact_v<S>) {
      e.residual = value.is_zero() ? "0" : value.str();
      e.pass = value.is_zero();
    } else {
      e.residual = to_decimal_string(value, 6);
      e.pass = value <= tol_;
    }
    e.magnitude = approx_double(value);
    report_.entries.push_back(std::move(e));
  }

  RelationReport take() { return std::move(report_); }

 private:
  Real tol_;
  RelationReport report_;
};

}  // namespace qdj::detail
