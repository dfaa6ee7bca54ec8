#pragma once

// Data-parallel kernels. Every kernel has a serial reference implementation
// and an OpenMP version that performs the identical per-element reduction, so
// the two agree bit for bit (and exactly, for rationals).

#include "qdj/matrix.hpp"

#include <exception>
#include <optional>
#include <vector>

#include <omp.h>

namespace qdj::kernels {

/// Multiply-add count above which matmul() switches to the OpenMP kernel.
inline constexpr std::size_t kParallelWork = 32 * 32 * 32;

namespace detail {

template <class T>
void matmul_row(const Matrix<T>& a, const Matrix<T>& b, Matrix<T>& c, std::size_t i) {
  auto out = c.row(i);
  for (std::size_t k = 0; k < a.cols(); ++k) {
    const T& aik = a(i, k);
    if (aik == T(0)) continue;
    auto brow = b.row(k);
    for (std::size_t j = 0; j < b.cols(); ++j) out[j] += aik * brow[j];
  }
}

template <class T>
void require_conformable(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) {
    throw std::invalid_argument("matmul: inner dimensions differ (" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + ")");
  }
}

}  // namespace detail

template <class T>
Matrix<T> matmul_serial(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_conformable(a, b);
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) detail::matmul_row(a, b, c, i);
  return c;
}

template <class T>
Matrix<T> matmul_omp(const Matrix<T>& a, const Matrix<T>& b) {
  detail::require_conformable(a, b);
  Matrix<T> c(a.rows(), b.cols());
  const auto rows = static_cast<long>(a.rows());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < rows; ++i) detail::matmul_row(a, b, c, static_cast<std::size_t>(i));
  return c;
}

template <class T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() * a.cols() * b.cols() >= kParallelWork && omp_get_max_threads() > 1 &&
      !omp_in_parallel()) {
    return matmul_omp(a, b);
  }
  return matmul_serial(a, b);
}

enum class Execution { serial, parallel };

/// Evaluates fn(0..n-1) and returns the results in index order. The parallel
/// path runs one index per task; the first exception (lowest index) is
/// rethrown after the loop, matching what the serial path would throw.
template <class Fn>
auto generate(std::size_t n, Fn fn, Execution exec = Execution::parallel)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using R = decltype(fn(std::size_t{0}));
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  if (exec == Execution::serial) {
    for (std::size_t i = 0; i < n; ++i) slots[i].emplace(fn(i));
  } else {
    const auto count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long i = 0; i < count; ++i) {
      try {
        slots[static_cast<std::size_t>(i)].emplace(fn(static_cast<std::size_t>(i)));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace qdj::kernels

namespace qdj {

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  return kernels::matmul(a, b);
}

template <class T>
Matrix<T> commutator(const Matrix<T>& a, const Matrix<T>& b) {
  return a * b - b * a;
}

template <class T>
Matrix<T> matrix_power(const Matrix<T>& a, int exponent) {
  a.require_square("matrix_power");
  Matrix<T> acc = Matrix<T>::identity(a.rows());
  for (int i = 0; i < exponent; ++i) acc = acc * a;
  return acc;
}

template <class T>
std::vector<T> apply(const Matrix<T>& a, std::span<const T> x) {
  if (a.cols() != x.size()) throw std::invalid_argument("apply: dimension mismatch");
  std::vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

}  // namespace qdj
