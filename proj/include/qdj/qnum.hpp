#pragma once

// Exact rational scalars at a fixed rational q, q-integers and Gaussian
// q-binomials, and the high-precision real type used wherever a square root
// is unavoidable.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#ifndef QDJ_REAL_BITS
#define QDJ_REAL_BITS 128
#endif

namespace qdj {

/// Approximate scalar: binary floating point with QDJ_REAL_BITS significand
/// bits. Equality between two Reals is only ever decided against an explicit
/// tolerance.
using Real = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<QDJ_REAL_BITS, boost::multiprecision::digit_base_2>,
    boost::multiprecision::et_off>;

static_assert(QDJ_REAL_BITS >= 64, "approximate scalars need at least a 64-bit significand");

/// Default tolerances: rank and internal consistency decisions use
/// kInternalTol, every surfaced residual is compared against kReportTol.
inline const Real kInternalTol{"1e-20"};
inline const Real kReportTol{"1e-8"};

/// Exact rational number in canonical form (gcd 1, positive denominator).
class QScalar {
 public:
  QScalar() = default;
  QScalar(long value) : v_(value) {}  // NOLINT(google-explicit-constructor)
  QScalar(long num, long den);
  explicit QScalar(mpq_class value);

  /// Accepts "p/q", "p" or "-p/q". Throws std::invalid_argument on garbage or
  /// a zero denominator.
  static QScalar parse(std::string_view text);

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  /// Always "p/q", including a denominator of 1 ("-3/1").
  std::string str() const;

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  QScalar abs() const;
  QScalar inverse() const;
  /// Integer power; negative exponents invert. Throws on 0 to a negative power.
  QScalar pow(long exponent) const;
  Real to_real() const;

  QScalar& operator+=(const QScalar& o);
  QScalar& operator-=(const QScalar& o);
  QScalar& operator*=(const QScalar& o);
  QScalar& operator/=(const QScalar& o);

  friend QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
  friend QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
  friend QScalar operator*(QScalar a, const QScalar& b) { return a *= b; }
  friend QScalar operator/(QScalar a, const QScalar& b) { return a /= b; }
  friend QScalar operator-(const QScalar& a) { return QScalar(mpq_class(-a.v_)); }

  friend bool operator==(const QScalar& a, const QScalar& b) { return cmp(a.v_, b.v_) == 0; }
  friend std::strong_ordering operator<=>(const QScalar& a, const QScalar& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class v_;
};

inline QScalar abs(const QScalar& x) { return x.abs(); }

Real to_real(const QScalar& x);
/// Parses a decimal ("1.25e-3") or rational ("5/2") string into a Real.
Real parse_real(std::string_view text);
/// Scientific notation with `digits` significant digits. Deterministic.
std::string to_decimal_string(const Real& x, int digits = 36);

/// q^n for integer n, exact.
QScalar q_pow(const QScalar& q, long n);

/// [n]_q = (q^n - q^-n) / (q - q^-1). Requires q > 0 and q != 1.
QScalar q_int(long n, const QScalar& q);

/// Same as q_int but returns the classical limit n at q = 1.
QScalar q_int_or_classical(long n, const QScalar& q);

/// [n]_q! = [1]_q [2]_q ... [n]_q, with the classical limit at q = 1.
QScalar q_factorial(long n, const QScalar& q);

/// Gaussian binomial [n]!/([k]![n-k]!). Requires 0 <= k <= n, q > 0, q != 1.
QScalar q_binomial(long n, long k, const QScalar& q);

/// Throws std::invalid_argument unless q > 0 and q != 1.
void require_deformation_parameter(const QScalar& q);

}  // namespace qdj
