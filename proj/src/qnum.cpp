#include "qdj/qnum.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace qdj {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') return false;
  }
  return true;
}

std::string strip(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
  return std::string(s.substr(b, e - b));
}

}  // namespace

QScalar::QScalar(long num, long den) {
  if (den == 0) throw std::invalid_argument("QScalar: zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

QScalar::QScalar(mpq_class value) : v_(std::move(value)) { v_.canonicalize(); }

QScalar QScalar::parse(std::string_view text) {
  const std::string s = strip(text);
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!num.empty() && num[0] == '+') num.erase(0, 1);
  if (!is_integer_literal(num) || !is_integer_literal(den)) {
    throw std::invalid_argument("QScalar: not a rational literal: '" + s + "'");
  }
  mpz_class n(num, 10);
  mpz_class d(den[0] == '+' ? den.substr(1) : den, 10);
  if (d == 0) throw std::invalid_argument("QScalar: zero denominator in '" + s + "'");
  mpq_class v(n, d);
  v.canonicalize();
  return QScalar(std::move(v));
}

std::string QScalar::str() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

QScalar QScalar::abs() const { return QScalar(mpq_class(::abs(v_))); }

QScalar QScalar::inverse() const {
  if (is_zero()) throw std::domain_error("QScalar: inverse of zero");
  return QScalar(mpq_class(1 / v_));
}

QScalar QScalar::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), static_cast<unsigned long>(exponent));
  return QScalar(mpq_class(num, den));
}

Real QScalar::to_real() const {
  return Real(v_.get_num().get_str()) / Real(v_.get_den().get_str());
}

QScalar& QScalar::operator+=(const QScalar& o) {
  v_ += o.v_;
  return *this;
}
QScalar& QScalar::operator-=(const QScalar& o) {
  v_ -= o.v_;
  return *this;
}
QScalar& QScalar::operator*=(const QScalar& o) {
  v_ *= o.v_;
  return *this;
}
QScalar& QScalar::operator/=(const QScalar& o) {
  if (o.is_zero()) throw std::domain_error("QScalar: division by zero");
  v_ /= o.v_;
  return *this;
}

Real to_real(const QScalar& x) { return x.to_real(); }

Real parse_real(std::string_view text) {
  const std::string s = strip(text);
  if (s.find('/') != std::string::npos || is_integer_literal(s)) {
    return QScalar::parse(s).to_real();
  }
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a numeric literal: '" + s + "'");
  }
}

std::string to_decimal_string(const Real& x, int digits) {
  if (x == 0) return "0";
  std::ostringstream os;
  os << std::scientific << std::setprecision(digits - 1) << x;
  return os.str();
}

QScalar q_pow(const QScalar& q, long n) { return q.pow(n); }

void require_deformation_parameter(const QScalar& q) {
  if (q.sign() <= 0) throw std::invalid_argument("q must be positive, got " + q.str());
  if (q == QScalar(1)) {
    throw std::invalid_argument("q = 1 is unsupported here; use the classical limit");
  }
}

QScalar q_int(long n, const QScalar& q) {
  require_deformation_parameter(q);
  return (q.pow(n) - q.pow(-n)) / (q - q.inverse());
}

QScalar q_int_or_classical(long n, const QScalar& q) {
  if (q.sign() <= 0) throw std::invalid_argument("q must be positive, got " + q.str());
  if (q == QScalar(1)) return QScalar(n);
  return q_int(n, q);
}

QScalar q_factorial(long n, const QScalar& q) {
  if (n < 0) throw std::invalid_argument("q_factorial: negative argument");
  QScalar acc(1);
  for (long m = 1; m <= n; ++m) acc *= q_int_or_classical(m, q);
  return acc;
}

QScalar q_binomial(long n, long k, const QScalar& q) {
  require_deformation_parameter(q);
  if (k < 0 || k > n) {
    throw std::invalid_argument("q_binomial: need 0 <= k <= n, got n=" + std::to_string(n) +
                                " k=" + std::to_string(k));
  }
  return q_factorial(n, q) / (q_factorial(k, q) * q_factorial(n - k, q));
}

}  // namespace qdj
