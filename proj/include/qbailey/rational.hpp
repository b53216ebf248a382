#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

#include "errors.hpp"

namespace qbailey {

/// Exact rational scalar backed by GMP's mpq. Always canonical:
/// gcd(num, den) = 1 and den > 0. Construction from a zero denominator
/// throws std::domain_error.
class Rational {
public:
  Rational() : v_(0) {}
  Rational(long n) : v_(static_cast<signed long>(n)) {}  // NOLINT: implicit by design
  Rational(long long n) : Rational(static_cast<long>(n)) {
    static_assert(sizeof(long) == sizeof(long long), "long long must fit in long here");
  }
  Rational(int n) : v_(n) {}  // NOLINT: implicit by design

  Rational(long num, long den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    v_ = mpq_class(mpz_class(num), mpz_class(den));
    v_.canonicalize();
  }

  explicit Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

  /// Parses "p", "-p", or "p/q" in base 10. Throws std::invalid_argument on
  /// malformed input, std::domain_error on a zero denominator.
  static Rational from_string(const std::string& s) {
    mpq_class v;
    if (s.empty() || mpq_set_str(v.get_mpq_t(), s.c_str(), 10) != 0)
      throw std::invalid_argument("Rational: cannot parse \"" + s + "\"");
    if (mpz_sgn(mpq_denref(v.get_mpq_t())) == 0)
      throw std::domain_error("Rational: zero denominator");
    v.canonicalize();
    return Rational(std::move(v));
  }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  /// Exact conversion; requires an integer value that fits in long.
  long to_long() const {
    if (!is_integer() || !mpz_fits_slong_p(mpq_numref(v_.get_mpq_t())))
      throw std::domain_error("rational is not a machine-size integer: " + to_string());
    return mpz_get_si(mpq_numref(v_.get_mpq_t()));
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  Rational inverse() const {
    if (is_zero()) throw std::domain_error("Rational: inverse of zero");
    return Rational(mpq_class(1) / v_);
  }

  Rational abs() const { return Rational(mpq_class(::abs(v_))); }

  /// Integer power; negative exponents invert (zero base then throws).
  Rational pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), mpq_numref(v_.get_mpq_t()), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), mpq_denref(v_.get_mpq_t()), static_cast<unsigned long>(e));
    return Rational(mpq_class(num, den));
  }

  /// Renders as "p" or "p/q" in lowest terms.
  std::string to_string() const { return v_.get_str(); }

  double to_double() const { return v_.get_d(); }

  const mpq_class& raw() const { return v_; }
  mpq_class& raw() { return v_; }

private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace qbailey
