#pragma once

#include <stdexcept>
#include <string>

#include "rational.hpp"

namespace qbailey {

/// A single term c * q^e with exact rational c and integer e (possibly
/// negative). The zero monomial is {0, 0}; its exponent is meaningless.
struct Monomial {
  Rational coeff = 0;
  long exponent = 0;

  Monomial() = default;
  Monomial(Rational c, long e) : coeff(std::move(c)), exponent(coeff.is_zero() ? 0 : e) {}

  static Monomial one() { return {1, 0}; }
  static Monomial q(long e = 1) { return {1, e}; }
  static Monomial constant(Rational c) { return {std::move(c), 0}; }

  bool is_zero() const { return coeff.is_zero(); }
  bool is_one() const { return exponent == 0 && coeff.is_one(); }
  bool is_constant() const { return exponent == 0 || is_zero(); }

  Monomial operator-() const { return {-coeff, exponent}; }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    return {a.coeff * b.coeff, a.exponent + b.exponent};
  }

  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    if (b.is_zero()) throw std::domain_error("Monomial: division by zero");
    if (a.is_zero()) return {};
    return {a.coeff / b.coeff, a.exponent - b.exponent};
  }

  /// Integer power; negative powers invert (zero base throws).
  Monomial pow(long k) const {
    if (is_zero()) {
      if (k < 0) throw std::domain_error("Monomial: negative power of zero");
      return k == 0 ? one() : Monomial{};
    }
    return {coeff.pow(k), exponent * k};
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.coeff == b.coeff && (a.is_zero() || a.exponent == b.exponent);
  }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  /// Parses "q", "q^3", "-q^-2", "5", "-3/2", "3*q^2", "1/2*q".
  /// Throws std::invalid_argument on anything else.
  static Monomial parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("Monomial: empty string");
    auto qpos = s.find('q');
    if (qpos == std::string::npos) return constant(Rational::from_string(s));
    Rational c = 1;
    std::string head = s.substr(0, qpos);
    if (!head.empty() && head.back() == '*') head.pop_back();
    if (head == "-") c = -1;
    else if (!head.empty()) c = Rational::from_string(head);
    long e = 1;
    std::string tail = s.substr(qpos + 1);
    if (!tail.empty()) {
      if (tail.front() != '^')
        throw std::invalid_argument("Monomial: cannot parse \"" + s + "\"");
      size_t used = 0;
      e = std::stol(tail.substr(1), &used);
      if (used + 1 != tail.size())
        throw std::invalid_argument("Monomial: cannot parse \"" + s + "\"");
    }
    return {std::move(c), e};
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    if (exponent == 0) return coeff.to_string();
    std::string qs = exponent == 1 ? "q" : "q^" + std::to_string(exponent);
    if (coeff.is_one()) return qs;
    if (coeff == Rational(-1)) return "-" + qs;
    return coeff.to_string() + "*" + qs;
  }
};

}  // namespace qbailey
