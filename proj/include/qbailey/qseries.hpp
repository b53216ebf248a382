#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "monomial.hpp"
#include "rational.hpp"

namespace qbailey {

/// Truncated Laurent series in q with exact rational coefficients.
///
/// A series stores its valuation v, an exclusive truncation order o, and the
/// dense coefficient block for exponents v..o-1. Coefficients at exponents
/// below v are exactly zero; coefficients at or beyond o are unknown and
/// reading them throws BeyondTruncation. The zero series has an empty block
/// and v == o. Invariants: block size == o - v, and the lowest stored
/// coefficient is nonzero (leading zeros are absorbed into the valuation).
///
/// Truncation orders shrink through arithmetic exactly as far as honesty
/// requires and no further: adding takes the min of the operand orders, and
/// multiplying accounts for the operand valuations so that no coefficient is
/// ever fabricated, even at negative exponents.
class QSeries {
public:
  QSeries() : valuation_(0), order_(0) {}

  static QSeries zero(long order) { return QSeries(order, order, {}); }

  static QSeries one(long order) { return monomial_series(Monomial::one(), order); }

  /// The single term m, truncated to the given order (so an exponent at or
  /// beyond the order yields the zero series).
  static QSeries monomial_series(const Monomial& m, long order) {
    if (m.is_zero() || m.exponent >= order) return zero(order);
    std::vector<Rational> c(static_cast<size_t>(order - m.exponent));
    c[0] = m.coeff;
    return QSeries(m.exponent, order, std::move(c));
  }

  long valuation() const { return valuation_; }
  long order() const { return order_; }
  bool is_zero() const { return c_.empty(); }

  /// Coefficient of q^k. Exact zero below the valuation; throws
  /// BeyondTruncation at or beyond the order.
  const Rational& coeff_at(long k) const {
    if (k >= order_) throw BeyondTruncation(k, order_);
    if (k < valuation_) return zero_coeff();
    return c_[static_cast<size_t>(k - valuation_)];
  }

  /// First nonzero term, or the zero monomial for the zero series.
  Monomial leading_term() const {
    if (is_zero()) return Monomial{};
    return {c_.front(), valuation_};
  }

  QSeries operator-() const {
    std::vector<Rational> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return QSeries(valuation_, order_, std::move(c));
  }

  friend QSeries operator+(const QSeries& a, const QSeries& b) { return add(a, b, false); }
  friend QSeries operator-(const QSeries& a, const QSeries& b) { return add(a, b, true); }

  QSeries& operator+=(const QSeries& o) { return *this = *this + o; }
  QSeries& operator-=(const QSeries& o) { return *this = *this - o; }
  QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

  QSeries scaled(const Rational& r) const {
    if (r.is_zero()) return zero(order_);
    std::vector<Rational> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * r;
    return QSeries(valuation_, order_, std::move(c));
  }

  /// Multiplication by a single term c*q^e. Exact: the window shifts by e
  /// (down for negative e, since the unknown tail shifts with it).
  QSeries shifted_scaled(const Monomial& m) const {
    if (m.is_zero()) return zero(order_ + m.exponent);
    std::vector<Rational> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * m.coeff;
    return QSeries(valuation_ + m.exponent, order_ + m.exponent, std::move(c));
  }

  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    long order = mul_order(a, b);
    if (a.is_zero() || b.is_zero()) return zero(order);
    long val = a.valuation_ + b.valuation_;
    long len = order - val;
    if (len <= 0) return zero(order);
    std::vector<Rational> c(static_cast<size_t>(len));
    // Outer loop over the operand with fewer nonzero coefficients.
    const QSeries& s = a.nonzero_count() <= b.nonzero_count() ? a : b;
    const QSeries& t = &s == &a ? b : a;
    mpq_t prod;
    mpq_init(prod);
    for (size_t i = 0; i < s.c_.size() && static_cast<long>(i) < len; ++i) {
      if (s.c_[i].is_zero()) continue;
      size_t jmax = std::min(t.c_.size(), static_cast<size_t>(len - static_cast<long>(i)));
      for (size_t j = 0; j < jmax; ++j) {
        if (t.c_[j].is_zero()) continue;
        mpq_mul(prod, s.c_[i].raw().get_mpq_t(), t.c_[j].raw().get_mpq_t());
        mpq_class& dst = c[i + j].raw();
        mpq_add(dst.get_mpq_t(), dst.get_mpq_t(), prod);
      }
    }
    mpq_clear(prod);
    return QSeries(val, order, std::move(c));
  }

  /// Multiplicative inverse, truncated to min(order, o - 2v) where o and v
  /// are this series' order and valuation; that bound is where knowledge of
  /// the inverse genuinely stops. Throws ZeroLeadingTerm on the zero series.
  QSeries inverse(long order) const {
    if (is_zero()) throw ZeroLeadingTerm("inverse of the zero series");
    long m = std::min(order, order_ - 2 * valuation_);
    long len = m + valuation_;  // inverse valuation is -v
    if (len <= 0) return zero(m);
    std::vector<Rational> b(static_cast<size_t>(len));
    b[0] = c_[0].inverse();
    mpq_t acc, prod;
    mpq_init(acc);
    mpq_init(prod);
    for (long k = 1; k < len; ++k) {
      mpq_set_ui(acc, 0, 1);
      long jmax = std::min<long>(k, static_cast<long>(c_.size()) - 1);
      for (long j = 1; j <= jmax; ++j) {
        if (c_[static_cast<size_t>(j)].is_zero()) continue;
        mpq_mul(prod, c_[static_cast<size_t>(j)].raw().get_mpq_t(),
                b[static_cast<size_t>(k - j)].raw().get_mpq_t());
        mpq_add(acc, acc, prod);
      }
      mpq_div(acc, acc, c_[0].raw().get_mpq_t());
      mpq_neg(b[static_cast<size_t>(k)].raw().get_mpq_t(), acc);
    }
    mpq_clear(acc);
    mpq_clear(prod);
    return QSeries(-valuation_, m, std::move(b));
  }

  /// Drops coefficients at or beyond the new order. Never extends: a request
  /// beyond the current order returns the series unchanged.
  QSeries truncated(long order) const {
    if (order >= order_) return *this;
    if (valuation_ >= order) return zero(order);
    std::vector<Rational> c(c_.begin(), c_.begin() + (order - valuation_));
    return QSeries(valuation_, order, std::move(c));
  }

  /// Substitutes q -> q^k for k >= 1. Exponents scale by k; every exponent
  /// that is not a multiple of k is known to be zero, so the order scales too.
  QSeries dilated(long k) const {
    if (k < 1) throw std::invalid_argument("QSeries::dilated: k must be >= 1");
    if (is_zero()) return zero(order_ * k);
    std::vector<Rational> c(static_cast<size_t>((order_ - valuation_) * k));
    for (size_t i = 0; i < c_.size(); ++i) c[i * static_cast<size_t>(k)] = c_[i];
    return QSeries(valuation_ * k, order_ * k, std::move(c));
  }

  /// Substitutes q -> -q (flips the sign of odd-exponent coefficients).
  QSeries negated_argument() const {
    std::vector<Rational> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) {
      long e = valuation_ + static_cast<long>(i);
      c[i] = (e % 2 != 0) ? -c_[i] : c_[i];
    }
    return QSeries(valuation_, order_, std::move(c));
  }

  /// Structural equality: same window and same stored coefficients.
  friend bool operator==(const QSeries& a, const QSeries& b) {
    return a.valuation_ == b.valuation_ && a.order_ == b.order_ && a.c_ == b.c_;
  }
  friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }

  long nonzero_count() const {
    long n = 0;
    for (const auto& r : c_)
      if (!r.is_zero()) ++n;
    return n;
  }

  std::string to_string(size_t max_terms = 12) const {
    std::string out;
    size_t shown = 0;
    bool truncated_terms = false;
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (shown == max_terms) {
        truncated_terms = true;
        break;
      }
      Monomial t{c_[i], valuation_ + static_cast<long>(i)};
      std::string ts = t.to_string();
      if (out.empty()) {
        out = ts;
      } else if (ts.front() == '-') {
        out += " - " + ts.substr(1);
      } else {
        out += " + " + ts;
      }
      ++shown;
    }
    if (truncated_terms) out += " + ...";
    if (!out.empty()) out += " + ";
    out += "O(q^" + std::to_string(order_) + ")";
    return out;
  }

  /// Direct constructor from a dense block; trims leading zeros into the
  /// valuation. The block must span exactly [valuation, order).
  QSeries(long valuation, long order, std::vector<Rational> coeffs)
      : valuation_(valuation), order_(order), c_(std::move(coeffs)) {
    if (static_cast<long>(c_.size()) != order_ - valuation_)
      throw std::invalid_argument("QSeries: coefficient block does not span the window");
    size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_zero()) ++lead;
    if (lead > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
      valuation_ += static_cast<long>(lead);
    }
    if (c_.empty()) valuation_ = order_;
  }

private:
  static const Rational& zero_coeff() {
    static const Rational z = 0;
    return z;
  }

  static long mul_order(const QSeries& a, const QSeries& b) {
    // min(o1, o2, o1+v2, o2+v1): with nonnegative valuations this is just
    // min(o1, o2); with negative ones it stops short of fabricated tails.
    return std::min(std::min(a.order_, b.order_),
                    std::min(a.order_ + b.valuation_, b.order_ + a.valuation_));
  }

  static QSeries add(const QSeries& a, const QSeries& b, bool subtract) {
    long order = std::min(a.order_, b.order_);
    long val = std::min(std::min(a.valuation_, b.valuation_), order);
    std::vector<Rational> c(static_cast<size_t>(order - val));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      long e = a.valuation_ + static_cast<long>(i);
      if (e >= order) break;
      c[static_cast<size_t>(e - val)] = a.c_[i];
    }
    for (size_t i = 0; i < b.c_.size(); ++i) {
      long e = b.valuation_ + static_cast<long>(i);
      if (e >= order) break;
      Rational& dst = c[static_cast<size_t>(e - val)];
      if (subtract)
        dst -= b.c_[i];
      else
        dst += b.c_[i];
    }
    return QSeries(val, order, std::move(c));
  }

  long valuation_;
  long order_;
  std::vector<Rational> c_;
};

/// s * (1 - m) without a full convolution.
inline QSeries mul_linear(const QSeries& s, const Monomial& m) {
  if (m.is_zero()) return s;
  return s - s.shifted_scaled(m);
}

/// s / (1 - m) by forward recurrence, one pass over the window.
/// A constant m == 1 makes the divisor identically zero: ZeroLeadingTerm.
inline QSeries div_linear(const QSeries& s, const Monomial& m) {
  if (m.is_zero()) return s;
  if (m.exponent == 0) {
    if (m.coeff.is_one()) throw ZeroLeadingTerm("division by 1 - 1");
    return s.scaled((Rational(1) - m.coeff).inverse());
  }
  if (m.exponent < 0) {
    // 1 - c q^d = (-c q^d)(1 - (1/c) q^{-d}) for d < 0; peel off the unit
    // monomial and recurse into the positive-exponent case.
    Monomial unit{-m.coeff.inverse(), -m.exponent};
    return div_linear(s.shifted_scaled(unit), {m.coeff.inverse(), -m.exponent});
  }
  if (s.is_zero()) return s;
  long val = s.valuation(), order = s.order();
  long d = m.exponent;
  std::vector<Rational> r(static_cast<size_t>(order - val));
  mpq_t prod;
  mpq_init(prod);
  for (long k = 0; k < order - val; ++k) {
    Rational v = s.coeff_at(val + k);
    if (k >= d && !r[static_cast<size_t>(k - d)].is_zero()) {
      mpq_mul(prod, m.coeff.raw().get_mpq_t(), r[static_cast<size_t>(k - d)].raw().get_mpq_t());
      mpq_add(v.raw().get_mpq_t(), v.raw().get_mpq_t(), prod);
    }
    r[static_cast<size_t>(k)] = std::move(v);
  }
  mpq_clear(prod);
  return QSeries(val, order, std::move(r));
}

/// Finite product prod_{i=0}^{n-1} (1 - first * q^{i*step}), truncated to
/// the given order. step may be any integer; n must be >= 0.
inline QSeries poch_finite(const Monomial& first, long step, long n, long order) {
  if (n < 0) throw std::invalid_argument("poch_finite: negative length");
  QSeries r = QSeries::one(order);
  for (long i = 0; i < n; ++i)
    r = mul_linear(r, {first.coeff, first.exponent + i * step});
  return r;
}

/// Infinite product prod_{i>=0} (1 - first * q^{i*step}), truncated to the
/// given order. Requires step >= 1 (otherwise the factor exponents never
/// escape the window): NonConvergent.
inline QSeries poch_infinite(const Monomial& first, long step, long order) {
  if (first.is_zero()) return QSeries::one(order);
  if (step < 1)
    throw NonConvergent("infinite product needs a positive exponent step, got " +
                        std::to_string(step));
  QSeries r = QSeries::one(order);
  long i = 0;
  while (true) {
    long e = first.exponent + i * step;
    if (e >= r.order() - r.valuation() && e >= 0) break;
    r = mul_linear(r, {first.coeff, e});
    if (r.is_zero()) break;
    ++i;
  }
  return r;
}

/// 1 / prod_{i=0}^{n-1} (1 - first * q^{i*step}) via repeated linear
/// division: one pass per factor, no full inversion.
inline QSeries poch_finite_inverse(const Monomial& first, long step, long n, long order) {
  if (n < 0) throw std::invalid_argument("poch_finite_inverse: negative length");
  QSeries r = QSeries::one(order);
  for (long i = 0; i < n; ++i) {
    Monomial f{first.coeff, first.exponent + i * step};
    if (f.exponent == 0 && f.coeff.is_one())
      throw ZeroLeadingTerm("inverse of a product with a vanishing factor");
    r = div_linear(r, f);
  }
  return r;
}

/// Accumulates sparse (exponent, coefficient) contributions, then freezes
/// them into a series at a chosen order. Terms at or beyond the order are
/// dropped; repeated exponents add.
class TermAccumulator {
public:
  void add(long exponent, const Rational& coeff) {
    if (coeff.is_zero()) return;
    terms_[exponent] += coeff;
  }

  QSeries series(long order) const {
    long val = order;
    for (const auto& [e, c] : terms_)
      if (!c.is_zero() && e < order) {
        val = std::min(val, e);
      }
    std::vector<Rational> c(static_cast<size_t>(order - val));
    for (const auto& [e, v] : terms_)
      if (e >= val && e < order) c[static_cast<size_t>(e - val)] = v;
    return QSeries(val, order, std::move(c));
  }

private:
  std::map<long, Rational> terms_;
};

/// Exponent of the first coefficient on which a and b disagree, scanning the
/// window both know: [min valuation, min order). Empty optional: no
/// disagreement there (callers must still check the orders suffice).
inline std::optional<long> first_mismatch(const QSeries& a, const QSeries& b) {
  long from = std::min(a.valuation(), b.valuation());
  long to = std::min(a.order(), b.order());
  for (long k = from; k < to; ++k)
    if (a.coeff_at(k) != b.coeff_at(k)) return k;
  return std::nullopt;
}

/// True when a and b agree on every coefficient both know.
inline bool same_series(const QSeries& a, const QSeries& b) {
  return !first_mismatch(a, b).has_value();
}

/// Runs a builder that takes a working order, re-running with an inflated
/// request until the result's window reaches the target, then truncates to
/// exactly the target. Negative-exponent shifts inside a builder cost window;
/// this pays the cost transparently.
template <class Builder>
QSeries exact_order(Builder&& build, long order) {
  QSeries s = build(order);
  for (int attempt = 0; s.order() < order; ++attempt) {
    if (attempt >= 8)
      throw NonConvergent("builder keeps losing truncation window");
    s = build(order + (order - s.order()));
  }
  return s.truncated(order);
}

/// Sums term(0) + term(1) + ... where every term is truncated at exactly
/// `order`. Stops once 8 consecutive terms lie entirely at or beyond the
/// order. Throws NonTerminating when term valuations stop climbing (no
/// progress across a 16-term window) or the index overruns order + 64.
template <class TermFn>
QSeries sum_adaptive(TermFn&& term, long order, const std::string& what) {
  QSeries acc = QSeries::zero(order);
  std::vector<long> vals;
  long quiet = 0;
  for (long n = 0;; ++n) {
    if (n > order + 64)
      throw NonTerminating(what + ": no stabilization after " + std::to_string(n) + " terms");
    QSeries t = term(n);
    long v = t.valuation();  // == order for the zero series
    vals.push_back(v);
    if (v >= order) {
      if (++quiet >= 8) break;
      continue;
    }
    quiet = 0;
    acc += t;
    if (n >= 24 && vals[static_cast<size_t>(n)] <= vals[static_cast<size_t>(n - 16)])
      throw NonTerminating(what + ": term valuations stopped climbing near index " +
                           std::to_string(n));
  }
  return acc;
}

}  // namespace qbailey
