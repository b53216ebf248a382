#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qseries.hpp"

namespace qbailey {

/// A pair of coefficient families (alpha_n, beta_n) tied together by the
/// discrete convolution
///
///   beta_n = sum_{i=0}^{n} alpha_i / ( (Q;Q)_{n-i} (A*Q;Q)_{n+i} ),
///
/// where Q = q^base_exp and A is the relative monomial. Generators receive
/// (n, order) and must return a series truncated at exactly that order.
struct BaileyPair {
  std::string label;
  Monomial relative;  // A
  long base_exp = 1;  // Q = q^base_exp
  std::function<QSeries(long n, long order)> alpha;
  std::function<QSeries(long n, long order)> beta;
};

struct PairFailure {
  long n = 0;        // index of the first failing relation
  long exponent = 0;  // first disagreeing power of q
  Rational lhs;      // beta_n coefficient there
  Rational rhs;      // convolution coefficient there
};

struct PairCheckReport {
  std::string label;
  long n_max = 0;
  long order = 0;
  long compared_order = 0;  // min window actually compared, == order normally
  std::optional<PairFailure> failure;
  bool ok() const { return !failure.has_value(); }
};

/// Checks the defining convolution for n = 0..n_max at the given order.
/// Stops at the first failing n and records where the series disagree.
inline PairCheckReport verify_pair(const BaileyPair& p, long n_max, long order) {
  PairCheckReport report{p.label, n_max, order, order, std::nullopt};
  const long b = p.base_exp;
  // Incrementally extended inverse products: inv_qq[m] = 1/(Q;Q)_m and
  // inv_aq[m] = 1/(A*Q;Q)_m, each one linear-division pass per step.
  std::vector<QSeries> inv_qq{QSeries::one(order)};
  std::vector<QSeries> inv_aq{QSeries::one(order)};
  auto extend_to = [&](std::vector<QSeries>& chain, const Monomial& first, long m) {
    while (static_cast<long>(chain.size()) <= m) {
      long i = static_cast<long>(chain.size());
      chain.push_back(div_linear(chain.back(), {first.coeff, first.exponent + (i - 1) * b}));
    }
  };
  const Monomial qq_first{Rational(1), b};
  const Monomial aq_first{p.relative.coeff, p.relative.exponent + b};
  std::vector<QSeries> alphas;
  for (long n = 0; n <= n_max; ++n) {
    alphas.push_back(p.alpha(n, order));
    extend_to(inv_qq, qq_first, n);
    extend_to(inv_aq, aq_first, 2 * n);
    QSeries conv = QSeries::zero(order);
    for (long i = 0; i <= n; ++i)
      conv += alphas[static_cast<size_t>(i)] * inv_qq[static_cast<size_t>(n - i)] *
              inv_aq[static_cast<size_t>(n + i)];
    QSeries beta = p.beta(n, order);
    report.compared_order =
        std::min(report.compared_order, std::min(beta.order(), conv.order()));
    if (auto miss = first_mismatch(beta, conv)) {
      report.failure = PairFailure{n, *miss, beta.coeff_at(*miss), conv.coeff_at(*miss)};
      return report;
    }
  }
  return report;
}

/// Rescales both sequences by the same nonzero constant; the defining
/// relation is linear, so validity is preserved.
inline BaileyPair scaled_pair(const BaileyPair& p, const Rational& lambda) {
  if (lambda.is_zero()) throw DegenerateParameter("pair scaling by zero");
  BaileyPair out = p;
  out.label = p.label + "/scaled";
  auto a = p.alpha, b = p.beta;
  out.alpha = [a, lambda](long n, long order) { return a(n, order).scaled(lambda); };
  out.beta = [b, lambda](long n, long order) { return b(n, order).scaled(lambda); };
  return out;
}

/// The pair with alpha_n = [n == 0]; its beta_n = 1/((Q;Q)_n (A*Q;Q)_n)
/// follows immediately from the convolution.
inline BaileyPair unit_pair(const Monomial& relative, long base_exp) {
  BaileyPair p;
  p.label = "unit";
  p.relative = relative;
  p.base_exp = base_exp;
  p.alpha = [](long n, long order) {
    return n == 0 ? QSeries::one(order) : QSeries::zero(order);
  };
  Monomial aq{relative.coeff, relative.exponent + base_exp};
  long b = base_exp;
  p.beta = [aq, b](long n, long order) {
    QSeries s = poch_finite_inverse({Rational(1), b}, b, n, order);
    return s * poch_finite_inverse(aq, b, n, order);
  };
  return p;
}

/// Doubles a pair: from (alpha, beta) relative A over base Q = q^b, builds a
/// pair relative A^2 over base q^{2b}:
///
///   alpha'_n = (1 + A Q^{2n}) / ((1 + A) Q^n) * alpha_n
///   beta'_n  = Q^{-n} / (-A;Q)_{2n} *
///              sum_{k=0}^n (-1)^{n-k} Q^{(n-k)^2-(n-k)} / (Q^2;Q^2)_{n-k} * beta_k
///
/// Requires 1 + A invertible as a monomial-led unit: A == -1 is degenerate.
inline BaileyPair base_change(const BaileyPair& p) {
  if (p.relative.is_constant() && p.relative.coeff == Rational(-1))
    throw DegenerateParameter("doubling needs 1 + A nonzero, got A = -1");
  const long b = p.base_exp;
  const Monomial a = p.relative;
  BaileyPair out;
  out.label = p.label + "/doubled";
  out.relative = a * a;
  out.base_exp = 2 * b;
  out.alpha = [p, a, b](long n, long order) {
    return exact_order(
        [&](long w) {
          QSeries s = p.alpha(n, w + n * b);
          s = mul_linear(s, {-a.coeff, a.exponent + 2 * n * b});  // times (1 + A Q^{2n})
          s = div_linear(s, {-a.coeff, a.exponent});              // over (1 + A)
          return s.shifted_scaled({Rational(1), -n * b});         // over Q^n
        },
        order);
  };
  out.beta = [p, a, b](long n, long order) {
    return exact_order(
        [&](long w) {
          long inner = w + n * b;
          QSeries sum = QSeries::zero(inner);
          QSeries inv_q2 = QSeries::one(inner);  // 1/(Q^2;Q^2)_{n-k}, extended as k falls
          for (long k = n; k >= 0; --k) {
            long m = n - k;
            if (m > 0) inv_q2 = div_linear(inv_q2, {Rational(1), 2 * b * m});
            Monomial t{(m % 2 == 0) ? Rational(1) : Rational(-1), b * (m * m - m)};
            sum += p.beta(k, inner).shifted_scaled(t) * inv_q2;
          }
          for (long i = 0; i < 2 * n; ++i)
            sum = div_linear(sum, {-a.coeff, a.exponent + i * b});  // over (-A;Q)_{2n}
          return sum.shifted_scaled({Rational(1), -n * b});         // over Q^n
        },
        order);
  };
  return out;
}

struct BaileyLemmaResult {
  QSeries lhs;  // sum over beta_n with the (X;Q)_n (Y;Q)_n weights
  QSeries rhs;  // product prefactor times the weighted alpha_n sum
};

namespace detail {

inline QSeries poch_infinite_inverse_at(const Monomial& first, long step, long order) {
  QSeries prod = poch_infinite(first, step, order);
  return prod.inverse(order);
}

template <class Fn>
auto degenerate_guard(Fn&& fn, const std::string& what) {
  try {
    return fn();
  } catch (const ZeroLeadingTerm& e) {
    throw DegenerateParameter(what + " collapses: " + e.what());
  } catch (const NonConvergent& e) {
    throw DegenerateParameter(what + " diverges: " + e.what());
  }
}

}  // namespace detail

/// Weighted transform of a pair: with Q = q^b, A the relative monomial, and
/// monomial parameters X, Y, evaluates both sides of
///
///   sum_n (X;Q)_n (Y;Q)_n (AQ/XY)^n beta_n
///     = (AQ/X;Q)_inf (AQ/Y;Q)_inf / ((AQ;Q)_inf (AQ/XY;Q)_inf)
///       * sum_n (X;Q)_n (Y;Q)_n (AQ/XY)^n / ((AQ/X;Q)_n (AQ/Y;Q)_n) alpha_n
///
/// independently. Both sums stop adaptively; parameter choices that collapse
/// a denominator raise DegenerateParameter, ones whose terms never leave the
/// window raise NonTerminating.
inline BaileyLemmaResult bailey_lemma(const BaileyPair& p, const Monomial& X,
                                      const Monomial& Y, long order) {
  if (X.is_zero() || Y.is_zero())
    throw DegenerateParameter("weighted transform needs nonzero X and Y");
  const long b = p.base_exp;
  const Monomial AQ{p.relative.coeff, p.relative.exponent + b};
  const Monomial AQX = AQ / X;
  const Monomial AQY = AQ / Y;
  const Monomial AQXY = AQ / (X * Y);
  return detail::degenerate_guard(
      [&]() -> BaileyLemmaResult {
        auto lhs_term = [&](long n) {
          return exact_order(
              [&](long w) {
                QSeries t = p.beta(n, w);
                t = t * poch_finite(X, b, n, w);
                t = t * poch_finite(Y, b, n, w);
                return t.shifted_scaled(AQXY.pow(n));
              },
              order);
        };
        QSeries lhs = sum_adaptive(lhs_term, order, "beta-side sum");
        auto rhs_term = [&](long n) {
          return exact_order(
              [&](long w) {
                QSeries t = p.alpha(n, w);
                t = t * poch_finite(X, b, n, w);
                t = t * poch_finite(Y, b, n, w);
                for (long i = 0; i < n; ++i) {
                  t = div_linear(t, {AQX.coeff, AQX.exponent + i * b});
                  t = div_linear(t, {AQY.coeff, AQY.exponent + i * b});
                }
                return t.shifted_scaled(AQXY.pow(n));
              },
              order);
        };
        QSeries rhs = sum_adaptive(rhs_term, order, "alpha-side sum");
        QSeries prefactor = exact_order(
            [&](long w) {
              QSeries num = poch_infinite(AQX, b, w) * poch_infinite(AQY, b, w);
              QSeries den = poch_infinite(AQ, b, w) * poch_infinite(AQXY, b, w);
              return num * den.inverse(w);
            },
            order);
        return BaileyLemmaResult{lhs, prefactor * rhs};
      },
      "weighted transform");
}

/// The Y -> infinity limit of the weighted transform:
///
///   sum_n (X;Q)_n (-1)^n Q^{n(n-1)/2} (AQ/X)^n beta_n
///     = (AQ/X;Q)_inf / (AQ;Q)_inf
///       * sum_n (X;Q)_n (-1)^n Q^{n(n-1)/2} (AQ/X)^n / (AQ/X;Q)_n alpha_n
inline BaileyLemmaResult bailey_lemma_y_to_infinity(const BaileyPair& p, const Monomial& X,
                                                    long order) {
  if (X.is_zero()) throw DegenerateParameter("weighted transform needs nonzero X");
  const long b = p.base_exp;
  const Monomial AQ{p.relative.coeff, p.relative.exponent + b};
  const Monomial AQX = AQ / X;
  return detail::degenerate_guard(
      [&]() -> BaileyLemmaResult {
        auto weight = [&](long n) {
          Monomial m = AQX.pow(n);
          if (n % 2 != 0) m = -m;
          m.exponent += b * n * (n - 1) / 2;
          return m;
        };
        auto lhs_term = [&](long n) {
          return exact_order(
              [&](long w) {
                QSeries t = p.beta(n, w);
                t = t * poch_finite(X, b, n, w);
                return t.shifted_scaled(weight(n));
              },
              order);
        };
        QSeries lhs = sum_adaptive(lhs_term, order, "beta-side sum");
        auto rhs_term = [&](long n) {
          return exact_order(
              [&](long w) {
                QSeries t = p.alpha(n, w);
                t = t * poch_finite(X, b, n, w);
                for (long i = 0; i < n; ++i)
                  t = div_linear(t, {AQX.coeff, AQX.exponent + i * b});
                return t.shifted_scaled(weight(n));
              },
              order);
        };
        QSeries rhs = sum_adaptive(rhs_term, order, "alpha-side sum");
        QSeries prefactor = exact_order(
            [&](long w) {
              return poch_infinite(AQX, b, w) * poch_infinite(AQ, b, w).inverse(w);
            },
            order);
        return BaileyLemmaResult{lhs, prefactor * rhs};
      },
      "weighted transform");
}

}  // namespace qbailey
