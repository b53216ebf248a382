#pragma once

#include <stdexcept>
#include <string>

#include "qbailey/bailey.hpp"
#include "qbailey/errors.hpp"
#include "qbailey/monomial.hpp"
#include "qbailey/qseries.hpp"

// Constructors for the concrete pairs exercised by the tests and the CLI:
// a three-parameter terminating family, its tied reduction (the two free
// parameters set opposite, reparametrized by their product), the doubled-base
// composite with one free parameter, three fixed specializations of that
// composite, and its small-second-parameter limit.

namespace qbailey {

namespace detail {

inline void require_index(long n) {
  if (n < 0) throw std::invalid_argument("pair sequence index must be >= 0");
}

/// Inner sum shared by the tied family and the doubled-base composite:
///
///   S_n(a,x) = 1 + sum_{j=1..n} (1 - a q^{2j-1}) (a;q)_{j-1} (x;q^2)_j
///                  / ( q^{j(j-1)/2} x^j (q;q)_j (a^2/x;q^2)_j ).
///
/// The j = 0 summand is 1: the leading two factors are read as a cancelling
/// pair, which also makes every ratio between consecutive summands a product
/// of linear factors. The j = 1 ratio skips the pair since it cancels
/// exactly; from j = 2 on the pair contributes (1 - a q^{j-2})/(1 - a q^{2j-3}).
inline QSeries tied_inner_sum(const Monomial& a, const Monomial& x, long n, long order) {
  const Monomial a2x = a * a / x;
  QSeries sum = QSeries::one(order);
  QSeries term = sum;
  for (long j = 1; j <= n; ++j) {
    if (j >= 2) {
      term = mul_linear(term, {a.coeff, a.exponent + (j - 2)});
      term = div_linear(term, {a.coeff, a.exponent + (2 * j - 3)});
    }
    term = mul_linear(term, {a.coeff, a.exponent + (2 * j - 1)});
    term = mul_linear(term, {x.coeff, x.exponent + (2 * j - 2)});
    term = div_linear(term, {Rational(1), j});
    term = div_linear(term, {a2x.coeff, a2x.exponent + (2 * j - 2)});
    term = term.shifted_scaled(x.pow(-1) * Monomial::q(-(j - 1)));
    sum = sum + term;
  }
  return sum;
}

/// Limit of tied_inner_sum as the second parameter goes to zero:
///
///   1 + sum_{j=1..n} (-1)^j (1 - a q^{2j-1}) (a;q)_{j-1}
///                    / ( a^{2j} q^{3j(j-1)/2} (q;q)_j ).
inline QSeries x_limit_inner_sum(const Monomial& a, long n, long order) {
  QSeries sum = QSeries::one(order);
  QSeries term = sum;
  const Monomial a_inv2 = a.pow(-2);
  for (long j = 1; j <= n; ++j) {
    if (j >= 2) {
      term = mul_linear(term, {a.coeff, a.exponent + (j - 2)});
      term = div_linear(term, {a.coeff, a.exponent + (2 * j - 3)});
    }
    term = mul_linear(term, {a.coeff, a.exponent + (2 * j - 1)});
    term = div_linear(term, {Rational(1), j});
    term = term.shifted_scaled(-(a_inv2 * Monomial::q(-3 * (j - 1))));
    sum = sum + term;
  }
  return sum;
}

/// Partial sum 1 + q^{-1} + q^{-3} + ... + q^{-n(n+1)/2} of inverse
/// triangular-exponent monomials; top == n gives T_n, and adding T_{n-1}
/// on top doubles every summand except the deepest.
inline QSeries triangular_tail(long n, bool add_previous, long order) {
  TermAccumulator acc;
  for (long j = 0; j <= n; ++j) {
    Rational w(add_previous && j < n ? 2 : 1);
    acc.add(-j * (j + 1) / 2, w);
  }
  return acc.series(order);
}

}  // namespace detail

/// Terminating three-parameter pair (relative monomial a, base exponent 1):
///
///   alpha_n = q^{n^2} (bc)^n (1 - a q^{2n}) (a/b;q)_n (a/c;q)_n
///             / ( (1 - a) (bq;q)_n (cq;q)_n ) * S_n,
///   S_n     = 1 + sum_{j=1..n} (-1)^j (1 - a q^{2j-1}) (a;q)_{j-1} (b;q)_j (c;q)_j
///                 / ( q^{j(j-1)/2} (bc)^j (q;q)_j (a/b;q)_j (a/c;q)_j ),
///   beta_n  = 1 / ( (bq;q)_n (cq;q)_n ).
inline BaileyPair pair_andrews_abc(const Monomial& a, const Monomial& b, const Monomial& c) {
  if (b.is_zero() || c.is_zero())
    throw DegenerateParameter("abc pair needs nonzero b and c; zero is a separate limit");
  if (a.is_one()) throw DegenerateParameter("abc pair divides by (1 - a); a = 1 collapses");
  BaileyPair p;
  p.label = "abc";
  p.relative = a;
  p.base_exp = 1;
  const Monomial ab = a / b, ac = a / c, bc = b * c;
  p.alpha = [a, b, c, ab, ac, bc](long n, long order) {
    detail::require_index(n);
    return detail::degenerate_guard(
        [&] {
          return exact_order(
              [&](long w) {
                QSeries pre = QSeries::one(w);
                for (long i = 0; i < n; ++i) {
                  pre = mul_linear(pre, {ab.coeff, ab.exponent + i});
                  pre = mul_linear(pre, {ac.coeff, ac.exponent + i});
                  pre = div_linear(pre, {b.coeff, b.exponent + 1 + i});
                  pre = div_linear(pre, {c.coeff, c.exponent + 1 + i});
                }
                pre = mul_linear(pre, {a.coeff, a.exponent + 2 * n});
                pre = div_linear(pre, {a.coeff, a.exponent});
                pre = pre.shifted_scaled(bc.pow(n) * Monomial::q(n * n));

                QSeries sum = QSeries::one(w);
                QSeries term = sum;
                for (long j = 1; j <= n; ++j) {
                  if (j >= 2) {
                    term = mul_linear(term, {a.coeff, a.exponent + (j - 2)});
                    term = div_linear(term, {a.coeff, a.exponent + (2 * j - 3)});
                  }
                  term = mul_linear(term, {a.coeff, a.exponent + (2 * j - 1)});
                  term = mul_linear(term, {b.coeff, b.exponent + (j - 1)});
                  term = mul_linear(term, {c.coeff, c.exponent + (j - 1)});
                  term = div_linear(term, {Rational(1), j});
                  term = div_linear(term, {ab.coeff, ab.exponent + (j - 1)});
                  term = div_linear(term, {ac.coeff, ac.exponent + (j - 1)});
                  term = term.shifted_scaled(-(bc.pow(-1) * Monomial::q(-(j - 1))));
                  sum = sum + term;
                }
                return pre * sum;
              },
              order);
        },
        "abc alpha");
  };
  p.beta = [b, c](long n, long order) {
    detail::require_index(n);
    return detail::degenerate_guard(
        [&] {
          return exact_order(
              [&](long w) {
                QSeries r = QSeries::one(w);
                for (long i = 0; i < n; ++i) {
                  r = div_linear(r, {b.coeff, b.exponent + 1 + i});
                  r = div_linear(r, {c.coeff, c.exponent + 1 + i});
                }
                return r;
              },
              order);
        },
        "abc beta");
  };
  return p;
}

/// Tied reduction of the three-parameter pair: the two free slots are set
/// opposite and the pair is reparametrized by their product x (relative a,
/// base exponent 1). Everything stays polynomial in x:
///
///   alpha_n = q^{n^2} (-x)^n (1 - a q^{2n}) (a^2/x;q^2)_n
///             / ( (1 - a) (xq^2;q^2)_n ) * S_n(a,x),
///   beta_n  = 1 / (xq^2;q^2)_n.
inline BaileyPair pair_abc_opposed(const Monomial& a, const Monomial& x) {
  if (x.is_zero())
    throw DegenerateParameter("opposed pair needs nonzero x; zero is a separate limit");
  if (a.is_one()) throw DegenerateParameter("opposed pair divides by (1 - a); a = 1 collapses");
  if ((a * a / x).is_one())
    throw DegenerateParameter("opposed pair collapses at x = a^2 (inner denominators vanish)");
  BaileyPair p;
  p.label = "abc-opposed";
  p.relative = a;
  p.base_exp = 1;
  const Monomial a2x = a * a / x;
  p.alpha = [a, x, a2x](long n, long order) {
    detail::require_index(n);
    return detail::degenerate_guard(
        [&] {
          return exact_order(
              [&](long w) {
                QSeries pre = QSeries::one(w);
                for (long i = 0; i < n; ++i) {
                  pre = mul_linear(pre, {a2x.coeff, a2x.exponent + 2 * i});
                  pre = div_linear(pre, {x.coeff, x.exponent + 2 + 2 * i});
                }
                pre = mul_linear(pre, {a.coeff, a.exponent + 2 * n});
                pre = div_linear(pre, {a.coeff, a.exponent});
                pre = pre.shifted_scaled((-x).pow(n) * Monomial::q(n * n));
                return pre * detail::tied_inner_sum(a, x, n, w);
              },
              order);
        },
        "opposed alpha");
  };
  p.beta = [x](long n, long order) {
    detail::require_index(n);
    return detail::degenerate_guard(
        [&] {
          return exact_order(
              [&](long w) {
                QSeries r = QSeries::one(w);
                for (long i = 0; i < n; ++i) r = div_linear(r, {x.coeff, x.exponent + 2 + 2 * i});
                return r;
              },
              order);
        },
        "opposed beta");
  };
  return p;
}

namespace detail {

inline void check_free_parameter_pair(const Monomial& a, const Monomial& x) {
  if (x.is_zero())
    throw DegenerateParameter("x = 0 is the separate small-parameter limit constructor");
  if (x.is_one()) throw DegenerateParameter("x = 1 collapses the closed beta form");
  if (a.is_constant() && (a.coeff == Rational(1) || a.coeff == Rational(-1)))
    throw DegenerateParameter("a = +-1 collapses the alpha prefactor");
  if ((a * a / x).is_one())
    throw DegenerateParameter("x = a^2 makes inner denominators vanish");
}

}  // namespace detail

/// One-free-parameter pair in the doubled base (relative a^2, base exponent
/// 2), built by pushing the tied reduction through base_change. The closed
/// beta form this composition reproduces is the one pair_theorem21_direct
/// evaluates; agreement of the two routes is a test target, so the two
/// constructors share no series code beyond the inner sum.
inline BaileyPair pair_theorem21(const Monomial& a, const Monomial& x) {
  detail::check_free_parameter_pair(a, x);
  BaileyPair p = base_change(pair_abc_opposed(a, x));
  p.label = "theorem21";
  return p;
}

/// Direct evaluation of the same doubled-base pair from its printed forms:
///
///   alpha_n = q^{n^2-n} (-x)^n (1 - a^2 q^{4n}) (a^2/x;q^2)_n
///             / ( (1 - a^2) (xq^2;q^2)_n ) * S_n(a,x),
///   beta_n  = (-1)^n q^{n^2} (1 - x)
///             / ( (-a;q)_{2n} (q^2;q^2)_n (1 - x q^{2n}) ).
inline BaileyPair pair_theorem21_direct(const Monomial& a, const Monomial& x) {
  detail::check_free_parameter_pair(a, x);
  const Monomial a2 = a * a;
  const Monomial a2x = a2 / x;
  BaileyPair p;
  p.label = "theorem21-direct";
  p.relative = a2;
  p.base_exp = 2;
  p.alpha = [a, x, a2, a2x](long n, long order) {
    detail::require_index(n);
    return detail::degenerate_guard(
        [&] {
          return exact_order(
              [&](long w) {
                QSeries pre = QSeries::one(w);
                for (long i = 0; i < n; ++i) {
                  pre = mul_linear(pre, {a2x.coeff, a2x.exponent + 2 * i});
                  pre = div_linear(pre, {x.coeff, x.exponent + 2 + 2 * i});
                }
                pre = mul_linear(pre, {a2.coeff, a2.exponent + 4 * n});
                pre = div_linear(pre, {a2.coeff, a2.exponent});
                pre = pre.shifted_scaled((-x).pow(n) * Monomial::q(n * n - n));
                return pre * detail::tied_inner_sum(a, x, n, w);
              },
              order);
        },
        "direct alpha");
  };
  p.beta = [a, x](long n, long order) {
    detail::require_index(n);
    return detail::degenerate_guard(
        [&] {
          return exact_order(
              [&](long w) {
                QSeries r = QSeries::one(w);
                for (long i = 0; i < 2 * n; ++i) r = div_linear(r, {-a.coeff, a.exponent + i});
                for (long i = 0; i < n; ++i) r = div_linear(r, {Rational(1), 2 + 2 * i});
                r = mul_linear(r, {x.coeff, x.exponent});
                r = div_linear(r, {x.coeff, x.exponent + 2 * n});
                return r.shifted_scaled({Rational(n % 2 == 0 ? 1 : -1), n * n});
              },
              order);
        },
        "direct beta");
  };
  return p;
}

/// Fixed specialization (relative q^2, base exponent 2):
///
///   alpha_n = (-1)^n q^{n(n-1)/2} (1 - q^{2n+1}) / (1 - q^2),
///   beta_n  = (-1)^n q^{n^2} / ( (-q;q)_{2n+1} (q^2;q^2)_n ).
inline BaileyPair pair_cor22() {
  BaileyPair p;
  p.label = "cor22";
  p.relative = Monomial::q(2);
  p.base_exp = 2;
  p.alpha = [](long n, long order) {
    detail::require_index(n);
    QSeries r = QSeries::monomial_series({Rational(n % 2 == 0 ? 1 : -1), n * (n - 1) / 2}, order);
    r = mul_linear(r, Monomial::q(2 * n + 1));
    return div_linear(r, Monomial::q(2)).truncated(order);
  };
  p.beta = [](long n, long order) {
    detail::require_index(n);
    QSeries r = QSeries::one(order);
    for (long i = 0; i <= 2 * n; ++i) r = div_linear(r, {Rational(-1), 1 + i});
    for (long i = 0; i < n; ++i) r = div_linear(r, {Rational(1), 2 + 2 * i});
    return r.shifted_scaled({Rational(n % 2 == 0 ? 1 : -1), n * n}).truncated(order);
  };
  return p;
}

/// Fixed specialization (relative q^4, base exponent 2), with the inverse
/// triangular tail T_n = sum_{j<=n} q^{-j(j+1)/2}:
///
///   alpha_n = (-1)^n q^{n^2} (1 - q^{4n+4}) / ( (1-q^4)(1-q^2) ) * T_n,
///   beta_n  = (-1)^n q^{n^2} / ( (-q;q)_{2n} (q^2;q^2)_n (1 - q^{4n+2}) ).
inline BaileyPair pair_cor23() {
  BaileyPair p;
  p.label = "cor23";
  p.relative = Monomial::q(4);
  p.base_exp = 2;
  p.alpha = [](long n, long order) {
    detail::require_index(n);
    return exact_order(
        [&](long w) {
          QSeries r = detail::triangular_tail(n, false, w);
          r = r.shifted_scaled({Rational(n % 2 == 0 ? 1 : -1), n * n});
          r = mul_linear(r, Monomial::q(4 * n + 4));
          r = div_linear(r, Monomial::q(4));
          return div_linear(r, Monomial::q(2));
        },
        order);
  };
  p.beta = [](long n, long order) {
    detail::require_index(n);
    QSeries r = QSeries::one(order);
    for (long i = 0; i < 2 * n; ++i) r = div_linear(r, {Rational(-1), 1 + i});
    for (long i = 0; i < n; ++i) r = div_linear(r, {Rational(1), 2 + 2 * i});
    r = div_linear(r, Monomial::q(4 * n + 2));
    return r.shifted_scaled({Rational(n % 2 == 0 ? 1 : -1), n * n}).truncated(order);
  };
  return p;
}

/// Fixed specialization (relative q^2, base exponent 2); the alpha carries
/// the doubled tail T_n + T_{n-1}:
///
///   alpha_n = (-1)^n q^{n^2} (1 + q^{2n+1}) / (1 - q^2) * (T_n + T_{n-1}),
///   beta_n  = (-1)^n q^{n^2} / ( (-q;q)_{2n} (q^2;q^2)_n (1 - q^{2n+1}) ).
inline BaileyPair pair_cor24() {
  BaileyPair p;
  p.label = "cor24";
  p.relative = Monomial::q(2);
  p.base_exp = 2;
  p.alpha = [](long n, long order) {
    detail::require_index(n);
    return exact_order(
        [&](long w) {
          QSeries r = detail::triangular_tail(n, true, w);
          r = r.shifted_scaled({Rational(n % 2 == 0 ? 1 : -1), n * n});
          r = mul_linear(r, {Rational(-1), 2 * n + 1});
          return div_linear(r, Monomial::q(2));
        },
        order);
  };
  p.beta = [](long n, long order) {
    detail::require_index(n);
    QSeries r = QSeries::one(order);
    for (long i = 0; i < 2 * n; ++i) r = div_linear(r, {Rational(-1), 1 + i});
    for (long i = 0; i < n; ++i) r = div_linear(r, {Rational(1), 2 + 2 * i});
    r = div_linear(r, Monomial::q(2 * n + 1));
    return r.shifted_scaled({Rational(n % 2 == 0 ? 1 : -1), n * n}).truncated(order);
  };
  return p;
}

/// Small-second-parameter limit of the doubled-base pair (relative a^2,
/// base exponent 2):
///
///   alpha_n = a^{2n} q^{2n(n-1)} (1 - a^2 q^{4n}) / (1 - a^2) * L_n(a),
///   beta_n  = (-1)^n q^{n^2} / ( (-a;q)_{2n} (q^2;q^2)_n ),
///
/// with L_n the limiting inner sum x_limit_inner_sum.
inline BaileyPair pair_x_to_zero(const Monomial& a) {
  if (a.is_constant() && (a.coeff == Rational(1) || a.coeff == Rational(-1)))
    throw DegenerateParameter("a = +-1 collapses the alpha prefactor");
  const Monomial a2 = a * a;
  BaileyPair p;
  p.label = "x-to-zero";
  p.relative = a2;
  p.base_exp = 2;
  p.alpha = [a, a2](long n, long order) {
    detail::require_index(n);
    return detail::degenerate_guard(
        [&] {
          return exact_order(
              [&](long w) {
                QSeries r = detail::x_limit_inner_sum(a, n, w);
                r = mul_linear(r, {a2.coeff, a2.exponent + 4 * n});
                r = div_linear(r, {a2.coeff, a2.exponent});
                return r.shifted_scaled(a.pow(2 * n) * Monomial::q(2 * n * (n - 1)));
              },
              order);
        },
        "limit alpha");
  };
  p.beta = [a](long n, long order) {
    detail::require_index(n);
    return detail::degenerate_guard(
        [&] {
          return exact_order(
              [&](long w) {
                QSeries r = QSeries::one(w);
                for (long i = 0; i < 2 * n; ++i) r = div_linear(r, {-a.coeff, a.exponent + i});
                for (long i = 0; i < n; ++i) r = div_linear(r, {Rational(1), 2 + 2 * i});
                return r.shifted_scaled({Rational(n % 2 == 0 ? 1 : -1), n * n});
              },
              order);
        },
        "limit beta");
  };
  return p;
}

}  // namespace qbailey
