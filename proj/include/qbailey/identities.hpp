#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "partitions.hpp"
#include "qseries.hpp"

// Registry of fixed series identities: every entry carries independent
// builders for its two sides, so a verification run recomputes both from
// scratch and compares coefficients over the full shared window. Entries
// with a free rational parameter validate it before building; entries
// whose sides are plain q-series also expose a side suitable for sparsity
// census scans.

namespace qbailey {

using ParamMap = std::map<std::string, Rational>;

struct MismatchDetail {
  long exponent = 0;
  Rational lhs;
  Rational rhs;
};

struct VerificationReport {
  std::string id;
  ParamMap params;
  long order = 0;
  bool equal = false;
  std::optional<MismatchDetail> first_mismatch;
  long elapsed_ms = 0;
};

struct ParamSpec {
  std::string name;
  // Returns a complaint when the value is outside the entry's domain.
  std::function<std::optional<std::string>(const Rational&)> check;
};

using SideBuilder = std::function<QSeries(const ParamMap&, long order)>;

struct Identity {
  std::string id;
  std::string summary;
  std::vector<ParamSpec> params;
  SideBuilder lhs;
  SideBuilder rhs;
  // Side used by sparsity scans; null means scan the lhs. Only meaningful
  // for parameter-free entries.
  SideBuilder scan;
  // For entries with an "x" parameter: how many distinct sample values
  // pin every coefficient, as a function of the order. Null otherwise.
  std::function<long(long)> x_degree_bound;
};

struct LacunarityWindow {
  long begin = 0;
  long end = 0;
  long nonzero_count = 0;
  double density = 0.0;
};

struct LacunarityReport {
  std::string id;
  long order = 0;
  long nonzero_count = 0;
  double density = 0.0;
  std::vector<LacunarityWindow> windows;
};

namespace detail {

// sum_{n >= 0} q^{n(n+1)/2} / (-q;q)_n
inline QSeries named_sigma(long order) {
  QSeries acc = QSeries::zero(order);
  QSeries inv = QSeries::one(order);
  for (long n = 0;; ++n) {
    long e = n * (n + 1) / 2;
    if (e >= order) break;
    if (n > 0) inv = div_linear(inv, Monomial{Rational(-1), n});
    acc = acc + inv.shifted_scaled(Monomial::q(e));
  }
  return acc;
}

// sum_{n >= 1} (-1)^n q^{n^2} / (q;q^2)_n
inline QSeries named_sigma_star(long order) {
  QSeries acc = QSeries::zero(order);
  QSeries inv = QSeries::one(order);
  for (long n = 1;; ++n) {
    long e = n * n;
    if (e >= order) break;
    inv = div_linear(inv, Monomial{Rational(1), 2 * n - 1});
    Rational sign = (n % 2 != 0) ? Rational(-1) : Rational(1);
    acc = acc + inv.shifted_scaled(Monomial{sign, e});
  }
  return acc;
}

// sum_{n >= 1} (-1)^n q^{n^2} / ((q;q^2)_n (1+q^{2n-1}))
inline QSeries named_o_star_gen(long order) {
  QSeries acc = QSeries::zero(order);
  QSeries inv = QSeries::one(order);
  for (long n = 1;; ++n) {
    long e = n * n;
    if (e >= order) break;
    inv = div_linear(inv, Monomial{Rational(1), 2 * n - 1});
    QSeries term = div_linear(inv, Monomial{Rational(-1), 2 * n - 1});
    Rational sign = (n % 2 != 0) ? Rational(-1) : Rational(1);
    acc = acc + term.shifted_scaled(Monomial{sign, e});
  }
  return acc;
}

// sum_{n >= 0} q^{n(n+1)/2} / ((-q;q)_n (1-q^{2n+1}))
inline QSeries named_f1(long order) {
  QSeries acc = QSeries::zero(order);
  QSeries inv = QSeries::one(order);
  for (long n = 0;; ++n) {
    long e = n * (n + 1) / 2;
    if (e >= order) break;
    if (n > 0) inv = div_linear(inv, Monomial{Rational(-1), n});
    QSeries term = div_linear(inv, Monomial{Rational(1), 2 * n + 1});
    acc = acc + term.shifted_scaled(Monomial::q(e));
  }
  return acc;
}

// sum_{n >= 0} q^{n(n+1)} / ((-q^2;q^2)_n (1-q^{2n+1}))
inline QSeries named_f1_prime(long order) {
  QSeries acc = QSeries::zero(order);
  QSeries inv = QSeries::one(order);
  for (long n = 0;; ++n) {
    long e = n * (n + 1);
    if (e >= order) break;
    if (n > 0) inv = div_linear(inv, Monomial{Rational(-1), 2 * n});
    QSeries term = div_linear(inv, Monomial{Rational(1), 2 * n + 1});
    acc = acc + term.shifted_scaled(Monomial::q(e));
  }
  return acc;
}

inline Rational integer_sign(long n) { return (n % 2 != 0) ? Rational(-1) : Rational(1); }

inline long param_as_index(const ParamMap& ps, const std::string& key) {
  return ps.at(key).to_long();
}

// Finite alternating split: sum_{m=0}^{n} (-1)^m q^{m(m-1)/2}
//   / ( (q;q)_m (bq;q)_{n-m} ), walked by the exact term ratio.
inline QSeries finite_split_lhs(const ParamMap& ps, long order) {
  long n = param_as_index(ps, "n");
  Rational b = ps.at("b");
  QSeries term = QSeries::one(order);  // start at m = n: 1/(q;q)_n
  for (long m = 1; m <= n; ++m) term = div_linear(term, Monomial{Rational(1), m});
  QSeries acc = QSeries::zero(order);
  // i counts the (bq;q) depth; m = n - i is the (q;q) depth.
  for (long i = 0; i <= n; ++i) {
    if (i > 0) {
      term = mul_linear(term, Monomial{Rational(1), n - i + 1});
      term = div_linear(term, Monomial{b, i});
    }
    long m = n - i;
    acc = acc + term.shifted_scaled(Monomial{integer_sign(m), m * (m - 1) / 2});
  }
  return acc;
}

// Matching one-term closed form: (-1)^n q^{n(n+1)/2} (1-b)
//   / ( (q;q)_n (1-b q^n) ).
inline QSeries finite_split_rhs(const ParamMap& ps, long order) {
  long n = param_as_index(ps, "n");
  Rational b = ps.at("b");
  if (n == 0) return QSeries::one(order);  // (1-b)/(1-b) cancels exactly
  QSeries r = poch_finite_inverse(Monomial::q(1), 1, n, order);
  r = r.scaled(Rational(1) - b);
  r = div_linear(r, Monomial{b, n});
  return r.shifted_scaled(Monomial{integer_sign(n), n * (n + 1) / 2});
}

// Weighted census series over odd-top-multiplicity counts, argument negated:
// 2 * sum_{n >= 1} ostar(n) (-q)^n.
inline QSeries odd_top_census_negated(long order) {
  return named_o_star_gen(order).negated_argument().scaled(Rational(2));
}

// Triangular-dented square exponents: sum_{n >= 1} sum_{j=-n}^{n-1}
// q^{n^2 - j(j+1)/2}, every weight +1.
inline QSeries dented_square_sum(long order) {
  TermAccumulator acc;
  for (long n = 1; n * (n + 1) / 2 < order; ++n) {
    for (long j = -n; j <= n - 1; ++j) {
      long e = n * n - j * (j + 1) / 2;
      if (e < order) acc.add(e, Rational(1));
    }
  }
  return acc.series(order);
}

// 2 * sum ostar(n) q^(8n-1), dilating weight onto the 8n-1 progression.
inline QSeries odd_top_census_dilated(long order) {
  TermAccumulator acc;
  for (long n = 1; 8 * n - 1 < order; ++n)
    acc.add(8 * n - 1, Rational(2 * o_star_count(n)));
  return acc.series(order);
}

// Signed counts of 2x^2 - y^2 = N representations over N = 7 mod 8.
inline QSeries norm_form_census(long order) {
  TermAccumulator acc;
  for (long N = 7; N < order; N += 8) {
    NormFormCount nf = norm_form_count(N);
    if (nf.count != 0) acc.add(N, Rational(*nf.sign * nf.count));
  }
  return acc.series(order);
}

// sum_{n >= 0} q^{n(2n+1)} / (-q;q)_{2n+1}
inline QSeries odd_poch_partial_theta(long order) {
  QSeries acc = QSeries::zero(order);
  QSeries inv = div_linear(QSeries::one(order), Monomial{Rational(-1), 1});
  for (long n = 0;; ++n) {
    long e = n * (2 * n + 1);
    if (e >= order) break;
    if (n > 0) {
      inv = div_linear(inv, Monomial{Rational(-1), 2 * n});
      inv = div_linear(inv, Monomial{Rational(-1), 2 * n + 1});
    }
    acc = acc + inv.shifted_scaled(Monomial::q(e));
  }
  return acc;
}

// False-theta expansion: +1 at n(3n+1)/2, -1 at n(3n+1)/2 + 2n+1.
inline QSeries pentagonal_false_theta(long order) {
  TermAccumulator acc;
  for (long n = 0; n * (3 * n + 1) / 2 < order; ++n) {
    long e = n * (3 * n + 1) / 2;
    acc.add(e, Rational(1));
    if (e + 2 * n + 1 < order) acc.add(e + 2 * n + 1, Rational(-1));
  }
  return acc.series(order);
}

// All-positive double sum: sum_{n >= 0} q^{n(n+1)} (1 + q^{2n+2})
// sum_{j=0}^{n} q^{-j(j+1)/2}.
inline QSeries positive_double_sum(long order) {
  TermAccumulator acc;
  for (long n = 0; n * (n + 1) / 2 < order; ++n) {
    long base = n * (n + 1);
    for (long j = 0; j <= n; ++j) {
      long t = j * (j + 1) / 2;
      if (base - t < order) acc.add(base - t, Rational(1));
      if (base + 2 * n + 2 - t < order) acc.add(base + 2 * n + 2 - t, Rational(1));
    }
  }
  return acc.series(order);
}

// Even-exponent half of the same expansion, used as its scan side.
inline QSeries positive_double_sum_even_part(long order) {
  TermAccumulator acc;
  for (long n = 0; n * (n + 1) / 2 < order; ++n) {
    long base = n * (n + 1);
    for (long j = 0; j <= n; ++j) {
      long t = j * (j + 1) / 2;
      if (base - t < order && (base - t) % 2 == 0) acc.add(base - t, Rational(1));
      long e2 = base + 2 * n + 2 - t;
      if (e2 < order && e2 % 2 == 0) acc.add(e2, Rational(1));
    }
  }
  return acc.series(order);
}

// Product of a square theta and a triangular theta:
// (sum_{r in Z} (-1)^r q^{r^2}) * (sum_{k >= 0} q^{k(k+1)/2}).
inline QSeries square_times_triangular(long order) {
  TermAccumulator sq;
  sq.add(0, Rational(1));
  for (long r = 1; r * r < order; ++r) sq.add(r * r, Rational(2) * integer_sign(r));
  TermAccumulator tri;
  for (long k = 0; k * (k + 1) / 2 < order; ++k) tri.add(k * (k + 1) / 2, Rational(1));
  return sq.series(order) * tri.series(order);
}

// sum_{n >= 0} (-1)^n q^{n(n+1)} (2*sum_{j<n} q^{-j(j+1)/2} + q^{-n(n+1)/2}).
inline QSeries signed_double_triangular(long order) {
  TermAccumulator acc;
  for (long n = 0; n * (n + 1) / 2 < order; ++n) {
    long base = n * (n + 1);
    Rational s = integer_sign(n);
    for (long j = 0; j <= n; ++j) {
      long e = base - j * (j + 1) / 2;
      if (e >= order) continue;
      Rational w = (j < n) ? Rational(2) : Rational(1);
      acc.add(e, s * w);
    }
  }
  return acc.series(order);
}

// sum_{n >= 0} (-1)^n q^{n(n+1)} (1-x) / ( (q^2;q^2)_n (1-x q^{2n}) )
inline QSeries euler_quotient_sum(const ParamMap& ps, long order) {
  Rational x = ps.at("x");
  QSeries acc = QSeries::one(order);  // n = 0 term is exactly 1
  QSeries inv = QSeries::one(order);
  Rational one_minus_x = Rational(1) - x;
  for (long n = 1;; ++n) {
    long e = n * (n + 1);
    if (e >= order) break;
    inv = div_linear(inv, Monomial{Rational(1), 2 * n});
    QSeries term = div_linear(inv.scaled(one_minus_x), Monomial{x, 2 * n});
    acc = acc + term.shifted_scaled(Monomial{integer_sign(n), e});
  }
  return acc;
}

// (q^2;q^2)_inf / (x q^2;q^2)_inf
inline QSeries euler_quotient_product(const ParamMap& ps, long order) {
  Rational x = ps.at("x");
  QSeries num = poch_infinite(Monomial::q(2), 2, order);
  QSeries den = poch_infinite(Monomial{x, 2}, 2, order);
  return num * den.inverse(order);
}

// (q;q)_inf (q^2;q^2)_inf / ( (-q;q)_inf (x q^2;q^2)_inf )
inline QSeries double_product_quotient(const ParamMap& ps, long order) {
  Rational x = ps.at("x");
  QSeries num = poch_infinite(Monomial::q(1), 1, order) * poch_infinite(Monomial::q(2), 2, order);
  QSeries den =
      poch_infinite(Monomial{Rational(-1), 1}, 1, order) * poch_infinite(Monomial{x, 2}, 2, order);
  return num * den.inverse(order);
}

// sum_{n >= 0} q^{n^2} (-x)^n (1-q^{2n+1}) (q^2/x;q^2)_n / (q^2 x;q^2)_n
//   * ( 1 + sum_{j=1}^{n} (1+q^j) (x;q^2)_j / ( q^{j(j-1)/2} x^j (q^2/x;q^2)_j ) ),
// both the outer quotient and the inner sum advanced by exact term ratios.
inline QSeries double_product_expansion(const ParamMap& ps, long order) {
  Rational x = ps.at("x");
  Rational xinv = x.inverse();
  return exact_order(
      [&](long w) {
        QSeries acc = QSeries::zero(w);
        QSeries pre = QSeries::one(w);    // (q^2/x;q^2)_n / (q^2 x;q^2)_n
        QSeries inner = QSeries::one(w);  // the j-sum at depth n
        QSeries t = QSeries::one(w);      // its current term
        for (long n = 0;; ++n) {
          if (n * (n + 1) / 2 >= w) break;
          if (n >= 1) {
            pre = mul_linear(pre, Monomial{xinv, 2 * n});
            pre = div_linear(pre, Monomial{x, 2 * n});
            if (n == 1) {
              t = mul_linear(t, Monomial{Rational(-1), 1});
              t = mul_linear(t, Monomial{x, 0});
              t = div_linear(t, Monomial{xinv, 2});
              t = t.scaled(xinv);
            } else {
              t = mul_linear(t, Monomial{Rational(-1), n});
              t = div_linear(t, Monomial{Rational(-1), n - 1});
              t = mul_linear(t, Monomial{x, 2 * n - 2});
              t = div_linear(t, Monomial{xinv, 2 * n});
              t = t.shifted_scaled(Monomial{xinv, -(n - 1)});
            }
            inner = inner + t;
          }
          QSeries term = mul_linear(pre * inner, Monomial{Rational(1), 2 * n + 1});
          Rational sx = x.pow(n) * integer_sign(n);
          acc = acc + term.shifted_scaled(Monomial{sx, n * n});
        }
        return acc;
      },
      order);
}

// (q;q)_inf ^ 2
inline QSeries euler_product_squared(long order) {
  QSeries e = poch_infinite(Monomial::q(1), 1, order);
  return e * e;
}

// sum_{n >= 0} q^{n(2n+1)} (1-q^{2n+1}) sum_{|j| <= n} (-1)^j q^{-j(3j+1)/2}
inline QSeries signed_pentagonal_double(long order) {
  TermAccumulator acc;
  for (long n = 0; n * (n + 1) / 2 < order; ++n) {
    long base = n * (2 * n + 1);
    for (long j = -n; j <= n; ++j) {
      long t = j * (3 * j + 1) / 2;
      Rational s = integer_sign(j);
      long e1 = base - t;
      if (e1 < order) acc.add(e1, s);
      long e2 = base + 2 * n + 1 - t;
      if (e2 < order) acc.add(e2, -s);
    }
  }
  return acc.series(order);
}

// Weighted census accumulators against the exact enumeration counts.
inline QSeries gapfree_census(long order, bool odd_top) {
  TermAccumulator acc;
  for (long n = 1; n < order; ++n)
    acc.add(n, Rational(odd_top ? o_star_count(n) : o_count(n)));
  return acc.series(order);
}

inline std::optional<std::string> check_x_free(const Rational& x) {
  if (x.is_zero()) return std::string("x must be nonzero");
  if (x == Rational(1)) return std::string("x must not be 1");
  return std::nullopt;
}

inline std::optional<std::string> check_index_n(const Rational& n) {
  if (!n.is_integer()) return std::string("n must be an integer");
  if (n < Rational(0)) return std::string("n must be nonnegative");
  if (!(n < Rational(100000))) return std::string("n is too large");
  return std::nullopt;
}

}  // namespace detail

inline const std::vector<Identity>& registry() {
  static const std::vector<Identity> entries = [] {
    std::vector<Identity> v;

    v.push_back(Identity{
        "fine-16.3",
        "finite alternating split of a two-factor quotient vs its one-term closed form",
        {ParamSpec{"n", detail::check_index_n},
         ParamSpec{"b", [](const Rational&) { return std::nullopt; }}},
        detail::finite_split_lhs,
        detail::finite_split_rhs,
        nullptr,
        nullptr,
    });

    v.push_back(Identity{
        "cor-3.5",
        "doubled odd-top-multiplicity census at -q vs an all-positive dented-square sum",
        {},
        [](const ParamMap&, long order) { return detail::odd_top_census_negated(order); },
        [](const ParamMap&, long order) { return detail::dented_square_sum(order); },
        nullptr,
        nullptr,
    });

    v.push_back(Identity{
        "cor-3.6",
        "doubled odd-top census on the 8n-1 progression vs signed binary-form counts",
        {},
        [](const ParamMap&, long order) { return detail::odd_top_census_dilated(order); },
        [](const ParamMap&, long order) { return detail::norm_form_census(order); },
        nullptr,
        nullptr,
    });

    v.push_back(Identity{
        "cor-3.7",
        "odd-depth inverted-factor sum vs a two-armed pentagonal false theta",
        {},
        [](const ParamMap&, long order) { return detail::odd_poch_partial_theta(order); },
        [](const ParamMap&, long order) { return detail::pentagonal_false_theta(order); },
        nullptr,
        nullptr,
    });

    v.push_back(Identity{
        "cor-3.8",
        "half-shift quotient sum vs an all-positive triangular double sum",
        {},
        [](const ParamMap&, long order) { return detail::named_f1_prime(order); },
        [](const ParamMap&, long order) { return detail::positive_double_sum(order); },
        [](const ParamMap&, long order) { return detail::positive_double_sum_even_part(order); },
        nullptr,
    });

    v.push_back(Identity{
        "cor-3.9",
        "square-times-triangular theta product vs a signed double triangular sum",
        {},
        [](const ParamMap&, long order) { return detail::square_times_triangular(order); },
        [](const ParamMap&, long order) { return detail::signed_double_triangular(order); },
        nullptr,
        nullptr,
    });

    v.push_back(Identity{
        "eq-3.11",
        "signed quotient sum with one free weight vs an infinite-product quotient",
        {ParamSpec{"x", detail::check_x_free}},
        detail::euler_quotient_sum,
        detail::euler_quotient_product,
        nullptr,
        [](long order) { return order / 2 + 2; },
    });

    v.push_back(Identity{
        "eq-3.12",
        "four-product quotient vs its one-parameter double-sum expansion",
        {ParamSpec{"x", detail::check_x_free}},
        detail::double_product_quotient,
        detail::double_product_expansion,
        nullptr,
        [](long order) { return order + 2; },
    });

    v.push_back(Identity{
        "eq-3.13",
        "squared Euler product vs a signed pentagonal-dented double sum",
        {},
        [](const ParamMap&, long order) { return detail::euler_product_squared(order); },
        [](const ParamMap&, long order) { return detail::signed_pentagonal_double(order); },
        [](const ParamMap&, long order) { return detail::signed_pentagonal_double(order); },
        nullptr,
    });

    v.push_back(Identity{
        "sigma-star-part",
        "gap-free odd-part census series vs its signed quotient generating sum",
        {},
        [](const ParamMap&, long order) { return detail::named_sigma_star(order); },
        [](const ParamMap&, long order) { return detail::gapfree_census(order, false); },
        nullptr,
        nullptr,
    });

    v.push_back(Identity{
        "o-star-part",
        "odd-top-multiplicity census series vs its signed quotient generating sum",
        {},
        [](const ParamMap&, long order) { return detail::named_o_star_gen(order); },
        [](const ParamMap&, long order) { return detail::gapfree_census(order, true); },
        nullptr,
        nullptr,
    });

    return v;
  }();
  return entries;
}

inline const Identity& lookup(const std::string& id) {
  for (const Identity& e : registry())
    if (e.id == id) return e;
  throw UnknownName("no identity with id \"" + id + "\"");
}

inline void validate_params(const Identity& e, const ParamMap& ps) {
  for (const ParamSpec& spec : e.params) {
    auto it = ps.find(spec.name);
    if (it == ps.end())
      throw DegenerateParameter("identity " + e.id + ": missing parameter \"" + spec.name + "\"");
    if (auto msg = spec.check(it->second))
      throw DegenerateParameter("identity " + e.id + ": parameter \"" + spec.name + "\": " + *msg);
  }
  for (const auto& [key, value] : ps) {
    (void)value;
    bool known = false;
    for (const ParamSpec& spec : e.params) known = known || spec.name == key;
    if (!known)
      throw DegenerateParameter("identity " + e.id + ": unexpected parameter \"" + key + "\"");
  }
}

struct IdentitySides {
  QSeries lhs;
  QSeries rhs;
};

inline IdentitySides build_sides(const Identity& e, const ParamMap& ps, long order) {
  validate_params(e, ps);
  return IdentitySides{e.lhs(ps, order), e.rhs(ps, order)};
}

inline VerificationReport verify_identity(const Identity& e, const ParamMap& ps, long order) {
  auto t0 = std::chrono::steady_clock::now();
  IdentitySides sides = build_sides(e, ps, order);
  VerificationReport report;
  report.id = e.id;
  report.params = ps;
  report.order = order;
  if (auto bad = first_mismatch(sides.lhs, sides.rhs)) {
    report.equal = false;
    report.first_mismatch =
        MismatchDetail{*bad, sides.lhs.coeff_at(*bad), sides.rhs.coeff_at(*bad)};
  } else {
    report.equal = true;
  }
  auto t1 = std::chrono::steady_clock::now();
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
  return report;
}

inline VerificationReport verify_identity(const std::string& id, const ParamMap& ps, long order) {
  return verify_identity(lookup(id), ps, order);
}

inline QSeries expand_named_series(const std::string& name, long order) {
  if (name == "sigma") return detail::named_sigma(order);
  if (name == "sigma_star") return detail::named_sigma_star(order);
  if (name == "o_star_gen") return detail::named_o_star_gen(order);
  if (name == "f1") return detail::named_f1(order);
  if (name == "f1_prime") return detail::named_f1_prime(order);
  throw UnknownName("no named series \"" + name + "\"");
}

/// Series a sparsity scan censuses for a target: "geometric" (baseline of
/// density 1), one of the named series, or a parameter-free registry entry
/// (its dedicated scan side when present, else its lhs).
inline QSeries scan_series(const std::string& name, long order) {
  if (name == "geometric") return div_linear(QSeries::one(order), Monomial::q(1));
  for (const char* known : {"sigma", "sigma_star", "o_star_gen", "f1", "f1_prime"})
    if (name == known) return expand_named_series(name, order);
  const Identity& e = lookup(name);
  if (!e.params.empty())
    throw DegenerateParameter("identity " + e.id +
                              " has free parameters; scan a parameter-free entry");
  const SideBuilder& side = e.scan ? e.scan : e.lhs;
  return side(ParamMap{}, order);
}

inline LacunarityReport lacunarity_scan(const std::string& name, long order) {
  if (order < 1000)
    throw std::invalid_argument("lacunarity scan needs order >= 1000, got " +
                                std::to_string(order));
  QSeries s = scan_series(name, order);
  LacunarityReport report;
  report.id = name;
  report.order = order;
  long boundaries[5] = {0, order / 4, order / 2, 3 * order / 4, order};
  for (int w = 0; w < 4; ++w) {
    LacunarityWindow win;
    win.begin = boundaries[w];
    win.end = boundaries[w + 1];
    for (long e = win.begin; e < win.end; ++e)
      if (!s.coeff_at(e).is_zero()) ++win.nonzero_count;
    win.density = static_cast<double>(win.nonzero_count) / static_cast<double>(win.end - win.begin);
    report.nonzero_count += win.nonzero_count;
    report.windows.push_back(win);
  }
  report.density = static_cast<double>(report.nonzero_count) / static_cast<double>(order);
  return report;
}

}  // namespace qbailey
