#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "qbailey/identities.hpp"

using namespace qbailey;

namespace {

Rational max_abs_diff(const QSeries& a, const QSeries& b) {
  long lo = std::min(a.valuation(), b.valuation());
  long hi = std::min(a.order(), b.order());
  Rational worst;
  for (long e = lo; e < hi; ++e) {
    Rational d = (a.coeff_at(e) - b.coeff_at(e)).abs();
    if (worst < d) worst = d;
  }
  return worst;
}

std::vector<Rational> prefix(const QSeries& s, long count) {
  std::vector<Rational> out;
  out.reserve(count);
  for (long e = 0; e < count; ++e) out.push_back(s.coeff_at(e));
  return out;
}

}  // namespace

TEST_CASE("registry shape, lookup, and parameter validation") {
  const auto& reg = registry();
  REQUIRE(reg.size() == 11);
  std::set<std::string> ids;
  for (const auto& e : reg) ids.insert(e.id);
  REQUIRE(ids.size() == reg.size());
  for (const char* id : {"fine-16.3", "cor-3.5", "cor-3.6", "cor-3.7", "cor-3.8", "cor-3.9",
                         "eq-3.11", "eq-3.12", "eq-3.13", "sigma-star-part", "o-star-part"})
    REQUIRE(ids.count(id) == 1);

  REQUIRE(lookup("fine-16.3").params.size() == 2);
  REQUIRE(lookup("eq-3.11").params.size() == 1);
  REQUIRE(lookup("eq-3.12").params.size() == 1);
  REQUIRE(lookup("cor-3.7").params.empty());
  REQUIRE(lookup("eq-3.11").x_degree_bound != nullptr);
  REQUIRE(lookup("eq-3.12").x_degree_bound != nullptr);
  REQUIRE(lookup("cor-3.8").scan != nullptr);

  REQUIRE_THROWS_AS(lookup("eq-9.99"), UnknownName);
  REQUIRE_THROWS_AS(verify_identity("eq-3.11", {}, 50), DegenerateParameter);
  REQUIRE_THROWS_AS(verify_identity("eq-3.11", {{"x", Rational(0)}}, 50), DegenerateParameter);
  REQUIRE_THROWS_AS(verify_identity("eq-3.11", {{"x", Rational(1)}}, 50), DegenerateParameter);
  REQUIRE_THROWS_AS(verify_identity("eq-3.12", {{"x", Rational(0)}}, 50), DegenerateParameter);
  REQUIRE_THROWS_AS(verify_identity("cor-3.7", {{"x", Rational(2)}}, 50), DegenerateParameter);
  REQUIRE_THROWS_AS(
      verify_identity("fine-16.3", {{"n", Rational(1, 2)}, {"b", Rational(2)}}, 50),
      DegenerateParameter);
  REQUIRE_THROWS_AS(verify_identity("fine-16.3", {{"n", Rational(-1)}, {"b", Rational(2)}}, 50),
                    DegenerateParameter);
  REQUIRE_THROWS_AS(verify_identity("fine-16.3", {{"n", Rational(3)}}, 50), DegenerateParameter);
}

TEST_CASE("named series expand with pinned opening coefficients") {
  QSeries sigma = expand_named_series("sigma", 30);
  REQUIRE(prefix(sigma, 6) == std::vector<Rational>{1, 1, -1, 2, -2, 1});

  QSeries sigma_star = expand_named_series("sigma_star", 30);
  REQUIRE(prefix(sigma_star, 5) == std::vector<Rational>{0, -1, -1, -1, 0});

  QSeries ostar = expand_named_series("o_star_gen", 30);
  REQUIRE(prefix(ostar, 5) == std::vector<Rational>{0, -1, 0, -1, 1});

  QSeries f1 = expand_named_series("f1", 30);
  REQUIRE(f1.coeff_at(0) == Rational(1));
  REQUIRE(f1.coeff_at(1) == Rational(2));

  QSeries f1p = expand_named_series("f1_prime", 30);
  REQUIRE(prefix(f1p, 5) == std::vector<Rational>{1, 1, 2, 1, 0});

  REQUIRE(expand_named_series("sigma", 1).coeff_at(0) == Rational(1));
  REQUIRE_THROWS_AS(expand_named_series("sigma2", 30), UnknownName);
  REQUIRE_THROWS_AS(expand_named_series("geometric", 30), UnknownName);
}

TEST_CASE("parameter-free entries verify at moderate order") {
  struct Run {
    const char* id;
    long order;
  };
  for (Run run : {Run{"cor-3.5", 200}, Run{"cor-3.6", 500}, Run{"cor-3.7", 300},
                  Run{"cor-3.8", 300}, Run{"cor-3.9", 200}, Run{"eq-3.13", 500},
                  Run{"sigma-star-part", 61}, Run{"o-star-part", 61}}) {
    VerificationReport rep = verify_identity(run.id, {}, run.order);
    INFO(run.id << " at order " << run.order);
    REQUIRE(rep.equal);
    REQUIRE(!rep.first_mismatch.has_value());
    REQUIRE(rep.id == run.id);
    REQUIRE(rep.order == run.order);
    REQUIRE(rep.elapsed_ms >= 0);
  }
}

TEST_CASE("parametrized entries verify across sample points") {
  for (Rational x : {Rational(2), Rational(-3), Rational(1, 2)}) {
    INFO("x = " << x.to_string());
    REQUIRE(verify_identity("eq-3.11", {{"x", x}}, 100).equal);
    REQUIRE(verify_identity("eq-3.12", {{"x", x}}, 80).equal);
  }
  for (long n : {0L, 1L, 2L, 3L, 5L, 8L, 12L}) {
    for (Rational b : {Rational(2), Rational(-3), Rational(1, 2), Rational(0), Rational(5, 7)}) {
      INFO("n = " << n << ", b = " << b.to_string());
      REQUIRE(verify_identity("fine-16.3", {{"n", Rational(n)}, {"b", b}}, 120).equal);
    }
  }
}

TEST_CASE("documented opening coefficients") {
  ParamMap none;
  IdentitySides pent = build_sides(lookup("cor-3.7"), none, 13);
  REQUIRE(prefix(pent.rhs, 13) ==
          std::vector<Rational>{1, -1, 1, 0, 0, -1, 0, 1, 0, 0, 0, 0, -1});

  IdentitySides sq = build_sides(lookup("eq-3.13"), none, 10);
  REQUIRE(sq.lhs.coeff_at(0) == Rational(1));
  REQUIRE(sq.lhs.coeff_at(1) == Rational(-2));
  REQUIRE(sq.lhs.coeff_at(2) == Rational(-1));
  REQUIRE(sq.lhs.coeff_at(3) == Rational(2));

  IdentitySides tiny = build_sides(lookup("cor-3.5"), none, 2);
  REQUIRE(tiny.lhs.coeff_at(1) == Rational(2));
  REQUIRE(same_series(tiny.lhs, tiny.rhs));
  IdentitySides unit = build_sides(lookup("cor-3.5"), none, 1);
  REQUIRE(same_series(unit.lhs, unit.rhs));
}

TEST_CASE("mismatch reporting carries the first differing exponent") {
  Identity bogus{
      "bogus",
      "deliberately unequal sides",
      {},
      [](const ParamMap&, long order) { return QSeries::one(order); },
      [](const ParamMap&, long order) {
        return QSeries::one(order) + QSeries::monomial_series(Monomial::q(3), order);
      },
      nullptr,
      nullptr,
  };
  VerificationReport rep = verify_identity(bogus, {}, 10);
  REQUIRE(!rep.equal);
  REQUIRE(rep.first_mismatch.has_value());
  REQUIRE(rep.first_mismatch->exponent == 3);
  REQUIRE(rep.first_mismatch->lhs == Rational(0));
  REQUIRE(rep.first_mismatch->rhs == Rational(1));
}

TEST_CASE("sample counts exceed the coefficient degree bounds") {
  // Coefficients of both sides are polynomials (resp. Laurent polynomials of
  // bounded span) in the free parameter, so agreement at more rational points
  // than the recorded bound pins them exactly.
  const Identity& quot = lookup("eq-3.11");
  long order11 = 16;
  long bound11 = quot.x_degree_bound(order11);
  std::vector<Rational> xs11;
  for (long k = 2; k <= 12; ++k) xs11.push_back(Rational(k));
  xs11.push_back(Rational(1, 2));
  REQUIRE(static_cast<long>(xs11.size()) > bound11);
  for (const Rational& x : xs11) REQUIRE(verify_identity(quot, {{"x", x}}, order11).equal);

  const Identity& expn = lookup("eq-3.12");
  long order12 = 12;
  long bound12 = expn.x_degree_bound(order12);
  std::vector<Rational> xs12;
  for (long k = 2; k <= 10; ++k) xs12.push_back(Rational(k));
  for (long k = 2; k <= 5; ++k) xs12.push_back(Rational(-k));
  xs12.push_back(Rational(1, 3));
  xs12.push_back(Rational(2, 5));
  REQUIRE(static_cast<long>(xs12.size()) > bound12);
  for (const Rational& x : xs12) REQUIRE(verify_identity(expn, {{"x", x}}, order12).equal);
}

TEST_CASE("finite split edge cases") {
  // b = 0 collapses both sides to a single signed quotient term.
  for (long n = 0; n <= 10; ++n) {
    ParamMap ps{{"n", Rational(n)}, {"b", Rational(0)}};
    IdentitySides sides = build_sides(lookup("fine-16.3"), ps, 80);
    QSeries expected = poch_finite_inverse(Monomial::q(1), 1, n, 80);
    Rational sign = (n % 2 != 0) ? Rational(-1) : Rational(1);
    expected = expected.shifted_scaled(Monomial{sign, n * (n + 1) / 2});
    REQUIRE(same_series(sides.lhs, expected));
    REQUIRE(same_series(sides.rhs, expected));
  }
  // n = 0 yields 1 on both sides for any b, including the b = 1 pinch point.
  for (Rational b : {Rational(1), Rational(7), Rational(-2, 3)}) {
    IdentitySides sides = build_sides(lookup("fine-16.3"), {{"n", Rational(0)}, {"b", b}}, 20);
    REQUIRE(same_series(sides.lhs, QSeries::one(20)));
    REQUIRE(same_series(sides.rhs, QSeries::one(20)));
  }
  // At b = 1 the closed form vanishes for n >= 1 and the split sum follows.
  for (long n : {1L, 3L, 6L}) {
    IdentitySides sides = build_sides(lookup("fine-16.3"), {{"n", Rational(n)}, {"b", 1}}, 60);
    REQUIRE(same_series(sides.rhs, QSeries::zero(60)));
    REQUIRE(same_series(sides.lhs, sides.rhs));
  }
}

TEST_CASE("census sides agree with direct enumeration") {
  // Doubled odd-top census at -q, rebuilt straight from the enumeration counts.
  long order = 61;
  TermAccumulator acc;
  for (long n = 1; n < order; ++n) {
    Rational sign = (n % 2 != 0) ? Rational(-1) : Rational(1);
    acc.add(n, sign * Rational(2 * o_star_count(n)));
  }
  IdentitySides sides = build_sides(lookup("cor-3.5"), {}, order);
  REQUIRE(same_series(sides.lhs, acc.series(order)));

  // Square-splitting counts give a third route to both sides of cor-3.9.
  long order9 = 200;
  TermAccumulator spt;
  for (long n = 0; n < order9; ++n) spt.add(n, Rational(s_plus_t(n)));
  IdentitySides nine = build_sides(lookup("cor-3.9"), {}, order9);
  QSeries oracle = spt.series(order9);
  REQUIRE(same_series(nine.lhs, oracle));
  REQUIRE(same_series(nine.rhs, oracle));
}

TEST_CASE("even part of the half-shift sum is its double dilation") {
  long order = 400;
  QSeries f1p = expand_named_series("f1_prime", order);
  QSeries even = (f1p + f1p.negated_argument()).scaled(Rational(1, 2));
  QSeries dilated = expand_named_series("f1", order / 2).dilated(2);
  REQUIRE(same_series(even, dilated));
}

TEST_CASE("expansion approaches the parameter-free form as x shrinks") {
  long order = 20;
  ParamMap none;
  QSeries target = build_sides(lookup("eq-3.13"), none, order).rhs;
  auto dist = [&](long m) {
    ParamMap ps{{"x", Rational(1, m)}};
    QSeries probe = build_sides(lookup("eq-3.12"), ps, order).rhs.truncated(order);
    return max_abs_diff(probe.truncated(order), target);
  };
  Rational far = dist(1000);
  Rational near = dist(1000000);
  REQUIRE(near <= Rational(1, 1000));
  REQUIRE(near * Rational(50) <= far);
}

TEST_CASE("lacunarity scans census sparsity over quarter windows") {
  LacunarityReport geo = lacunarity_scan("geometric", 1000);
  REQUIRE(geo.nonzero_count == 1000);
  REQUIRE(geo.density == 1.0);
  REQUIRE(geo.windows.size() == 4);
  for (const auto& w : geo.windows) REQUIRE(w.density == 1.0);

  LacunarityReport dense = lacunarity_scan("f1_prime", 1000);
  LacunarityReport even = lacunarity_scan("cor-3.8", 1000);
  REQUIRE(dense.order == 1000);
  REQUIRE(dense.density > 0.3);
  REQUIRE(dense.density < 0.6);
  REQUIRE(even.density > 0.1);
  REQUIRE(even.density < 0.35);
  REQUIRE(even.density < dense.density);

  LacunarityReport sq = lacunarity_scan("eq-3.13", 2000);
  REQUIRE(sq.nonzero_count > 0);
  REQUIRE(sq.density < 0.5);

  for (const LacunarityReport* rep : {&geo, &dense, &even, &sq}) {
    long total = 0;
    long covered = 0;
    for (const auto& w : rep->windows) {
      total += w.nonzero_count;
      covered += w.end - w.begin;
    }
    REQUIRE(total == rep->nonzero_count);
    REQUIRE(covered == rep->order);
  }

  REQUIRE_THROWS_AS(lacunarity_scan("geometric", 999), std::invalid_argument);
  REQUIRE_THROWS_AS(lacunarity_scan("eq-3.11", 1000), DegenerateParameter);
  REQUIRE_THROWS_AS(lacunarity_scan("nonsense", 1000), UnknownName);
}

TEST_CASE("verification windows truncate consistently") {
  ParamMap none;
  IdentitySides wide = build_sides(lookup("cor-3.7"), none, 120);
  IdentitySides narrow = build_sides(lookup("cor-3.7"), none, 60);
  REQUIRE(same_series(wide.lhs.truncated(60), narrow.lhs));
  REQUIRE(same_series(wide.rhs.truncated(60), narrow.rhs));

  ParamMap ps{{"x", Rational(2)}};
  IdentitySides w12 = build_sides(lookup("eq-3.12"), ps, 60);
  IdentitySides n12 = build_sides(lookup("eq-3.12"), ps, 30);
  REQUIRE(same_series(w12.lhs.truncated(30), n12.lhs));
  REQUIRE(same_series(w12.rhs.truncated(30), n12.rhs));
}
