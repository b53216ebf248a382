// Acceptance gate: one PASS/FAIL line per criterion, every order and budget
// pinned here. Exit code is the number of failed criteria; failures print
// their measured values rather than stopping the run.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qbailey/bailey.hpp"
#include "qbailey/identities.hpp"
#include "qbailey/pairs.hpp"
#include "qbailey/partitions.hpp"

using namespace qbailey;

namespace {

int failures = 0;

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

void report(int idx, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion-" << idx << ": " << detail << std::endl;
  if (!ok) ++failures;
}

template <class Fn>
void criterion(int idx, Fn&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(idx, false, std::string("unexpected exception: ") + e.what());
  }
}

std::string fmt6(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

int main() {
  // 1. Free-parameter pair relation at four sample points.
  criterion(1, [] {
    auto t0 = Clock::now();
    struct Point {
      Monomial a;
      Monomial x;
      const char* label;
    };
    std::vector<Point> points = {{Monomial::q(1), Monomial::constant(3), "(q,3)"},
                                 {Monomial::q(1), Monomial::constant(-2), "(q,-2)"},
                                 {Monomial::constant(2), Monomial::constant(5), "(2,5)"},
                                 {Monomial::constant(3), Monomial::constant(Rational(1, 3)),
                                  "(3,1/3)"}};
    bool ok = true;
    std::string bad;
    for (const Point& p : points) {
      PairCheckReport rep = verify_pair(pair_theorem21(p.a, p.x), 16, 50);
      if (!rep.ok()) {
        ok = false;
        bad += std::string(" ") + p.label;
      }
    }
    long ms = ms_since(t0);
    ok = ok && ms < 30000;
    report(1, ok,
           "pair relation, 4 parameter points, n_max 16, order 50" +
               (bad.empty() ? "" : " (failing:" + bad + ")") + " [" + std::to_string(ms) +
               " ms < 30000 ms]");
  });

  // 2. Specialized pairs at n_max 20, order 80.
  criterion(2, [] {
    auto t0 = Clock::now();
    bool ok = verify_pair(pair_cor22(), 20, 80).ok() && verify_pair(pair_cor23(), 20, 80).ok() &&
              verify_pair(pair_cor24(), 20, 80).ok() &&
              verify_pair(pair_x_to_zero(Monomial::q(1)), 20, 80).ok();
    long ms = ms_since(t0);
    ok = ok && ms < 30000;
    report(2, ok,
           "four specialized pairs, n_max 20, order 80 [" + std::to_string(ms) + " ms < 30000 ms]");
  });

  // 3. Base-change route equals the direct closed form, term by term.
  criterion(3, [] {
    struct Point {
      Monomial a;
      Monomial x;
    };
    bool ok = true;
    for (const Point& p : {Point{Monomial::constant(2), Monomial::constant(5)},
                           Point{Monomial::constant(3), Monomial::constant(Rational(1, 3))}}) {
      BaileyPair composed = pair_theorem21(p.a, p.x);
      BaileyPair direct = pair_theorem21_direct(p.a, p.x);
      for (long n = 0; n <= 10; ++n) {
        ok = ok && same_series(composed.alpha(n, 40), direct.alpha(n, 40));
        ok = ok && same_series(composed.beta(n, 40), direct.beta(n, 40));
      }
    }
    report(3, ok, "base-change composition matches the direct pair for n <= 10 at 2 points");
  });

  // 4. Weighted-transform engine at order 200, plus the exact lhs form.
  criterion(4, [] {
    BaileyLemmaResult c23 =
        bailey_lemma(pair_cor23(), Monomial::q(2), Monomial{Rational(-1), 3}, 200);
    BaileyLemmaResult c24 =
        bailey_lemma(pair_cor24(), Monomial{Rational(-1), 1}, Monomial{Rational(-1), 2}, 200);
    BaileyLemmaResult c22 = bailey_lemma_y_to_infinity(pair_cor22(), Monomial::q(2), 200);
    bool ok = same_series(c23.lhs, c23.rhs) && same_series(c24.lhs, c24.rhs) &&
              same_series(c22.lhs, c22.rhs) &&
              same_series(c22.lhs, detail::odd_poch_partial_theta(200));
    report(4, ok, "transform lhs = rhs at order 200 for three routes; limit lhs matches exactly");
  });

  // 5. Identity registry at the pinned orders; every single check < 10 s.
  criterion(5, [] {
    struct Run {
      const char* id;
      ParamMap ps;
      long order;
    };
    std::vector<Run> runs = {{"cor-3.5", {}, 500}, {"cor-3.9", {}, 500},  {"cor-3.7", {}, 1000},
                             {"cor-3.8", {}, 1000}, {"eq-3.13", {}, 2000}};
    for (Rational x : {Rational(2), Rational(-3), Rational(1, 2)}) {
      runs.push_back({"eq-3.11", {{"x", x}}, 300});
      runs.push_back({"eq-3.12", {{"x", x}}, 300});
    }
    for (long n = 0; n <= 25; ++n)
      for (Rational b : {Rational(2), Rational(-3), Rational(1, 2)})
        runs.push_back({"fine-16.3", {{"n", Rational(n)}, {"b", b}}, 200});
    bool ok = true;
    long worst_ms = 0;
    std::string bad;
    for (const Run& run : runs) {
      VerificationReport rep = verify_identity(run.id, run.ps, run.order);
      if (!rep.equal) {
        ok = false;
        bad += std::string(" ") + run.id;
      }
      if (rep.elapsed_ms > worst_ms) worst_ms = rep.elapsed_ms;
    }
    ok = ok && worst_ms < 10000;
    // Certainty sweep: more samples than the recorded x-degree bound, at the
    // order where that is feasible, so agreement is an identity in x there.
    long bound11 = lookup("eq-3.11").x_degree_bound(16);
    long count11 = 0;
    for (long k = 2; k <= 12; ++k, ++count11)
      ok = ok && verify_identity("eq-3.11", {{"x", Rational(k)}}, 16).equal;
    ok = ok && verify_identity("eq-3.11", {{"x", Rational(1, 2)}}, 16).equal && ++count11 > bound11;
    long bound12 = lookup("eq-3.12").x_degree_bound(12);
    long count12 = 0;
    for (long k = 2; k <= 10; ++k, ++count12)
      ok = ok && verify_identity("eq-3.12", {{"x", Rational(k)}}, 12).equal;
    for (long k = 2; k <= 6; ++k, ++count12)
      ok = ok && verify_identity("eq-3.12", {{"x", Rational(-k)}}, 12).equal;
    ok = ok && verify_identity("eq-3.12", {{"x", Rational(1, 3)}}, 12).equal && ++count12 > bound12;
    std::ostringstream os;
    os << runs.size() << " registry checks at pinned orders"
       << (bad.empty() ? "" : " (failing:" + bad + ")") << " [worst " << worst_ms
       << " ms < 10000 ms]; certainty sweeps " << count11 << " > bound " << bound11 << " and "
       << count12 << " > bound " << bound12 << " at orders 16/12";
    report(5, ok, os.str());
  });

  // 6. Census series equal the enumeration oracles; pinned spot values.
  criterion(6, [] {
    bool ok = verify_identity("sigma-star-part", {}, 61).equal &&
              verify_identity("o-star-part", {}, 61).equal;
    auto spot = [](long n) {
      long long sum = 0;
      for (const auto& p : enumerate_gapfree_odd(n))
        if (p.largest_odd_multiplicity()) sum += p.weight();
      return sum;
    };
    ok = ok && spot(1) == -1 && spot(2) == 0 && spot(4) == 1;
    report(6, ok, "census series match enumeration to n = 60; spot values at n = 1, 2, 4");
  });

  // 7. Signed representation counts on the 8n-1 progression, to q^2000.
  criterion(7, [] {
    bool ok = true;
    for (long n = 1; 8 * n - 1 <= 2000; ++n) {
      long long lhs = 2 * o_star_count(n);
      NormFormCount nf = norm_form_count(8 * n - 1);
      long long rhs = (n % 2 != 0 ? -1 : 1) * nf.count;
      ok = ok && lhs == rhs;
    }
    NormFormCount seven = norm_form_count(7);
    ok = ok && seven.count == 2 && seven.sign && *seven.sign == -1;
    IdentitySides sides = build_sides(lookup("cor-3.6"), {}, 2001);
    ok = ok && same_series(sides.lhs, sides.rhs) && sides.rhs.coeff_at(7) == Rational(-2);
    report(7, ok,
           "count-level pairing for all 8n-1 <= 2000; full series to q^2000; -2q^7 spot value");
  });

  // 8. Parity projection equals the dilated companion, order 400.
  criterion(8, [] {
    QSeries f1p = expand_named_series("f1_prime", 400);
    QSeries even = (f1p + f1p.negated_argument()).scaled(Rational(1, 2));
    QSeries dil = expand_named_series("f1", 200).dilated(2);
    report(8, same_series(even, dil), "even part equals the dilated companion to order 400");
  });

  // 9. Lacunarity census. The monotone sub-check holds; the < 0.1 bound on
  // the last quarter window does not hold at order 20000 and is reported
  // honestly (support thins like C/sqrt(log N), far too slowly to cross 0.1
  // before N ~ 1e17; see the decisions ledger).
  criterion(9, [] {
    auto t0 = Clock::now();
    LacunarityReport lo = lacunarity_scan("cor-3.8", 5000);
    LacunarityReport hi = lacunarity_scan("cor-3.8", 20000);
    long ms = ms_since(t0);
    double last_quarter = hi.windows.back().density;
    bool monotone = hi.density < lo.density;
    bool bound = last_quarter < 0.1;
    bool timed = ms < 60000;
    std::ostringstream os;
    os << "density(20000)=" << fmt6(hi.density) << " < density(5000)=" << fmt6(lo.density)
       << (monotone ? " holds" : " FAILS") << "; last-quarter density " << fmt6(last_quarter)
       << (bound ? " < 0.1 holds" : " is not < 0.1 (measured honestly; bound unreachable at "
                                    "this order, see ledger)")
       << "; scan " << ms << " ms" << (timed ? " < 60000 ms" : " EXCEEDS 60000 ms");
    report(9, monotone && bound && timed, os.str());
  });

  // 10. Ring axioms on random triples, pair scaling invariance, truncation
  // consistency.
  criterion(10, [] {
    std::mt19937 gen(12345u);
    std::uniform_int_distribution<long> num(-9, 9);
    std::uniform_int_distribution<long> den(1, 3);
    std::uniform_int_distribution<int> fill(0, 9);
    auto random_series = [&](long order) {
      TermAccumulator acc;
      for (long e = 0; e < order; ++e)
        if (fill(gen) < 7) acc.add(e, Rational(num(gen), den(gen)));
      return acc.series(order);
    };
    bool ok = true;
    const long order = 40;
    QSeries one = QSeries::one(order);
    QSeries zero = QSeries::zero(order);
    for (int trial = 0; trial < 100; ++trial) {
      QSeries a = random_series(order);
      QSeries b = random_series(order);
      QSeries c = random_series(order);
      if (trial % 10 == 9) a = a.shifted_scaled(Monomial::q(-3));
      ok = ok && same_series((a + b) + c, a + (b + c));
      ok = ok && same_series(a + b, b + a);
      ok = ok && same_series((a * b) * c, a * (b * c));
      ok = ok && same_series(a * b, b * a);
      ok = ok && same_series(a * (b + c), a * b + a * c);
      ok = ok && same_series(a * one, a);
      ok = ok && same_series(a + zero, a);
    }
    ok = ok && verify_pair(scaled_pair(pair_cor22(), Rational(3, 7)), 8, 40).ok();
    ok = ok &&
         verify_pair(scaled_pair(pair_theorem21(Monomial::constant(2), Monomial::constant(3)),
                                 Rational(-2)),
                     6, 30)
             .ok();
    BaileyPair p = pair_cor23();
    ok = ok && same_series(p.alpha(5, 80).truncated(40), p.alpha(5, 40));
    ok = ok && same_series(p.beta(5, 80).truncated(40), p.beta(5, 40));
    IdentitySides wide = build_sides(lookup("cor-3.7"), {}, 120);
    IdentitySides narrow = build_sides(lookup("cor-3.7"), {}, 60);
    ok = ok && same_series(wide.lhs.truncated(60), narrow.lhs) &&
         same_series(wide.rhs.truncated(60), narrow.rhs);
    report(10, ok, "ring axioms on 100 seeded triples, scaling invariance, truncation windows");
  });

  std::cout << "criteria passed: " << (10 - failures) << "/10" << std::endl;
  return failures;
}
