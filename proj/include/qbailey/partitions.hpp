#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qbailey/errors.hpp"

// Exhaustive integer oracles, independent of the series engine they
// validate: gap-free odd partitions with two weighted counts, the signed
// triangular-plus-square representation count, and a fundamental-domain
// count for the quadratic form 2x^2 - y^2.

namespace qbailey {

/// Partition into odd parts 1, 3, 5, ..., 2k+1 where every part up to the
/// largest appears at least once; multiplicities[i] is the multiplicity of
/// part 2i+1 and is always positive.
struct OddGapFreePartition {
  std::vector<long> multiplicities;
  long total = 0;

  long largest_part() const { return 2 * static_cast<long>(multiplicities.size()) - 1; }
  bool largest_odd_multiplicity() const { return multiplicities.back() % 2 == 1; }
  /// -1 when the largest part is 1 mod 4, +1 when it is 3 mod 4
  int weight() const { return largest_part() % 4 == 1 ? -1 : 1; }
};

namespace detail {

/// Ways to pick positive multiplicities for part indices idx..0 (part 2i+1)
/// with exact remaining sum; indices 0..k need at least (k+1)^2 in total.
inline long long gapfree_ways(long idx, long remaining) {
  if (idx == 0) return remaining >= 1 ? 1 : 0;
  long long total = 0;
  const long part = 2 * idx + 1;
  const long floor_need = idx * idx;
  for (long m = 1; remaining - m * part >= floor_need; ++m)
    total += gapfree_ways(idx - 1, remaining - m * part);
  return total;
}

struct WeightedGapfree {
  long long all = 0;      // every partition weighted
  long long odd_top = 0;  // restricted to odd multiplicity of the largest part
};

inline WeightedGapfree weighted_gapfree_sum(long n) {
  WeightedGapfree r;
  if (n <= 0) return r;
  for (long k = 0; (k + 1) * (k + 1) <= n; ++k) {
    const long part = 2 * k + 1;
    const long long w = part % 4 == 1 ? -1 : 1;
    if (k == 0) {
      r.all += w;
      if (n % 2 == 1) r.odd_top += w;
      continue;
    }
    for (long m = 1; n - m * part >= k * k; ++m) {
      long long ways = gapfree_ways(k - 1, n - m * part);
      r.all += w * ways;
      if (m % 2 == 1) r.odd_top += w * ways;
    }
  }
  return r;
}

inline void gapfree_emit(long idx, long remaining, std::vector<long>& stack,
                         std::vector<OddGapFreePartition>& out, long n) {
  if (idx == 0) {
    if (remaining < 1) return;
    std::vector<long> mult;
    mult.reserve(stack.size() + 1);
    mult.push_back(remaining);
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) mult.push_back(*it);
    out.push_back({std::move(mult), n});
    return;
  }
  const long part = 2 * idx + 1;
  const long floor_need = idx * idx;
  for (long m = 1; remaining - m * part >= floor_need; ++m) {
    stack.push_back(m);
    gapfree_emit(idx - 1, remaining - m * part, stack, out, n);
    stack.pop_back();
  }
}

inline long integer_sqrt(long long v) {
  if (v < 0) return -1;
  long r = static_cast<long>(std::llround(std::sqrt(static_cast<double>(v))));
  while (r > 0 && static_cast<long long>(r) * r > v) --r;
  while (static_cast<long long>(r + 1) * (r + 1) <= v) ++r;
  return r;
}

}  // namespace detail

/// Complete duplicate-free list, ordered by largest part then by the
/// lexicographic order the recursion emits.
inline std::vector<OddGapFreePartition> enumerate_gapfree_odd(long n) {
  if (n < 1) throw std::invalid_argument("enumerate_gapfree_odd needs n >= 1");
  std::vector<OddGapFreePartition> out;
  std::vector<long> stack;
  for (long k = 0; (k + 1) * (k + 1) <= n; ++k) {
    if (k == 0) {
      out.push_back({{n}, n});
      continue;
    }
    const long part = 2 * k + 1;
    for (long m = 1; n - m * part >= k * k; ++m) {
      stack.assign(1, m);
      detail::gapfree_emit(k - 1, n - m * part, stack, out, n);
      stack.clear();
    }
  }
  return out;
}

/// Sum of weight() over all gap-free odd partitions of n; 0 at n = 0 since
/// the empty partition has no largest part.
inline long long o_count(long n) { return detail::weighted_gapfree_sum(n).all; }

/// Same sum restricted to partitions whose largest part has odd multiplicity.
inline long long o_star_count(long n) { return detail::weighted_gapfree_sum(n).odd_top; }

/// Number of ways n = r^2 + k(k+1)/2 with r ranging over all of Z and
/// k >= 0, each counted with sign (-1)^r.
inline long long s_plus_t(long n) {
  if (n < 0) return 0;
  long long total = 0;
  for (long r = 0; static_cast<long long>(r) * r <= n; ++r) {
    long long t = n - static_cast<long long>(r) * r;
    // k(k+1)/2 = t  <=>  (2k+1)^2 = 8t+1
    long s = detail::integer_sqrt(8 * t + 1);
    if (static_cast<long long>(s) * s == 8 * t + 1 && s % 2 == 1) {
      long long contrib = r == 0 ? 1 : 2;
      total += (r % 2 == 0 ? contrib : -contrib);
    }
  }
  return total;
}

struct NormFormCount {
  long count = 0;
  std::optional<int> sign;  // (-1)^{(N+1)/8}, present only when N = 7 mod 8
};

/// Counts solutions of 2x^2 - y^2 = N in the fundamental domain x > 0,
/// -x < y <= x. Since y^2 = 2x^2 - N and |y| <= x force
/// N/2 <= x^2 <= N, the search over x in [ceil(sqrt(N/2)), floor(sqrt(N))]
/// provably covers the domain.
inline NormFormCount norm_form_count(long N) {
  if (N < 1) throw std::invalid_argument("norm_form_count needs a positive integer");
  if (N % 2 == 0) throw EvenInput("norm form 2x^2 - y^2 of an even target");
  NormFormCount r;
  const long hi = detail::integer_sqrt(N);
  for (long x = 1; x <= hi; ++x) {
    long long y2 = 2 * static_cast<long long>(x) * x - N;
    if (y2 < 0) continue;
    long y = detail::integer_sqrt(y2);
    if (static_cast<long long>(y) * y != y2) continue;
    if (y > x) continue;
    r.count += (y == 0 || y == x) ? 1 : 2;  // (x, y) and, when distinct, (x, -y)
  }
  if (N % 8 == 7) r.sign = ((N + 1) / 8) % 2 == 0 ? 1 : -1;
  return r;
}

/// Write-once cache of the oracle values: the weighted counts and s_plus_t
/// for n <= max_n, and the norm-form counts for odd N <= 8*max_n - 1 (the
/// range the count-level arithmetic pairing uses). Lookups outside the
/// built range throw instead of extrapolating.
class PartitionTable {
public:
  explicit PartitionTable(long max_n) : max_n_(max_n) {
    if (max_n < 0) throw std::invalid_argument("PartitionTable needs max_n >= 0");
    o_.reserve(max_n + 1);
    o_star_.reserve(max_n + 1);
    spt_.reserve(max_n + 1);
    for (long n = 0; n <= max_n; ++n) {
      auto w = detail::weighted_gapfree_sum(n);
      o_.push_back(w.all);
      o_star_.push_back(w.odd_top);
      spt_.push_back(qbailey::s_plus_t(n));
    }
    norm_.resize(std::max(0L, 4 * max_n));  // slot i holds N = 2i+1 <= 8*max_n - 1
    for (long i = 0; i < static_cast<long>(norm_.size()); ++i)
      norm_[i] = norm_form_count(2 * i + 1);
  }

  long max_n() const { return max_n_; }
  long max_norm() const { return 8 * max_n_ - 1; }

  long long o(long n) const { return at(o_, n); }
  long long o_star(long n) const { return at(o_star_, n); }
  long long s_plus_t(long n) const { return at(spt_, n); }

  const NormFormCount& norm_form(long N) const {
    if (N < 1 || N % 2 == 0 || N > max_norm())
      throw std::out_of_range("norm-form lookup outside the built table");
    return norm_[(N - 1) / 2];
  }

private:
  long long at(const std::vector<long long>& v, long n) const {
    if (n < 0 || n > max_n_) throw std::out_of_range("partition table lookup beyond max_n");
    return v[static_cast<size_t>(n)];
  }

  long max_n_;
  std::vector<long long> o_, o_star_, spt_;
  std::vector<NormFormCount> norm_;
};

}  // namespace qbailey
