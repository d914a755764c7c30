#pragma once

// Searches over the primes: the least prime containing a string, the bound
// by which every length-l string has appeared in some prime, arithmetic
// progressions of string-containing primes, and the share of primes that
// contain a string.

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "stringprime/counting.hpp"
#include "stringprime/digits.hpp"
#include "stringprime/error.hpp"
#include "stringprime/primes.hpp"

namespace stringprime {

// The search ran out of range; limit is the bound that was searched.
struct NotFound {
  std::uint64_t limit;
};

template <typename T>
using SearchResult = std::variant<T, NotFound>;

inline SearchResult<std::uint64_t> least_prime_containing(const DigitString& s, std::uint64_t limit,
                                                          const SieveConfig& cfg = {}) {
  const PatternAutomaton automaton(s);
  std::uint64_t found = 0;
  sweep_segments(
      limit, cfg,
      [&](const SieveSegment& seg, std::uint64_t last) {
        std::uint64_t first = 0;
        seg.for_each_prime(last, [&](std::uint64_t p) {
          if (first == 0 && automaton.matches(p)) first = p;
        });
        return first;
      },
      [&](std::uint64_t first) {
        found = first;
        return first == 0;
      });
  if (found == 0) return NotFound{limit};
  return found;
}

inline constexpr unsigned kMaxCoverageL = 6;

class CoverageResult {
 public:
  CoverageResult(unsigned l, std::uint64_t m, std::uint64_t last, std::vector<std::uint64_t> first)
      : l_(l), m_(m), last_(last), first_(std::move(first)) {}

  unsigned l() const noexcept { return l_; }
  std::uint64_t universe_size() const noexcept { return first_.size(); }
  std::uint64_t m() const noexcept { return m_; }

  DigitString last_string() const { return parse_digit_string(std::to_string(last_)); }

  // First prime containing s; s must be in the universe (length l, no leading zero).
  std::uint64_t first_containing(const DigitString& s) const {
    if (s.length() != l_ || s.has_leading_zero()) throw DomainError("string outside coverage universe");
    return first_.at(std::stoull(s.str()) - universe_lo());
  }

  // fn(value, first_prime) for every universe string in ascending order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t i = 0; i < first_.size(); ++i) fn(universe_lo() + i, first_[i]);
  }

  std::uint64_t universe_lo() const noexcept { return universe_hi() / 10; }
  std::uint64_t universe_hi() const noexcept {
    std::uint64_t v = 1;
    for (unsigned i = 0; i < l_; ++i) v *= 10;
    return v;
  }

 private:
  unsigned l_;
  std::uint64_t m_;
  std::uint64_t last_;
  std::vector<std::uint64_t> first_;
};

// Smallest M such that every length-l string without a leading zero lies in
// some prime <= M. Windows inside primes may start with 0; they simply are
// not universe members.
inline SearchResult<CoverageResult> coverage_threshold(unsigned l, std::uint64_t limit,
                                                       const SieveConfig& cfg = {}) {
  if (l < 1 || l > kMaxCoverageL) throw DomainError("coverage requires 1 <= l <= 6");
  std::uint64_t hi = 1;
  for (unsigned i = 0; i < l; ++i) hi *= 10;
  const std::uint64_t lo = hi / 10;
  std::vector<std::uint64_t> first(hi - lo, 0);
  std::uint64_t covered = 0, m = 0, last = 0;

  using Hits = std::vector<std::pair<std::uint32_t, std::uint64_t>>;
  sweep_segments(
      limit, cfg,
      [&](const SieveSegment& seg, std::uint64_t last_n) {
        Hits hits;
        seg.for_each_prime(last_n, [&](std::uint64_t p) {
          for (std::uint64_t rest = p; rest >= lo; rest /= 10) {
            const std::uint64_t w = rest % hi;
            if (w >= lo) hits.emplace_back(static_cast<std::uint32_t>(w - lo), p);
          }
        });
        return hits;
      },
      [&](Hits hits) {
        for (auto [idx, p] : hits) {
          if (first[idx] != 0) continue;
          first[idx] = p;
          if (++covered == first.size()) {
            m = p;
            last = lo + idx;
            return false;
          }
        }
        return true;
      });
  if (m == 0) return NotFound{limit};
  return CoverageResult(l, m, last, std::move(first));
}

// CSV: string,first_containing_prime
inline void write_coverage_csv(std::ostream& out, const CoverageResult& c) {
  out << "string,first_containing_prime\n";
  c.for_each([&](std::uint64_t v, std::uint64_t p) { out << v << ',' << p << '\n'; });
}

struct APResult {
  std::uint64_t first_term;
  std::uint64_t difference;
  std::vector<std::uint64_t> terms;

  std::size_t length() const noexcept { return terms.size(); }
};

inline constexpr unsigned kMaxApLength = 6;

// First k-term progression of primes <= limit all containing s, ordered by
// first term, then by difference.
inline SearchResult<APResult> find_prime_ap(const DigitString& s, unsigned k, std::uint64_t limit,
                                            const SieveConfig& cfg = {}) {
  if (k < 3 || k > kMaxApLength) throw DomainError("progression length must be in 3..6");
  const PatternAutomaton automaton(s);
  std::vector<std::uint64_t> hits;
  sweep_segments(
      limit, cfg,
      [&](const SieveSegment& seg, std::uint64_t last) {
        std::vector<std::uint64_t> part;
        seg.for_each_prime(last, [&](std::uint64_t p) {
          if (automaton.matches(p)) part.push_back(p);
        });
        return part;
      },
      [&](std::vector<std::uint64_t> part) {
        hits.insert(hits.end(), part.begin(), part.end());
        return true;
      });
  const std::unordered_set<std::uint64_t> member(hits.begin(), hits.end());

  for (std::size_t i = 0; i < hits.size(); ++i) {
    const std::uint64_t a = hits[i];
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      const std::uint64_t d = hits[j] - a;
      if (a + (k - 1) * d > limit) break;
      unsigned len = 2;
      while (len < k && member.contains(a + len * d)) ++len;
      if (len == k) {
        APResult ap{a, d, {}};
        for (unsigned t = 0; t < k; ++t) ap.terms.push_back(a + t * d);
        return ap;
      }
    }
  }
  return NotFound{limit};
}

struct DensityReport {
  DigitString pattern;
  std::uint64_t n;
  std::uint64_t pi_n;
  std::uint64_t containing;
  std::uint64_t avoiding;

  // Share of primes <= n containing the pattern; 0 when there are none.
  double density() const { return pi_n == 0 ? 0.0 : static_cast<double>(containing) / static_cast<double>(pi_n); }
};

inline constexpr unsigned kMaxDensityExponent = 9;

// One report per bound in ns, from a single ascending sieve pass.
inline std::vector<DensityReport> density_at(const DigitString& s, std::vector<std::uint64_t> ns,
                                             const SieveConfig& cfg = {}) {
  if (ns.empty()) return {};
  for (auto n : ns)
    if (n == 0) throw DomainError("density bound must be positive");
  std::vector<std::uint64_t> bounds = ns;
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  const PatternAutomaton automaton(s);
  using Buckets = std::vector<std::pair<std::uint64_t, std::uint64_t>>;  // (primes, containing)
  Buckets total(bounds.size(), {0, 0});
  sweep_segments(
      bounds.back(), cfg,
      [&](const SieveSegment& seg, std::uint64_t last) {
        Buckets part(bounds.size(), {0, 0});
        std::size_t b = 0;
        seg.for_each_prime(last, [&](std::uint64_t p) {
          while (bounds[b] < p) ++b;
          ++part[b].first;
          if (automaton.matches(p)) ++part[b].second;
        });
        return part;
      },
      [&](Buckets part) {
        for (std::size_t b = 0; b < part.size(); ++b) {
          total[b].first += part[b].first;
          total[b].second += part[b].second;
        }
        return true;
      });

  std::vector<DensityReport> by_bound;
  std::uint64_t pi = 0, containing = 0;
  for (std::size_t b = 0; b < bounds.size(); ++b) {
    pi += total[b].first;
    containing += total[b].second;
    by_bound.push_back({s, bounds[b], pi, containing, pi - containing});
  }
  std::vector<DensityReport> out;
  for (auto n : ns) out.push_back(*std::find_if(by_bound.begin(), by_bound.end(), [&](const auto& r) { return r.n == n; }));
  return out;
}

inline DensityReport relative_density(const DigitString& s, std::uint64_t n, const SieveConfig& cfg = {}) {
  return density_at(s, {n}, cfg).front();
}

inline std::vector<DensityReport> density_table(const DigitString& s, const std::vector<unsigned>& exponents,
                                                const SieveConfig& cfg = {}) {
  std::vector<std::uint64_t> ns;
  for (auto e : exponents) {
    if (e > kMaxDensityExponent) throw ResourceLimit("density exponent above 9 exceeds the sieve ceiling");
    std::uint64_t n = 1;
    for (unsigned i = 0; i < e; ++i) n *= 10;
    ns.push_back(n);
  }
  return density_at(s, std::move(ns), cfg);
}

}  // namespace stringprime
