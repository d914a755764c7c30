#pragma once

// Exact counting of integers whose decimal representation avoids a digit
// string, by digit DP over a KMP-style pattern automaton, together with the
// base-r closed forms and majorants for the same count.

#include <array>
#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "stringprime/digits.hpp"
#include "stringprime/error.hpp"
#include "stringprime/uint128.hpp"

namespace stringprime {

// Exact count of integers; wide enough for any x below 10^38.
struct AvoiderCount {
  u128 value = 0;

  friend auto operator<=>(const AvoiderCount&, const AvoiderCount&) = default;
  std::string str() const { return to_string(value); }
};

class PatternAutomaton {
 public:
  explicit PatternAutomaton(DigitString pattern) : pattern_(std::move(pattern)) {
    const std::size_t l = pattern_.length();
    // border[s]: longest proper border of the first s pattern digits
    std::vector<std::size_t> border(l + 1, 0);
    for (std::size_t i = 1, k = 0; i < l; ++i) {
      while (k > 0 && pattern_[i] != pattern_[k]) k = border[k];
      if (pattern_[i] == pattern_[k]) ++k;
      border[i + 1] = k;
    }
    table_.assign(l + 1, {});
    for (std::size_t s = 0; s <= l; ++s)
      for (std::uint8_t d = 0; d < 10; ++d) {
        if (s == l) table_[s][d] = static_cast<std::uint16_t>(l);
        else if (pattern_[s] == d) table_[s][d] = static_cast<std::uint16_t>(s + 1);
        else table_[s][d] = s == 0 ? 0 : table_[border[s]][d];
      }
  }

  const DigitString& pattern() const noexcept { return pattern_; }
  std::size_t accept_state() const noexcept { return pattern_.length(); }
  std::size_t state_count() const noexcept { return pattern_.length() + 1; }

  std::size_t transition(std::size_t state, std::uint8_t digit) const { return table_.at(state).at(digit); }

  // True when the decimal digits of n contain the pattern.
  template <UnsignedInt T>
  bool matches(T n) const {
    const std::size_t accept = accept_state();
    std::size_t s = 0;
    for (auto d : decimal_digits(n)) {
      s = table_[s][d];
      if (s == accept) return true;
    }
    return false;
  }

 private:
  DigitString pattern_;
  std::vector<std::array<std::uint16_t, 10>> table_;
};

inline PatternAutomaton build_automaton(const DigitString& s) { return PatternAutomaton(s); }

// Number of n in [1, x] whose decimal digits avoid the automaton's pattern.
inline AvoiderCount count_avoiders(const PatternAutomaton& a, u128 x) {
  if (x == 0) return {};
  const auto xd = decimal_digits(x);
  const std::size_t len = xd.size();
  const std::size_t accept = a.accept_state();

  // free_[m][s]: digit strings of length m that, fed from state s, never accept
  std::vector<std::vector<u128>> free_(len, std::vector<u128>(a.state_count(), 0));
  for (std::size_t s = 0; s < accept; ++s) free_[0][s] = 1;
  for (std::size_t m = 1; m < len; ++m)
    for (std::size_t s = 0; s < accept; ++s)
      for (std::uint8_t d = 0; d < 10; ++d) {
        const std::size_t t = a.transition(s, d);
        if (t != accept) free_[m][s] += free_[m - 1][t];
      }

  u128 total = 0;
  // shorter numbers: nonzero first digit, then anything
  for (std::size_t digits = 1; digits < len; ++digits)
    for (std::uint8_t f = 1; f < 10; ++f) {
      const std::size_t t = a.transition(0, f);
      if (t != accept) total += free_[digits - 1][t];
    }

  // same length as x: walk the tight prefix
  std::size_t s = 0;
  for (std::size_t i = 0; i < len; ++i) {
    for (std::uint8_t d = (i == 0 ? 1 : 0); d < xd[i]; ++d) {
      const std::size_t t = a.transition(s, d);
      if (t != accept) total += free_[len - 1 - i][t];
    }
    s = a.transition(s, xd[i]);
    if (s == accept) break;
  }
  if (s != accept) total += 1;
  return {total};
}

inline AvoiderCount count_avoiders(const DigitString& s, u128 x) { return count_avoiders(PatternAutomaton(s), x); }

// The base-r view of avoidance: a length-l decimal string is one digit b of
// base r = 10^l, and k counts base-r digits of the x under discussion.
struct BaseRContext {
  u128 r = 10;
  u128 b = 0;
  unsigned k = 1;

  BaseRContext(u128 base, u128 digit, unsigned digits) : r(base), b(digit), k(digits) {
    if (r < 3) throw DomainError("base r must be at least 3");
    if (b >= r) throw DomainError("forbidden digit b must be below r");
    if (k < 1) throw DomainError("k must be at least 1");
  }

  // k chosen so that r^(k-1) <= x < r^k.
  static BaseRContext for_bound(u128 r, u128 b, u128 x) {
    if (x == 0) throw DomainError("x must be positive");
    if (r < 3) throw DomainError("base r must be at least 3");
    unsigned k = 0;
    for (u128 v = x; v != 0; v /= r) ++k;
    return BaseRContext(r, b, k);
  }
};

inline u128 pow10_u128(unsigned e) {
  if (e > 38) throw Overflow("10^" + std::to_string(e) + " exceeds 128 bits");
  return checked_pow(10, e);
}

// Base-r integers with exactly d digits, none equal to ctx.b.
inline AvoiderCount base_r_digit_avoiders(const BaseRContext& ctx, unsigned d) {
  if (d < 1) throw DomainError("digit count must be at least 1");
  if (ctx.b == 0) return {checked_pow(ctx.r - 1, d)};
  return {checked_mul(ctx.r - 2, checked_pow(ctx.r - 1, d - 1))};
}

// Ceiling of (r-1)^(k+1) / (r-2): an integer majorant of every base-r
// digit avoider count up to x when r^(k-1) <= x < r^k.
inline AvoiderCount hw_upper_bound(const BaseRContext& ctx) {
  const u128 num = checked_pow(ctx.r - 1, ctx.k + 1);
  const u128 den = ctx.r - 2;
  return {num / den + (num % den != 0 ? 1 : 0)};
}

// r(r-1)/(r-2) * ((r-1)/r)^k, evaluated in log space.
inline double avoider_density_bound(const BaseRContext& ctx) {
  const auto r = static_cast<long double>(ctx.r);
  const long double lg = std::log(r) + std::log(r - 1) - std::log(r - 2) +
                         static_cast<long double>(ctx.k) * std::log1p(-1.0L / r);
  return static_cast<double>(std::exp(lg));
}

}  // namespace stringprime
