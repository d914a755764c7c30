#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "stringprime/error.hpp"

namespace stringprime {

using u128 = unsigned __int128;

inline constexpr u128 kU128Max = ~static_cast<u128>(0);

inline std::string to_string(u128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v != 0) {
    out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// Parses plain decimal text. Rejects signs, whitespace and values above 2^128-1.
inline u128 parse_u128(std::string_view text) {
  if (text.empty()) throw InvalidInput("empty integer");
  u128 v = 0;
  for (char c : text) {
    if (c < '0' || c > '9') throw InvalidInput("not a decimal integer: " + std::string(text));
    const auto d = static_cast<unsigned>(c - '0');
    if (v > (kU128Max - d) / 10) throw Overflow("integer exceeds 128 bits: " + std::string(text));
    v = v * 10 + d;
  }
  return v;
}

inline u128 checked_mul(u128 a, u128 b) {
  u128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw Overflow("128-bit multiplication overflow");
  return out;
}

inline u128 checked_add(u128 a, u128 b) {
  u128 out;
  if (__builtin_add_overflow(a, b, &out)) throw Overflow("128-bit addition overflow");
  return out;
}

inline u128 checked_pow(u128 base, unsigned exp) {
  u128 out = 1;
  for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
  return out;
}

}  // namespace stringprime
