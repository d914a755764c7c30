#pragma once

// Brute-force reference implementations. Deliberately naive and independent
// of the library code paths they check.

#include <cstdint>
#include <string>
#include <vector>

namespace oracle {

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline bool text_contains(std::uint64_t n, const std::string& s) {
  return std::to_string(n).find(s) != std::string::npos;
}

// Length of the longest suffix of text that is a prefix of pattern.
inline std::size_t suffix_prefix(const std::string& text, const std::string& pattern) {
  for (std::size_t len = std::min(text.size(), pattern.size()); len > 0; --len)
    if (text.compare(text.size() - len, len, pattern, 0, len) == 0) return len;
  return 0;
}

// Number of n in [1, x] whose decimal text lacks s.
inline std::uint64_t scan_avoiders(const std::string& s, std::uint64_t x) {
  std::uint64_t c = 0;
  for (std::uint64_t n = 1; n <= x; ++n)
    if (!text_contains(n, s)) ++c;
  return c;
}

// Primes in [2, limit] by the plain sieve of Eratosthenes.
inline std::vector<bool> plain_sieve(std::uint64_t limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (std::uint64_t i = 2; i * i <= limit; ++i)
    if (prime[i])
      for (std::uint64_t j = i * i; j <= limit; j += i) prime[j] = false;
  return prime;
}

}  // namespace oracle
