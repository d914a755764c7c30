#pragma once

// A quick pass over the library's invariants, runnable from the CLI with
// --seed-check. Each check is small enough to finish in well under a second.

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "stringprime/bounds.hpp"
#include "stringprime/counting.hpp"
#include "stringprime/digits.hpp"
#include "stringprime/experiments.hpp"
#include "stringprime/primes.hpp"

namespace stringprime {

struct CheckResult {
  std::string name;
  bool passed;
};

inline std::vector<CheckResult> run_invariant_checks(const SieveConfig& cfg = {}) {
  std::vector<CheckResult> out;
  auto check = [&](std::string name, const std::function<bool()>& body) {
    bool ok = false;
    try {
      ok = body();
    } catch (...) {
      ok = false;
    }
    out.push_back({std::move(name), ok});
  };
  const char* corpus[] = {"9", "0", "1", "12", "00", "123", "999"};

  check("count_avoiders matches a scan for x <= 3000", [&] {
    for (auto text : corpus) {
      const auto s = parse_digit_string(text);
      const PatternAutomaton a(s);
      u128 scan = 0;
      for (std::uint64_t x = 1; x <= 3000; ++x) {
        if (!contains(x, s)) ++scan;
        if (count_avoiders(a, x).value != scan) return false;
      }
    }
    return true;
  });
  check("count_avoiders(\"9\", 10^k - 1) = 9^k - 1", [&] {
    const auto s = parse_digit_string("9");
    for (unsigned k = 1; k <= 18; ++k)
      if (count_avoiders(s, pow10_u128(k) - 1).value != checked_pow(9, k) - 1) return false;
    return true;
  });
  check("avoider counts stay below the base-r majorant", [&] {
    for (auto text : corpus) {
      const auto s = parse_digit_string(text);
      const PatternAutomaton a(s);
      const u128 r = pow10_u128(static_cast<unsigned>(s.length()));
      for (std::uint64_t x = 1; x <= 10'000'000; x = x * 3 + 1)
        if (count_avoiders(a, x) > hw_upper_bound(BaseRContext::for_bound(r, 0, x))) return false;
    }
    return true;
  });
  check("pi(x) > x / log x on [17, 10^5]", [&] {
    std::uint64_t pi = 0;
    auto stream = primes_up_to(100'000, cfg);
    auto next = stream.next();
    for (std::uint64_t x = 2; x <= 100'000; ++x) {
      while (next && *next <= x) {
        ++pi;
        next = stream.next();
      }
      if (x >= 17 && !(static_cast<double>(pi) > rosser_lower(static_cast<double>(x)))) return false;
    }
    return true;
  });
  check("sieve agrees with Miller-Rabin below 10^5", [&] {
    std::vector<bool> sieved(100'001, false);
    for (auto p : primes_up_to(100'000, cfg)) sieved[p] = true;
    for (std::uint64_t n = 0; n <= 100'000; ++n)
      if (sieved[n] != is_prime(n)) return false;
    return true;
  });
  check("exact bound <= 5.7 l^2 10^l exactly for 6 <= l <= 15", [] {
    if (theorem_bound_exact(1e5) <= theorem_bound_simple(5)) return false;
    for (unsigned l = 6; l <= 15; ++l)
      if (!(theorem_bound_exact(std::pow(10.0, l)) <= theorem_bound_simple(l))) return false;
    return true;
  });
  check("solve_log_n round trip", [] {
    for (double b = 10; b <= 1e12; b *= 3.7) {
      const double y = solve_log_n(b);
      if (std::abs(y / std::log(y) - b) > 1e-9 * b) return false;
    }
    return true;
  });
  check("coverage thresholds 83, 1847, 50411", [&] {
    const std::uint64_t expect[] = {83, 1847, 50411};
    for (unsigned l = 1; l <= 3; ++l) {
      auto res = coverage_threshold(l, 1'000'000, cfg);
      auto* c = std::get_if<CoverageResult>(&res);
      if (!c || c->m() != expect[l - 1]) return false;
    }
    return true;
  });
  return out;
}

}  // namespace stringprime
