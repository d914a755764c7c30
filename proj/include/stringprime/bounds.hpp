#pragma once

// Explicit bounds on the least prime containing a length-l digit string,
// inversion of y / log y = B, and the coupon-collector estimate of where
// all length-l strings should have appeared. Natural logarithms throughout.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>

#include "stringprime/error.hpp"

namespace stringprime {

inline constexpr double kBoundConstant = 5.7;
inline constexpr unsigned kMaxLinearL = 18;

inline void check_string_length(unsigned l, unsigned max) {
  if (l < 1 || l > max)
    throw DomainError("string length l=" + std::to_string(l) + " outside 1.." + std::to_string(max));
}

// 5.7 l^2 10^l
inline double theorem_bound_simple(unsigned l) {
  check_string_length(l, kMaxLinearL);
  return kBoundConstant * l * l * std::pow(10.0, l);
}

// log(5.7 l^2 10^l), for any l >= 1.
inline double log_theorem_bound_simple(unsigned l) {
  check_string_length(l, 1u << 20);
  return std::log(kBoundConstant) + 2.0 * std::log(static_cast<double>(l)) + l * std::numbers::ln10;
}

// r log^2 r (1 + (1 + log((r-1)/(r-2))) / log r)
inline double theorem_bound_exact(double r) {
  if (!(r >= 3.0)) throw DomainError("theorem_bound_exact requires r >= 3");
  const double lr = std::log(r);
  // log((r-1)/(r-2)) = log1p(1/(r-2)), stable for large r
  return r * lr * lr * (1.0 + (1.0 + std::log1p(1.0 / (r - 2.0))) / lr);
}

// log of theorem_bound_exact(10^l), for l too large for doubles.
inline double log_theorem_bound_exact_pow10(unsigned l) {
  check_string_length(l, 1u << 20);
  const double lr = l * std::numbers::ln10;
  const double tail = l < 300 ? std::log1p(1.0 / (std::pow(10.0, l) - 2.0)) : 0.0;
  return lr + 2.0 * std::log(lr) + std::log1p((1.0 + tail) / lr);
}

inline constexpr int kSolveMaxIterations = 10'000;

// The y > e solving y / log y = B, by the iteration y <- B log y from
// y0 = B log B. The map is a contraction on (e, inf) with factor 1/log y.
inline double solve_log_n(double b) {
  if (!(b > std::numbers::e)) throw DomainError("solve_log_n requires B > e");
  if (!std::isfinite(b)) throw DomainError("solve_log_n requires finite B");
  double y = b * std::log(b);
  for (int i = 0; i < kSolveMaxIterations; ++i) {
    const double next = b * std::log(y);
    if (std::abs(next - y) <= 1e-15 * next) return next;
    y = next;
  }
  return y;
}

// Solves u - log u = log B for u = log y, i.e. returns log of solve_log_n(B)
// given only log B. Usable where B itself overflows a double.
inline double solve_log_n_from_log(double log_b) {
  if (!(log_b > 1.0)) throw DomainError("solve_log_n_from_log requires log B > 1");
  double u = log_b + std::log(log_b);
  for (int i = 0; i < kSolveMaxIterations; ++i) {
    const double next = log_b + std::log(u);
    if (std::abs(next - u) <= 1e-15 * next) return next;
    u = next;
  }
  return u;
}

struct CouponPrediction {
  double expected_pi;  // primes needed to have drawn every length-l string
  double predicted_n;  // N with N / log N = expected_pi
};

inline constexpr unsigned kMaxCouponL = 250;

inline CouponPrediction coupon_prediction(unsigned l) {
  if (l < 2) throw DomainError("coupon_prediction requires l >= 2 (first term divides by l-1)");
  check_string_length(l, kMaxCouponL);
  const double below = std::pow(10.0, l - 1.0);
  const double strings = 9.0 * below;
  const double pi = below / ((l - 1.0) * std::numbers::ln10) + strings * std::log(strings);
  return {pi, solve_log_n(pi)};
}

struct AsymptoticPrediction {
  double predicted_n;
  double implied_constant;  // predicted_n / (l^2 10^l)
};

inline AsymptoticPrediction asymptotic_prediction(unsigned l) {
  const auto c = coupon_prediction(l);
  return {c.predicted_n, c.predicted_n / (static_cast<double>(l) * l * std::pow(10.0, l))};
}

// Everything known about the bound for one string length. When log_scale
// is set, bound_simple, bound_exact and log_n hold natural logs of the
// quantities and r is not representable.
struct BoundReport {
  unsigned l = 0;
  bool log_scale = false;
  double r = 0;
  double bound_simple = 0;
  double bound_exact = 0;
  double log_n = 0;
  std::optional<double> coupon_pi;
  std::optional<double> coupon_n;
};

inline BoundReport bound_report(unsigned l) {
  check_string_length(l, 1u << 20);
  BoundReport rep;
  rep.l = l;
  if (l <= kMaxLinearL) {
    rep.r = std::pow(10.0, l);
    rep.bound_simple = theorem_bound_simple(l);
    rep.bound_exact = theorem_bound_exact(rep.r);
    rep.log_n = solve_log_n(rep.bound_simple);
  } else {
    rep.log_scale = true;
    rep.r = std::pow(10.0, l);  // inf past 10^308
    rep.bound_simple = log_theorem_bound_simple(l);
    rep.bound_exact = log_theorem_bound_exact_pow10(l);
    rep.log_n = solve_log_n_from_log(rep.bound_simple);
  }
  if (l >= 2 && l <= kMaxCouponL) {
    const auto c = coupon_prediction(l);
    rep.coupon_pi = c.expected_pi;
    rep.coupon_n = c.predicted_n;
  }
  return rep;
}

}  // namespace stringprime
