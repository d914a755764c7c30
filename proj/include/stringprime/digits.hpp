#pragma once

// Decimal digit strings and the digit views of integers used by the
// counting and search code. A DigitString keeps leading zeros: "05" and
// "5" are different patterns.

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stringprime/error.hpp"

namespace stringprime {

template <typename T>
concept UnsignedInt = std::unsigned_integral<T> || std::same_as<T, unsigned __int128>;

class DigitString {
 public:
  // Throws InvalidInput when digits is empty or holds a value above 9.
  explicit DigitString(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
    if (digits_.empty()) throw InvalidInput("digit string must not be empty");
    for (auto d : digits_)
      if (d > 9) throw InvalidInput("digit out of range 0..9");
  }

  std::size_t length() const noexcept { return digits_.size(); }
  std::span<const std::uint8_t> digits() const noexcept { return digits_; }
  std::uint8_t operator[](std::size_t i) const { return digits_[i]; }

  std::string str() const {
    std::string out(digits_.size(), '0');
    std::transform(digits_.begin(), digits_.end(), out.begin(),
                   [](std::uint8_t d) { return static_cast<char>('0' + d); });
    return out;
  }

  bool has_leading_zero() const noexcept { return digits_.front() == 0; }

  friend auto operator<=>(const DigitString&, const DigitString&) = default;
  friend bool operator==(const DigitString&, const DigitString&) = default;

 private:
  std::vector<std::uint8_t> digits_;
};

inline DigitString parse_digit_string(std::string_view text) {
  if (text.empty()) throw InvalidInput("empty digit string");
  std::vector<std::uint8_t> digits;
  digits.reserve(text.size());
  for (char c : text) {
    if (c < '0' || c > '9') throw InvalidInput("non-digit character in '" + std::string(text) + "'");
    digits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return DigitString(std::move(digits));
}

// Most-significant digit first. Zero renders as the single digit 0.
template <UnsignedInt T>
std::vector<std::uint8_t> decimal_digits(T n) {
  std::vector<std::uint8_t> out;
  do {
    out.push_back(static_cast<std::uint8_t>(n % 10));
    n /= 10;
  } while (n != 0);
  std::reverse(out.begin(), out.end());
  return out;
}

template <UnsignedInt T>
bool contains(T n, const DigitString& s) {
  const auto digits = decimal_digits(n);
  const auto pat = s.digits();
  if (pat.size() > digits.size()) return false;
  return std::search(digits.begin(), digits.end(), pat.begin(), pat.end()) != digits.end();
}

template <UnsignedInt T>
std::set<DigitString> windows(T n, std::size_t l) {
  std::set<DigitString> out;
  if (l == 0) throw InvalidInput("window length must be positive");
  const auto digits = decimal_digits(n);
  if (digits.size() < l) return out;
  for (std::size_t i = 0; i + l <= digits.size(); ++i)
    out.emplace(std::vector<std::uint8_t>(digits.begin() + static_cast<std::ptrdiff_t>(i),
                                          digits.begin() + static_cast<std::ptrdiff_t>(i + l)));
  return out;
}

}  // namespace stringprime

template <>
struct std::hash<stringprime::DigitString> {
  std::size_t operator()(const stringprime::DigitString& s) const noexcept {
    return std::hash<std::string>{}(s.str());
  }
};
