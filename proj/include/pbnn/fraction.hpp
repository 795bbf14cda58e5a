#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pbnn {

namespace detail {
__extension__ using wide_uint = unsigned __int128;
}

/// Exact non-negative rational kept unreduced, so feature quantities print
/// over their natural denominator 2^N ("6/64", not "3/32").
struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  /// Value comparison; 6/64 == 3/32.
  friend bool operator==(const Fraction& a, const Fraction& b) {
    return static_cast<detail::wide_uint>(a.num) * b.den ==
           static_cast<detail::wide_uint>(b.num) * a.den;
  }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) {
    return static_cast<detail::wide_uint>(a.num) * b.den <=>
           static_cast<detail::wide_uint>(b.num) * a.den;
  }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const { return std::to_string(num) + "/" + std::to_string(den); }

  /// Parses "num/den"; throws FormatError.
  static Fraction parse(std::string_view text);
};

}  // namespace pbnn
