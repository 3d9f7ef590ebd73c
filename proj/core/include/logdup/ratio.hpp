#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>

namespace logdup {

/// Exact non-negative rational. A zero denominator reads as 1.
struct Ratio {
  std::size_t num = 0;
  std::size_t den = 1;

  double value() const { return den == 0 ? 1.0 : static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Ratio &a, const Ratio &b) { return (a <=> b) == 0; }
  friend std::weak_ordering operator<=>(const Ratio &a, const Ratio &b) {
    // Cross-multiplication; den == 0 is treated as the value 1.
    auto n1 = a.den == 0 ? 1 : a.num, d1 = a.den == 0 ? 1 : a.den;
    auto n2 = b.den == 0 ? 1 : b.num, d2 = b.den == 0 ? 1 : b.den;
    return static_cast<std::uint64_t>(n1) * d2 <=> static_cast<std::uint64_t>(n2) * d1;
  }
};

} // namespace logdup
