// SPDX-License-Identifier: Apache-2.0

#ifndef CCARD_RATIO_HPP
#define CCARD_RATIO_HPP

#include <cstdint>
#include <string>

namespace ccard {

// Exact non-negative rational with positive denominator. Numerator and
// denominator are kept as given (5/6 stays 5/6, it is not reduced to make
// printed values match their source counts); comparisons are value-based.
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

inline bool operator==(Ratio a, Ratio b) { return a.num * b.den == b.num * a.den; }
inline bool operator!=(Ratio a, Ratio b) { return !(a == b); }
inline bool operator<(Ratio a, Ratio b) { return a.num * b.den < b.num * a.den; }
inline bool operator<=(Ratio a, Ratio b) { return a.num * b.den <= b.num * a.den; }
inline bool operator>(Ratio a, Ratio b) { return b < a; }
inline bool operator>=(Ratio a, Ratio b) { return b <= a; }

// Parses "A/B", "P%" or a plain integer ("1" == 1/1).
// Throws std::invalid_argument on malformed input or non-positive denominator.
Ratio parse_ratio(const std::string& text);

}  // namespace ccard

#endif
