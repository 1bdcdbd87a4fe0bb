#pragma once

// Decimal output with 12 significant digits.

#include <cmath>
#include <cstdio>
#include <string>

namespace walkgrowth {

inline constexpr int kSignificantDigits = 12;

inline std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// x rounded to 12 significant digits, so that shortest round-trip printing shows at most 12.
inline double round_significant(double x) {
  if (!std::isfinite(x) || x == 0.0) return x;
  return std::stod(format_number(x));
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace walkgrowth
