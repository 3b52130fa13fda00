#pragma once

#include <charconv>
#include <string>

namespace lastloop {

/// Locale-independent fixed notation with `decimals` digits after the point.
inline std::string format_fixed(double v, int decimals) {
  char buf[128];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  return std::string(buf, r.ptr);
}

/// Shortest representation that round-trips.
inline std::string format_shortest(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

/// Scientific notation with `digits` significant digits.
inline std::string format_sci(double v, int digits) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, digits - 1);
  return std::string(buf, r.ptr);
}

}  // namespace lastloop
