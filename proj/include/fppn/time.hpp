#pragma once

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace fppn {

/// All times and durations are integer microseconds.
using time_us = std::int64_t;

constexpr time_us ms(std::int64_t v) { return v * 1000; }

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// lcm over positive operands; throws instead of wrapping around.
inline time_us checked_lcm(time_us a, time_us b) {
  if (a <= 0 || b <= 0) {
    throw error("lcm requires positive durations");
  }
  const time_us g = std::gcd(a, b);
  const time_us q = a / g;
  if (q > std::numeric_limits<time_us>::max() / b) {
    throw error("lcm overflow");
  }
  return q * b;
}

/// Renders a microsecond count in milliseconds without trailing zeros:
/// 31000 -> "31", 1500 -> "1.5", 1234 -> "1.234".
inline std::string format_ms(time_us us) {
  std::string sign;
  if (us < 0) {
    sign = "-";
    us = -us;
  }
  std::string out = sign + std::to_string(us / 1000);
  time_us frac = us % 1000;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 3 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += "." + digits;
  }
  return out;
}

}  // namespace fppn
