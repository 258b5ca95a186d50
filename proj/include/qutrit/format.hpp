#ifndef QUTRIT_FORMAT_HPP
#define QUTRIT_FORMAT_HPP

#include <array>
#include <charconv>
#include <cmath>
#include <string>

namespace qutrit {

/// Shortest decimal string that parses back to the same double, '.' separator.
/// Negative zero prints as "0"; non-finite values print as an empty field.
inline std::string format_number(double x) {
  if (!std::isfinite(x)) return {};
  if (x == 0.0) x = 0.0;
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), res.ptr);
}

}  // namespace qutrit

#endif  // QUTRIT_FORMAT_HPP
