#include "ccost/ratio.hpp"

#include <stdexcept>

namespace ccost {

using boost::multiprecision::cpp_int;

std::string format_fixed2(const Ratio& value) {
  if (value < 0) throw std::domain_error("format_fixed2: negative value");
  const cpp_int num = boost::multiprecision::numerator(value);
  const cpp_int den = boost::multiprecision::denominator(value);
  // round(num * 100 / den), ties upward; inputs are non-negative so this is
  // round-half-away-from-zero.
  const cpp_int hundredths = (num * 200 + den) / (den * 2);
  const cpp_int whole = hundredths / 100;
  const int frac = static_cast<int>(hundredths % 100);
  std::string out = whole.str();
  out += '.';
  out += static_cast<char>('0' + frac / 10);
  out += static_cast<char>('0' + frac % 10);
  return out;
}

std::string format_exact(const Ratio& value) {
  const cpp_int den = boost::multiprecision::denominator(value);
  std::string out = boost::multiprecision::numerator(value).str();
  if (den != 1) out += "/" + den.str();
  return out;
}

Ratio parse_exact(const std::string& text) {
  auto digits = [](std::string_view s, bool allow_sign) {
    if (allow_sign && !s.empty() && s.front() == '-') s.remove_prefix(1);
    return !s.empty() && s.find_first_not_of("0123456789") == std::string_view::npos;
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  if (!digits(num, true)) throw std::invalid_argument("not a ratio: " + text);
  if (slash == std::string::npos) return Ratio(cpp_int(num));
  const std::string den = text.substr(slash + 1);
  if (!digits(den, false) || cpp_int(den) == 0) throw std::invalid_argument("not a ratio: " + text);
  return Ratio(cpp_int(num), cpp_int(den));
}

}  // namespace ccost
