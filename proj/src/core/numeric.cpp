#include "core/numeric.hpp"

#include <cctype>

#include "core/error.hpp"

namespace iterhash {

std::string round_half_up_2(const Rational& q) {
  require(q >= 0, ErrorKind::domain, "round_half_up_2: negative value");
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  // floor(100 q + 1/2) = floor((200 num + den) / (2 den))
  const BigInt hundredths = (200 * num + den) / (2 * den);
  const BigInt whole = hundredths / 100;
  const BigInt frac = hundredths % 100;
  std::string out = whole.str() + ".";
  if (frac < 10) out += "0";
  out += frac.str();
  return out;
}

Rational parse_rational(const std::string& text) {
  auto digits_only = [](const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string a = text.substr(0, slash);
    const std::string b = text.substr(slash + 1);
    require(digits_only(a) && digits_only(b), ErrorKind::usage, "malformed rational '" + text + "'");
    const BigInt den(b);
    require(den != 0, ErrorKind::domain, "rational with zero denominator");
    return Rational(BigInt(a), den);
  }
  const auto dot = text.find('.');
  if (dot != std::string::npos) {
    const std::string a = text.substr(0, dot);
    const std::string b = text.substr(dot + 1);
    require((a.empty() || digits_only(a)) && digits_only(b), ErrorKind::usage,
            "malformed decimal '" + text + "'");
    BigInt scale = 1;
    for (std::size_t i = 0; i < b.size(); ++i) scale *= 10;
    return Rational(BigInt(a.empty() ? std::string("0") : a) * scale + BigInt(b), scale);
  }
  require(digits_only(text), ErrorKind::usage, "malformed number '" + text + "'");
  return Rational(BigInt(text));
}

std::string to_string(const BigInt& v) { return v.str(); }

}  // namespace iterhash
