#include "lp/rational.hpp"

#include <cctype>
#include <ostream>

namespace lp {

Rational Rational::from_string(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw Error(ErrorKind::FormatError, "empty numeric literal");

  auto dot = s.find('.');
  if (dot != std::string::npos) {
    // Exact decimal: 0.75 -> 75/100 canonicalized to 3/4.
    bool negative = s[0] == '-';
    std::string digits = negative ? s.substr(1) : s;
    dot = digits.find('.');
    std::string int_part = digits.substr(0, dot);
    std::string frac_part = digits.substr(dot + 1);
    if (int_part.empty() || frac_part.empty())
      throw Error(ErrorKind::FormatError, "malformed decimal literal '" + s + "'");
    for (char c : int_part)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorKind::FormatError, "malformed decimal literal '" + s + "'");
    for (char c : frac_part)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw Error(ErrorKind::FormatError, "malformed decimal literal '" + s + "'");
    std::string num = int_part + frac_part;
    std::string den = "1" + std::string(frac_part.size(), '0');
    mpq_class q;
    if (q.set_str(num + "/" + den, 10) != 0)
      throw Error(ErrorKind::FormatError, "malformed decimal literal '" + s + "'");
    q.canonicalize();
    if (negative) q = -q;
    return Rational(std::move(q));
  }

  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw Error(ErrorKind::FormatError, "malformed rational literal '" + s + "'");
  if (q.get_den() == 0)
    throw Error(ErrorKind::DivisionByZero, "rational literal with zero denominator '" + s + "'");
  q.canonicalize();
  return Rational(std::move(q));
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
  return os << r.str();
}

}  // namespace lp
