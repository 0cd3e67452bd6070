#include "bp/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace bp {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t pos = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (pos == s.size()) return false;
  for (; pos < s.size(); ++pos)
    if (!std::isdigit(static_cast<unsigned char>(s[pos]))) return false;
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (s[0] == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const auto num_text = text.substr(0, slash);
  if (!is_integer_literal(num_text))
    throw std::invalid_argument("invalid rational: '" + std::string(text) + "'");
  Rational q(parse_integer(num_text));
  if (slash != std::string_view::npos) {
    const auto den_text = text.substr(slash + 1);
    if (!is_integer_literal(den_text) || den_text[0] == '-')
      throw std::invalid_argument("invalid rational: '" + std::string(text) + "'");
    mpz_class den = parse_integer(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    q /= Rational(den);
  }
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace bp
