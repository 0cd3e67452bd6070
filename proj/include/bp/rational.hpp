#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bp {

/// Arbitrary-precision rational, always kept canonical (reduced, positive
/// denominator) by GMP.
using Rational = mpq_class;

/// Parses "a", "-a", "a/b". Throws std::invalid_argument on malformed input
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& q);

/// Canonical n/d (mpq_class(n, d) alone does not reduce).
inline Rational frac(long n, long d) {
  Rational q(n, d);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace bp
