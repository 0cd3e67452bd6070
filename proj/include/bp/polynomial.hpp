#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "bp/rational.hpp"

namespace bp {

/// Dense univariate polynomial in k over ℚ. Coefficients are stored from the
/// constant term upward; the leading coefficient is never zero, and the zero
/// polynomial has no coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT(implicit)
  Polynomial(const Rational& c);                    // NOLINT(implicit)
  explicit Polynomial(std::vector<Rational> coeffs);

  /// The monomial k.
  static Polynomial variable();

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational coeff(int i) const;
  Rational leading() const;

  Rational evaluate(const Rational& x) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  Polynomial operator-() const;

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }

  /// Euclidean division; throws std::domain_error for a zero divisor.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  /// Monic gcd (zero only if both inputs are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);

  Polynomial monic() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Integer-coefficient rendering in the variable k, e.g. "2*k^2-3*k+1".
  /// Coefficients must already be integers.
  std::string to_integer_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace bp
