#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include "bp/polynomial.hpp"
#include "bp/rational.hpp"

namespace bp {

/// Element of the rational function field ℚ(k) in the level parameter k.
///
/// Canonical form: numerator and denominator coprime, denominator monic, zero
/// represented as 0/1. Equality is structural equality of the canonical form.
class Scalar {
 public:
  Scalar() : den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}                  // NOLINT(implicit)
  Scalar(const Rational& c) : num_(c), den_(1) {}       // NOLINT(implicit)
  Scalar(const Polynomial& p) : num_(p), den_(1) {}     // NOLINT(implicit)
  /// Throws std::domain_error if den is zero.
  Scalar(Polynomial num, Polynomial den);

  /// The level parameter k itself.
  static Scalar k();

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.degree() <= 0 && den_.degree() == 0; }
  /// Value of a constant scalar; throws std::logic_error otherwise.
  Rational constant_value() const;

  /// Exact evaluation at k = k0. Throws std::domain_error at a pole.
  Rational specialize(const Rational& k0) const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  /// Throws std::domain_error when dividing by zero.
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar&, const Scalar&) = default;

  /// "(<num>)/(<den>)" with integer coefficients, jointly primitive, positive
  /// leading denominator coefficient. Round-trips exactly through parse().
  std::string to_string() const;
  /// Accepts the to_string() format, a bare polynomial, or a bare rational.
  static Scalar parse(std::string_view text);

 private:
  void normalize();

  Polynomial num_;
  Polynomial den_;
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline bool is_zero(const Rational& q) { return q == 0; }

std::string to_string(const Scalar& s);

}  // namespace bp

template <>
struct std::hash<bp::Scalar> {
  std::size_t operator()(const bp::Scalar& s) const noexcept {
    return std::hash<std::string>{}(s.to_string());
  }
};
