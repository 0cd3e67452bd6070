#include "bp/scalar.hpp"

#include <cctype>
#include <stdexcept>

namespace bp {

Scalar::Scalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("Scalar: zero denominator");
  normalize();
}

Scalar Scalar::k() { return Scalar(Polynomial::variable()); }

void Scalar::normalize() {
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  if (den_.degree() > 0) {
    Polynomial g = Polynomial::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = Polynomial::divmod(num_, g).first;
      den_ = Polynomial::divmod(den_, g).first;
    }
  }
  const Rational lead = den_.leading();
  if (lead != 1) {
    const Rational inv = Rational(1) / lead;
    num_ *= inv;
    den_ *= inv;
  }
}

Rational Scalar::constant_value() const {
  if (!is_constant()) throw std::logic_error("Scalar::constant_value: depends on k");
  return num_.coeff(0);
}

Rational Scalar::specialize(const Rational& k0) const {
  const Rational d = den_.evaluate(k0);
  if (d == 0) throw std::domain_error("Scalar::specialize: pole at k = " + bp::to_string(k0));
  return num_.evaluate(k0) / d;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
    if (den_.degree() > 0) normalize();
    else if (num_.is_zero()) den_ = Polynomial(1);
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ = den_ * o.den_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  num_ *= o.num_;
  if (num_.is_zero()) {
    den_ = Polynomial(1);
    return *this;
  }
  if (den_.degree() == 0 && o.den_.degree() == 0) return *this;
  den_ *= o.den_;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::domain_error("Scalar: division by zero");
  Scalar inv;
  inv.num_ = o.den_;
  inv.den_ = o.num_;
  inv.normalize();
  return *this *= inv;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  r.num_ = -r.num_;
  return r;
}

std::string Scalar::to_string() const {
  mpz_class l = 1;
  for (const auto* p : {&num_, &den_})
    for (const auto& c : p->coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  Polynomial n = num_ * Rational(l);
  Polynomial d = den_ * Rational(l);
  mpz_class g = 0;
  for (const auto* p : {&n, &d})
    for (const auto& c : p->coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
  if (g > 1) {
    n *= Rational(1, 1) / Rational(g);
    d *= Rational(1, 1) / Rational(g);
  }
  return "(" + n.to_integer_string() + ")/(" + d.to_integer_string() + ")";
}

std::string to_string(const Scalar& s) { return s.to_string(); }

namespace {

class PolyParser {
 public:
  explicit PolyParser(std::string_view s) : s_(s) {}

  Scalar parse_scalar() {
    skip_ws();
    Polynomial num = parse_group();
    skip_ws();
    Polynomial den(1);
    if (peek() == '/') {
      ++pos_;
      den = parse_group();
    }
    skip_ws();
    if (pos_ != s_.size()) fail();
    if (den.is_zero()) throw std::invalid_argument("scalar with zero denominator: '" + std::string(s_) + "'");
    return Scalar(num, den);
  }

 private:
  Polynomial parse_group() {
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      Polynomial p = parse_poly();
      skip_ws();
      if (peek() != ')') fail();
      ++pos_;
      return p;
    }
    return parse_poly();
  }

  // sum of terms: [sign] [int] [* k [^ int]] | [sign] k [^ int]
  Polynomial parse_poly() {
    Polynomial acc;
    bool first = true;
    for (;;) {
      skip_ws();
      char c = peek();
      int sign = 1;
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
        skip_ws();
      } else if (!first) {
        break;
      }
      first = false;
      Rational coeff = 1;
      bool have_coeff = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = Rational(read_integer());
        have_coeff = true;
        skip_ws();
        if (peek() == '*') {
          ++pos_;
          skip_ws();
          if (peek() != 'k') fail();
        }
      }
      int power = 0;
      if (peek() == 'k') {
        ++pos_;
        power = 1;
        skip_ws();
        if (peek() == '^') {
          ++pos_;
          skip_ws();
          if (!std::isdigit(static_cast<unsigned char>(peek()))) fail();
          power = static_cast<int>(read_integer().get_si());
        }
      } else if (!have_coeff) {
        fail();
      }
      std::vector<Rational> term(static_cast<std::size_t>(power) + 1, 0);
      term.back() = coeff * sign;
      acc += Polynomial(std::move(term));
      skip_ws();
      if (peek() != '+' && peek() != '-') break;
    }
    return acc;
  }

  mpz_class read_integer() {
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return mpz_class(std::string(s_.substr(start, pos_ - start)), 10);
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  [[noreturn]] void fail() const {
    throw std::invalid_argument("cannot parse scalar: '" + std::string(s_) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Scalar Scalar::parse(std::string_view text) { return PolyParser(text).parse_scalar(); }

}  // namespace bp
