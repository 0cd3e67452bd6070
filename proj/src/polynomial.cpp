#include "bp/polynomial.hpp"

#include <stdexcept>

namespace bp {

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) coeffs_.push_back(c);
}

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::variable() { return Polynomial(std::vector<Rational>{0, 1}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

Rational Polynomial::leading() const { return is_zero() ? Rational(0) : coeffs_.back(); }

Rational Polynomial::evaluate(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& x : coeffs_) x *= c;
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.degree() < b.degree()) return {Polynomial{}, a};
  std::vector<Rational> rem = a.coeffs_;
  std::vector<Rational> quot(a.coeffs_.size() - b.coeffs_.size() + 1, 0);
  const Rational& lead = b.coeffs_.back();
  for (int i = a.degree() - b.degree(); i >= 0; --i) {
    const auto top = static_cast<std::size_t>(i + b.degree());
    if (rem[top] == 0) continue;
    Rational q = rem[top] / lead;
    quot[static_cast<std::size_t>(i)] = q;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) rem[static_cast<std::size_t>(i) + j] -= q * b.coeffs_[j];
  }
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial r = *this;
  r *= Rational(1) / leading();
  return r;
}

std::string Polynomial::to_integer_string() const {
  if (is_zero()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    if (!is_integer(c)) throw std::logic_error("to_integer_string: non-integer coefficient");
    mpz_class mag = abs(c.get_num());
    if (c < 0)
      out += "-";
    else if (!out.empty())
      out += "+";
    if (i == 0) {
      out += mag.get_str();
      continue;
    }
    if (mag != 1) out += mag.get_str() + "*";
    out += "k";
    if (i > 1) out += "^" + std::to_string(i);
  }
  return out;
}

}  // namespace bp
