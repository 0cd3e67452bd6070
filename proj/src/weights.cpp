#include "bp/weights.hpp"

#include <stdexcept>
#include <string>

namespace bp {

Level::Level(int p) : p_(p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("level: p must be odd and >= 3, got " + std::to_string(p));
}

HighestWeight specialize(const HighestWeight& hw, const Rational& k) {
  return {Scalar(hw.xi.specialize(k)), Scalar(hw.chi.specialize(k))};
}

Scalar g_fun(const Scalar& xi, const Scalar& chi, const Scalar& k) {
  return -(3 * xi * xi - (2 * k + 3) * xi - (k + 3) * chi);
}

Scalar h_averaged(int i, const Scalar& xi, const Scalar& chi, const Scalar& k) {
  if (i <= 0) throw std::invalid_argument("h_i requires i >= 1, got " + std::to_string(i));
  Scalar sum;
  for (int t = 0; t < i; ++t) sum += g_fun(xi + Scalar(t), chi, k);
  return sum / Scalar(i);
}

Scalar h_closed(int i, const Scalar& xi, const Scalar& chi, const Scalar& k) {
  if (i <= 0) throw std::invalid_argument("h_i requires i >= 1, got " + std::to_string(i));
  const Scalar n(i);
  return -n * n + k * n - 3 * xi * n + 3 * n - 3 * xi * xi - k + 2 * k * xi + 6 * xi + k * chi + 3 * chi - 2;
}

Scalar h_fun(int i, const Scalar& xi, const Scalar& chi, const Scalar& k) {
  Scalar averaged = h_averaged(i, xi, chi, k);
  if (averaged != h_closed(i, xi, chi, k))
    throw std::logic_error("h_" + std::to_string(i) + ": averaged and expanded forms disagree");
  return averaged;
}

std::vector<int> h_roots(const HighestWeight& hw, int cutoff, const Scalar& k) {
  std::vector<int> roots;
  for (int m = 1; m <= cutoff; ++m)
    if (h_fun(m, hw.xi, hw.chi, k).is_zero()) roots.push_back(m);
  return roots;
}

HighestWeight xi_chi(int i, int j, const Scalar& k) {
  if (i < 1 || j < 1) throw std::invalid_argument("xi_chi requires i, j >= 1");
  const Scalar si(i), sj(j);
  Scalar xi = (-2 * si - sj + 2 * k + 6) / 3;
  Scalar chi = (si * si + sj * si - k * si - 3 * si + sj * sj - 6 * sj - 2 * sj * k + 3 * k + 6) / (3 * (k + 3));
  return {xi, chi};
}

HighestWeight flow_weight(const HighestWeight& hw, int top_dim, const Scalar& k) {
  if (top_dim < 1) throw std::invalid_argument("flow_weight requires top_dim >= 1");
  const Scalar shift = (2 * k + 3) / 3;
  const Scalar top_charge = hw.xi + Scalar(top_dim - 1);
  return {top_charge - shift, hw.chi - top_charge + shift};
}

namespace {

using Matrix3 = std::array<std::array<Rational, 3>, 3>;

Matrix3 diag(Rational a, Rational b, Rational c) {
  Matrix3 m{};
  for (auto& row : m) row.fill(0);
  m[0][0] = a;
  m[1][1] = b;
  m[2][2] = c;
  return m;
}

Matrix3 combine(const Rational& x, const Matrix3& a, const Rational& y, const Matrix3& b) {
  Matrix3 m{};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) m[r][c] = x * a[r][c] + y * b[r][c];
  return m;
}

Rational trace_form(const Matrix3& a, const Matrix3& b) {
  Rational t = 0;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) t += a[r][c] * b[c][r];
  return t;
}

}  // namespace

std::array<std::array<Rational, 2>, 2> sl3_gram() {
  const Matrix3 h1 = diag(1, -1, 0);
  const Matrix3 h2 = diag(0, 1, -1);
  const std::array<Matrix3, 2> fundamental = {combine(frac(2, 3), h1, frac(1, 3), h2),
                                              combine(frac(1, 3), h1, frac(2, 3), h2)};
  std::array<std::array<Rational, 2>, 2> gram{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) gram[a][b] = trace_form(fundamental[a], fundamental[b]);
  return gram;
}

Rational inner(const Sl3Weight& a, const Sl3Weight& b) {
  static const auto gram = sl3_gram();
  const std::array<Rational, 2> x{a.a1, a.a2}, y{b.a1, b.a2};
  Rational s = 0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) s += x[r] * gram[r][c] * y[c];
  return s;
}

Sl3Weight admissible_weight(int i, int j, const Level& level) {
  const int p = level.p();
  if (i < 1 || i > p - 2 || j < 1 || j > p - i - 1)
    throw std::invalid_argument("admissible_weight: (i, j) outside 1<=i<=p-2, 1<=j<=p-i-1");
  return {Rational(i - 1), Rational(p - i - j - 1), level.k()};
}

Rational xi_from_weight(const Sl3Weight& lambda) { return inner(lambda, Sl3Weight{-1, 1, 0}); }

Rational chi_from_weight(const Sl3Weight& lambda) {
  const Sl3Weight shifted{lambda.a1 + 2, lambda.a2 + 2, lambda.level};
  return inner(lambda, shifted) / (2 * (lambda.level + 3)) - inner(lambda, Sl3Weight{0, 1, 0});
}

std::vector<SimpleModuleRecord> enumerate_simples(const Level& level) {
  const int p = level.p();
  const Scalar k(level.k());
  std::vector<SimpleModuleRecord> out;
  for (int i = 1; i <= p - 2; ++i)
    for (int j = 1; j <= p - i - 1; ++j) out.push_back({p, i, j, xi_chi(i, j, k), admissible_weight(i, j, level)});
  return out;
}

Scalar central_charge(const Scalar& k) {
  const Scalar den = k + 3;
  if (den.is_zero()) throw std::domain_error("central charge: critical level k = -3");
  return Scalar(-4) * (k + 1) * (2 * k + 3) / den;
}

Rational central_charge_from_p(const Level& level) {
  const int p = level.p();
  return Rational(-4 * (p - 4) * (p - 3)) / p;
}

}  // namespace bp
