#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "bp/weights.hpp"

using namespace bp;

namespace {

// Independent rational-valued oracle, written from the defining sums.
Rational g_oracle(const Rational& xi, const Rational& chi, const Rational& k) {
  return -(3 * xi * xi - (2 * k + 3) * xi - (k + 3) * chi);
}

Rational h_oracle(int i, const Rational& xi, const Rational& chi, const Rational& k) {
  Rational sum = 0;
  for (int t = 0; t < i; ++t) sum += g_oracle(xi + t, chi, k);
  return sum / i;
}

Scalar S(const Rational& q) { return Scalar(q); }

}  // namespace

TEST_CASE("g and h") {
  const Rational k = frac(-1, 2);
  CHECK(g_fun(0, 0).is_zero());
  CHECK(g_fun(S(frac(2, 3)), 0, S(k)).is_zero());
  const Scalar xi = Scalar::parse("(k+1)/(3)"), chi = Scalar::parse("(k^2)/(k+4)");
  CHECK(h_fun(1, xi, chi) == g_fun(xi, chi));
  for (int i = 1; i <= 8; ++i)
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b) {
        const Rational x = frac(a, 3), c = frac(b, 5), kv = frac(2 * i - 7, 2);
        CHECK(h_averaged(i, S(x), S(c), S(kv)).constant_value() == h_oracle(i, x, c, kv));
        CHECK(h_closed(i, S(x), S(c), S(kv)).constant_value() == h_oracle(i, x, c, kv));
        CHECK(h_averaged(i, S(x), S(c)) == h_closed(i, S(x), S(c)));
      }
  CHECK_THROWS_AS(h_fun(0, 0, 0), std::invalid_argument);
}

TEST_CASE("level") {
  CHECK(Level(5).k() == frac(-1, 2));
  CHECK_THROWS_AS(Level(4), std::invalid_argument);
  CHECK_THROWS_AS(Level(1), std::invalid_argument);
}

TEST_CASE("xi_chi examples") {
  for (int p : {3, 5, 7, 9, 11}) CHECK(specialize(xi_chi(1, p - 2), Level(p).k()) == HighestWeight{0, 0});
  const Rational k = Level(5).k();
  CHECK(specialize(xi_chi(1, 1), k) == HighestWeight{S(frac(2, 3)), 0});
  CHECK(specialize(xi_chi(1, 3), k) == HighestWeight{0, 0});
  CHECK_THROWS_AS(xi_chi(0, 1), std::invalid_argument);
}

TEST_CASE("flow weight") {
  const Rational k = Level(5).k();
  CHECK(flow_weight({S(frac(2, 3)), 0}, 1, S(k)) == HighestWeight{0, 0});
  const Scalar kk = Scalar::k(), kappa = (2 * kk + 3) / 3;
  for (int i = 1; i <= 4; ++i)
    CHECK(flow_weight({0, 0}, i) == HighestWeight{Scalar(i - 1) - kappa, Scalar(i - 1) * -1 + kappa});
  for (int i = 1; i <= 5; ++i)
    for (int j = 1; j <= 5; ++j)
      CHECK(flow_weight(xi_chi(i, j), i).xi == Scalar(frac(i - j, 3)));
}

TEST_CASE("root properties, and the two printed variants that fail them") {
  int printed_chi_failures = 0, half_shift_failures = 0;
  for (int p : {3, 5, 7, 9}) {
    const Level level(p);
    const Rational k = level.k();
    const Rational kappa = (2 * k + 3) / 3;
    for (const auto& r : enumerate_simples(level)) {
      const HighestWeight hw = specialize(r.hw, k);
      const Rational xi = hw.xi.constant_value(), chi = hw.chi.constant_value();
      CHECK(h_oracle(r.i, xi, chi, k) == 0);
      const HighestWeight f = flow_weight(hw, r.i, S(k));
      CHECK(h_oracle(r.j, f.xi.constant_value(), f.chi.constant_value(), k) == 0);
      // Bound in the classification argument: flowed xi <= (p - 2j - 1)/3.
      CHECK(f.xi.constant_value() <= frac(p - 2 * r.j - 1, 3));
      // chi - (xi - i + 1) + kappa, as printed.
      if (h_oracle(r.j, xi + r.i - 1 - kappa, chi - (xi - r.i + 1) + kappa, k) != 0) ++printed_chi_failures;
    }
    // h_{p-2} at the flowed vacuum, with the shift (2k+3)/2 as printed in the proof.
    const Rational half = (2 * k + 3) / 2;
    CHECK(h_oracle(p - 2, -kappa, kappa, k) == 0);
    if (h_oracle(p - 2, -half, kappa, k) != 0) ++half_shift_failures;
  }
  CHECK(printed_chi_failures > 0);
  CHECK(half_shift_failures > 0);
}

TEST_CASE("h roots") {
  const Rational k = Level(5).k();
  CHECK(h_roots(specialize(xi_chi(3, 1), k), 5, S(k)) == std::vector<int>{3});
  CHECK(h_roots({S(frac(2, 3)), 0}, 5, S(k)).front() == 1);
}

TEST_CASE("sl3 weights") {
  const auto gram = sl3_gram();
  CHECK(gram[0][0] == frac(2, 3));
  CHECK(gram[0][1] == frac(1, 3));
  CHECK(gram[1][0] == frac(1, 3));
  CHECK(gram[1][1] == frac(2, 3));
  const Level five(5);
  const Sl3Weight l11 = admissible_weight(1, 1, five);
  CHECK(l11 == Sl3Weight{0, 2, frac(-1, 2)});
  CHECK(xi_from_weight(l11) == frac(2, 3));
  const Sl3Weight l13 = admissible_weight(1, 3, five);
  CHECK(l13 == Sl3Weight{0, 0, frac(-1, 2)});
  CHECK(xi_from_weight(l13) == 0);
  CHECK(chi_from_weight(l13) == 0);
  CHECK_THROWS_AS(admissible_weight(3, 2, five), std::invalid_argument);
  for (int p : {3, 5, 7, 9})
    for (const auto& r : enumerate_simples(Level(p))) {
      const HighestWeight hw = specialize(r.hw, Level(p).k());
      CHECK(xi_from_weight(r.lambda) == hw.xi.constant_value());
      CHECK(chi_from_weight(r.lambda) == hw.chi.constant_value());
    }
}

TEST_CASE("classification tables") {
  const std::size_t expected[] = {1, 6, 15, 28};
  int n = 0;
  for (int p : {3, 5, 7, 9}) {
    const auto records = enumerate_simples(Level(p));
    CHECK(records.size() == expected[n++]);
    std::set<std::pair<Rational, Rational>> seen;
    for (const auto& r : records) {
      const HighestWeight hw = specialize(r.hw, Level(p).k());
      seen.emplace(hw.xi.constant_value(), hw.chi.constant_value());
      CHECK(r.i >= 1);
      CHECK(r.j >= 1);
      CHECK(r.i + r.j <= p - 1);
    }
    CHECK(seen.size() == records.size());
  }
  const auto p3 = enumerate_simples(Level(3));
  CHECK(p3.front().i == 1);
  CHECK(p3.front().j == 1);
  CHECK(specialize(p3.front().hw, Level(3).k()) == HighestWeight{0, 0});
}

TEST_CASE("central charge") {
  CHECK(central_charge_from_p(Level(3)) == 0);
  CHECK(central_charge_from_p(Level(5)) == frac(-8, 5));
  CHECK(central_charge_from_p(Level(7)) == frac(-48, 7));
  for (int p = 3; p <= 15; p += 2)
    CHECK(central_charge(S(Level(p).k())).constant_value() == central_charge_from_p(Level(p)));
  CHECK_THROWS_AS(central_charge(S(Rational(-3))), std::domain_error);
}
