#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <thread>

#include "bp/spectral_flow.hpp"

using namespace bp;

namespace {

const Scalar k = Scalar::k();
const Scalar kappa = (2 * k + 3) / 3;

ModeSymbol J(int n) { return {Field::J, n}; }
ModeSymbol Gp(int n) { return {Field::Gplus, n}; }
ModeSymbol Gm(int n) { return {Field::Gminus, n}; }
ModeSymbol L(int n) { return {Field::L, n}; }
ModeExpression mode(ModeSymbol s, const Scalar& c = 1) { return ModeExpression::mode(s, c); }
ModeExpression constant(const Scalar& c) { return ModeExpression::constant(c); }

}  // namespace

TEST_CASE("OPE table entries") {
  const OpeTable t = OpeTable::published();
  const OpeEntry* jj = t.find(Field::J, Field::J);
  REQUIRE(jj);
  REQUIRE(jj->poles.size() == 1);
  CHECK(jj->poles.at(2) == FieldExpr{{kIdentityTerm, kappa}});
  REQUIRE(t.find(Field::Gplus, Field::Gplus));
  CHECK(t.find(Field::Gplus, Field::Gplus)->poles.empty());
  CHECK(t.find(Field::Gplus, Field::Gminus)->poles.at(3).at(kIdentityTerm) == (k + 1) * (2 * k + 3));
  CHECK(t.pole_bound(Field::T, Field::T) == 4);
}

TEST_CASE("commutator examples") {
  const OpeTable t = OpeTable::published();
  CHECK(commutator(t, Field::J, 1, Field::J, -1) == constant(kappa));
  for (int n = -2; n <= 2; ++n) CHECK(commutator(t, Field::J, 0, Field::Gplus, n) == mode(Gp(n)));
  ModeExpression want;
  want.add_jj(0, 3);
  want.add_mode(J(0), -(2 * k + 3));
  want.add_mode(L(0), -(k + 3));
  CHECK(to_L_basis(commutator(t, Field::Gplus, 0, Field::Gminus, 0)) == want);
  CHECK_THROWS_AS(commutator(t, Field::L, 0, Field::J, 0), MissingOpeError);

  std::vector<OpeEntry> entries = load_published_opes();
  std::erase_if(entries, [](const OpeEntry& e) {
    return (e.lhs == Field::T && e.rhs == Field::J) || (e.lhs == Field::J && e.rhs == Field::T);
  });
  CHECK_THROWS_AS(commutator(OpeTable(entries), Field::T, 1, Field::J, 0), MissingOpeError);
}

TEST_CASE("T_n in the L basis") {
  // (dJ)_(N) = -N J_(N-1) and T_n = L_n - (1/2)(dJ)_(n+1)
  for (int n = -3; n <= 3; ++n) {
    ModeExpression t;
    t.add_mode({Field::T, n}, 1);
    ModeExpression want = mode(L(n));
    want.add_mode(J(n), Scalar(Rational(n + 1)) / 2);
    CHECK(to_L_basis(t) == want);
  }
  CHECK(to_L_basis(mode(J(2), k)) == mode(J(2), k));
}

TEST_CASE("Virasoro from bilinear expansion") {
  const OpeTable t = OpeTable::published();
  const Scalar c = -4 * (k + 1) * (2 * k + 3) / (k + 3);
  auto raw = [&](Field a, int m, Field b, int n) { return to_L_basis(commutator(t, a, m, b, n)); };
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n) {
      const Scalar am = Scalar(Rational(m + 1)) / 2, an = Scalar(Rational(n + 1)) / 2;
      const ModeExpression lhs = raw(Field::T, m, Field::T, n) - raw(Field::T, m, Field::J, n) * an -
                                 raw(Field::J, m, Field::T, n) * am + raw(Field::J, m, Field::J, n) * (am * an);
      ModeExpression want = mode(L(m + n), Scalar(m - n));
      if (m + n == 0) want.central = c / 12 * Scalar(m * m * m - m);
      CHECK(lhs == want);
    }
}

TEST_CASE("bracket table against the published list") {
  const BracketTable table;
  const BracketReport report = verify_bracket_table(table, -3, 3);
  CHECK(report.ok());
  CHECK(report.families.size() == 10);
  for (const auto& f : report.families) CHECK(f.checked == 49);
  // Printed m(m+1)/2 differs from m(m-1)/2 exactly when m != 0 and m + n = 0.
  CHECK(report.printed_central.mismatches.size() == 6);
  CHECK(report.antisymmetry.mismatches.empty());
  CHECK(report.bookkeeping.mismatches.empty());

  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n) {
      CHECK(table.bracket(L(m), Gm(n)) == mode(Gm(m + n), Scalar(m - n)));
      CHECK(table.bracket(Gp(m), Gp(n)).is_zero());
      CHECK(table.bracket(Gm(m), Gm(n)).is_zero());
    }
}

TEST_CASE("bracket table is safe to share") {
  const BracketTable table;
  std::vector<ModeExpression> results(4);
  std::vector<std::thread> threads;
  for (int i = 0; i < 4; ++i)
    threads.emplace_back([&, i] {
      for (int m = -3; m <= 3; ++m)
        for (int n = -3; n <= 3; ++n) results[i] += table.bracket(Gp(m), Gm(n));
    });
  for (auto& th : threads) th.join();
  for (int i = 1; i < 4; ++i) CHECK(results[i] == results[0]);
}

TEST_CASE("spectral flow images") {
  const BracketTable table;
  const SpectralFlow psi(table);
  CHECK(psi.image(Gp(0)) == mode(Gp(-1)));
  CHECK(psi.image(Gm(0)) == mode(Gm(1)));
  CHECK(psi.image(J(1)) == mode(J(1)));
  CHECK(psi.image(J(0)) == mode(J(0)) - constant(kappa));
  CHECK(psi.image(L(0)) == mode(L(0)) - mode(J(0)) + constant(kappa));
  for (int n = -4; n <= 4; ++n)
    if (n != 0) CHECK(psi.constant(n).is_zero());
  CHECK(psi.image(L(2), 2) == mode(L(2)) - mode(J(2)) * 2);
  CHECK(psi.image(L(0), 2) == mode(L(0)) - mode(J(0)) * 2 + constant(3 * kappa));

  ModeExpression jj;
  jj.add_jj(0, 1);
  ModeExpression want = jj - mode(J(0), 2 * kappa) + constant(kappa * kappa);
  CHECK(psi.apply(jj) == want);

  const auto report = psi.check_automorphism(-3, 3);
  CHECK(report.ok());
  CHECK(report.checked > 0);
}

TEST_CASE("spectral flow detects a corrupted bracket") {
  OpeTable t = OpeTable::published();
  t.entry(Field::J, Field::J).poles.at(2).at(kIdentityTerm) = 2 * kappa;
  const BracketTable table(t);
  CHECK_FALSE(verify_bracket_table(table, -2, 2).ok());
}
