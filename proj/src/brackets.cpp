#include "bp/brackets.hpp"

namespace bp {

namespace {

std::vector<std::pair<ModeSymbol, Scalar>> in_t_basis(ModeSymbol s) {
  if (s.family != Field::L) return {{s, Scalar(1)}};
  return {{ModeSymbol{Field::T, s.index}, Scalar(1)},
          {ModeSymbol{Field::J, s.index}, Scalar(frac(-(s.index + 1), 2))}};
}

const Field kGenerators[] = {Field::J, Field::Gplus, Field::Gminus, Field::L};

}  // namespace

BracketTable::BracketTable(OpeTable table) : table_(std::move(table)) {}

const ModeExpression& BracketTable::bracket(ModeSymbol a, ModeSymbol b) const {
  const auto key = std::make_pair(a, b);
  {
    std::lock_guard lock(mutex_);
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  ModeExpression value = compute(a, b);
  std::lock_guard lock(mutex_);
  return cache_.try_emplace(key, std::move(value)).first->second;
}

ModeExpression BracketTable::compute(ModeSymbol a, ModeSymbol b) const {
  ModeExpression out;
  for (const auto& [x, cx] : in_t_basis(a))
    for (const auto& [y, cy] : in_t_basis(b))
      out += commutator(table_, x.family, x.index, y.family, y.index) * (cx * cy);
  return to_L_basis(out);
}

Scalar central_charge_symbolic() {
  const Scalar k = Scalar::k();
  return Scalar(-4) * (k + 1) * (2 * k + 3) / (k + 3);
}

std::optional<ModeExpression> published_bracket(ModeSymbol a, ModeSymbol b, CentralReading reading) {
  const Scalar k = Scalar::k();
  const int m = a.index, n = b.index;
  const bool zero_sum = m + n == 0;
  auto delta = [&](const Scalar& c) { return zero_sum ? c : Scalar(0); };
  using F = Field;
  ModeExpression e;
  if (a.family == F::J && b.family == F::J) {
    e.central = delta((2 * k + 3) / 3 * Scalar(m));
  } else if (a.family == F::J && b.family == F::Gplus) {
    e.add_mode({F::Gplus, m + n}, 1);
  } else if (a.family == F::J && b.family == F::Gminus) {
    e.add_mode({F::Gminus, m + n}, -1);
  } else if (a.family == F::L && b.family == F::J) {
    e.add_mode({F::J, m + n}, Scalar(-n));
    e.central = delta(-(2 * k + 3) * Scalar((m + 1) * m) / 6);
  } else if (a.family == F::L && b.family == F::Gplus) {
    e.add_mode({F::Gplus, m + n}, Scalar(-n));
  } else if (a.family == F::L && b.family == F::Gminus) {
    e.add_mode({F::Gminus, m + n}, Scalar(m - n));
  } else if (a.family == F::Gplus && b.family == F::Gminus) {
    e.add_jj(m + n, 3);
    e.add_mode({F::J, m + n}, 3 * (k + 1) * Scalar(m) - (2 * k + 3) * Scalar(m + n + 1));
    e.add_mode({F::L, m + n}, -(k + 3));
    const int quadratic = reading == CentralReading::Printed ? m * (m + 1) : m * (m - 1);
    e.central = delta((k + 1) * (2 * k + 3) * Scalar(quadratic) / 2);
  } else if ((a.family == F::Gplus || a.family == F::Gminus) && a.family == b.family) {
    // G±(z)G±(w) ~ 0
  } else if (a.family == F::L && b.family == F::L) {
    e.add_mode({F::L, m + n}, Scalar(m - n));
    e.central = delta(central_charge_symbolic() / 12 * Scalar(m * m * m - m));
  } else {
    return std::nullopt;
  }
  return e;
}

bool BracketReport::ok() const {
  for (const auto& f : families)
    if (!f.ok()) return false;
  return antisymmetry.ok() && bookkeeping.ok();
}

BracketReport verify_bracket_table(const BracketTable& brackets, int lo, int hi) {
  using F = Field;
  BracketReport report;
  report.grid_lo = lo;
  report.grid_hi = hi;
  const std::pair<F, F> listed[] = {{F::J, F::J},         {F::J, F::Gplus},     {F::J, F::Gminus},
                                    {F::L, F::J},         {F::L, F::Gplus},     {F::L, F::Gminus},
                                    {F::Gplus, F::Gminus}, {F::Gplus, F::Gplus}, {F::Gminus, F::Gminus},
                                    {F::L, F::L}};
  auto describe = [](ModeSymbol a, ModeSymbol b, const ModeExpression& got, const ModeExpression& want) {
    return "[" + to_string(a) + "," + to_string(b) + "]: derived " + to_string(got) + " expected " +
           to_string(want);
  };
  for (const auto& [fa, fb] : listed) {
    CheckTally tally{"[" + std::string(name(fa)) + "_m," + std::string(name(fb)) + "_n]", 0, {}};
    for (int m = lo; m <= hi; ++m)
      for (int n = lo; n <= hi; ++n) {
        const ModeSymbol a{fa, m}, b{fb, n};
        const ModeExpression& got = brackets.bracket(a, b);
        const ModeExpression want = *published_bracket(a, b);
        ++tally.checked;
        if (got != want) tally.mismatches.push_back(describe(a, b, got, want));
        if (fa == F::Gplus && fb == F::Gminus) {
          const ModeExpression printed = *published_bracket(a, b, CentralReading::Printed);
          ++report.printed_central.checked;
          if (got != printed) report.printed_central.mismatches.push_back(describe(a, b, got, printed));
        }
      }
    report.families.push_back(std::move(tally));
  }

  const F raw[] = {F::J, F::Gplus, F::Gminus, F::T};
  for (F fa : raw)
    for (F fb : raw)
      for (int m = lo; m <= hi; ++m)
        for (int n = lo; n <= hi; ++n) {
          const ModeExpression sum = commutator(brackets.opes(), fa, m, fb, n) +
                                     commutator(brackets.opes(), fb, n, fa, m);
          ++report.antisymmetry.checked;
          if (!sum.is_zero())
            report.antisymmetry.mismatches.push_back("[" + to_string(ModeSymbol{fa, m}) + "," +
                                                     to_string(ModeSymbol{fb, n}) + "] + reverse = " +
                                                     to_string(sum));
        }

  for (F f : kGenerators)
    for (int n = lo; n <= hi; ++n) {
      const ModeSymbol s{f, n};
      const ModeExpression by_j = brackets.bracket({F::J, 0}, s);
      const ModeExpression by_l = brackets.bracket({F::L, 0}, s);
      report.bookkeeping.checked += 2;
      if (by_j != ModeExpression::mode(s, Scalar(charge(f))) && !(charge(f) == 0 && by_j.is_zero()))
        report.bookkeeping.mismatches.push_back("[J_0," + to_string(s) + "] = " + to_string(by_j));
      if (by_l != ModeExpression::mode(s, Scalar(-n)) && !(n == 0 && by_l.is_zero()))
        report.bookkeeping.mismatches.push_back("[L_0," + to_string(s) + "] = " + to_string(by_l));
    }

  report.conventions = {
      "internal modes A(z) = sum A_(n) z^{-n-1}; display J_n = J_(n), G+_n = G+_(n), G-_n = G-_(n+1), "
      "L_n = L_(n+1)",
      "(J^2)_l = (J_(-1)J)_(l+1) = sum_{a<=-1} J_a J_{l-a} + sum_{a>=0} J_{l-a} J_a; matches the "
      "published 3(J^2)_{m+n} with no extra zero-mode shift",
      "T_n = L_n + (n+1)/2 J_n from L = T + (1/2) dJ",
      "published G_n, F_n read as G+_n, G-_n",
      "[G+_m,G-_n] central term compared as (k+1)(2k+3) m(m-1)/2; the printed m(m+1)/2 is tallied "
      "separately"};
  return report;
}

}  // namespace bp
