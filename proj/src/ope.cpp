#include "bp/ope.hpp"

#include <algorithm>

namespace bp {

std::string_view name(Field f) {
  switch (f) {
    case Field::Identity: return "1";
    case Field::J: return "J";
    case Field::Gplus: return "G+";
    case Field::Gminus: return "G-";
    case Field::T: return "T";
    case Field::L: return "L";
    case Field::JJ: return "(J^2)";
  }
  return "?";
}

Field parse_field(std::string_view s) {
  for (Field f : {Field::J, Field::Gplus, Field::Gminus, Field::T, Field::L})
    if (name(f) == s) return f;
  throw std::invalid_argument("unknown field '" + std::string(s) + "'");
}

int conformal_weight(Field f) {
  switch (f) {
    case Field::Identity: return 0;
    case Field::J:
    case Field::Gplus: return 1;
    case Field::Gminus:
    case Field::T:
    case Field::L:
    case Field::JJ: return 2;
  }
  return 0;
}

int charge(Field f) {
  if (f == Field::Gplus) return 1;
  if (f == Field::Gminus) return -1;
  return 0;
}

int display_shift(Field f) { return conformal_weight(f) == 2 ? 1 : 0; }

int pbw_rank(Field f) {
  switch (f) {
    case Field::J: return 0;
    case Field::L: return 1;
    case Field::Gplus: return 2;
    case Field::Gminus: return 3;
    case Field::T: return 4;
    case Field::JJ: return 5;
    case Field::Identity: return 6;
  }
  return 7;
}

std::string to_string(const ModeSymbol& s) {
  return std::string(name(s.family)) + "_{" + std::to_string(s.index) + "}";
}

std::string to_string(const ModeExpression& e) {
  std::string out;
  auto append = [&](const Scalar& c, const std::string& what) {
    if (!out.empty()) out += " + ";
    out += c.to_string();
    if (!what.empty()) out += "*" + what;
  };
  for (const auto& [s, c] : e.linear) append(c, to_string(s));
  for (const auto& [l, c] : e.quadratic_jj) append(c, "(J^2)_{" + std::to_string(l) + "}");
  if (!e.central.is_zero()) append(e.central, "");
  return out.empty() ? "0" : out;
}

void add_term(FieldExpr& e, FieldTerm t, const Scalar& c) {
  if (c.is_zero()) return;
  if (t.field == Field::Identity && t.derivs > 0) return;
  auto [it, inserted] = e.try_emplace(t, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) e.erase(it);
}

FieldExpr derivative(const FieldExpr& e) {
  FieldExpr out;
  for (const auto& [t, c] : e) add_term(out, FieldTerm{t.field, t.derivs + 1}, c);
  return out;
}

std::string to_string(const FieldExpr& e) {
  if (e.empty()) return "0";
  std::string out;
  for (const auto& [t, c] : e) {
    if (!out.empty()) out += " + ";
    out += c.to_string() + "*";
    for (int i = 0; i < t.derivs; ++i) out += "d";
    out += name(t.field);
  }
  return out;
}

std::vector<OpeEntry> load_published_opes() {
  const Scalar k = Scalar::k();
  const Scalar two_k_3 = 2 * k + 3;
  std::vector<OpeEntry> out;
  auto entry = [&](Field a, Field b, std::map<int, FieldExpr> poles) {
    out.push_back(OpeEntry{a, b, std::move(poles)});
  };
  auto single = [](FieldTerm t, const Scalar& c) {
    FieldExpr e;
    add_term(e, t, c);
    return e;
  };
  const FieldTerm J{Field::J, 0}, Gp{Field::Gplus, 0}, Gm{Field::Gminus, 0}, T{Field::T, 0};

  entry(Field::J, Field::J, {{2, single(kIdentityTerm, two_k_3 / 3)}});
  entry(Field::J, Field::Gplus, {{1, single(Gp, 1)}});
  entry(Field::J, Field::Gminus, {{1, single(Gm, -1)}});
  entry(Field::Gplus, Field::Gplus, {});
  entry(Field::Gminus, Field::Gminus, {});
  entry(Field::T, Field::T,
        {{4, single(kIdentityTerm, -(two_k_3 * (3 * k + 1)) / (2 * (k + 3)))},
         {2, single(T, 2)},
         {1, single(FieldTerm{Field::T, 1}, 1)}});
  entry(Field::T, Field::Gplus,
        {{2, single(Gp, Scalar(frac(3, 2)))}, {1, single(FieldTerm{Field::Gplus, 1}, 1)}});
  entry(Field::T, Field::Gminus,
        {{2, single(Gm, Scalar(frac(3, 2)))}, {1, single(FieldTerm{Field::Gminus, 1}, 1)}});
  entry(Field::T, Field::J, {{2, single(J, 1)}, {1, single(kDJ, 1)}});

  FieldExpr simple_pole;
  add_term(simple_pole, FieldTerm{Field::JJ, 0}, 3);
  add_term(simple_pole, kDJ, Scalar(3) * (k + 1) / 2);
  add_term(simple_pole, T, -(k + 3));
  entry(Field::Gplus, Field::Gminus,
        {{3, single(kIdentityTerm, (k + 1) * two_k_3)}, {2, single(J, 3 * (k + 1))}, {1, simple_pole}});
  return out;
}

OpeTable::OpeTable(std::vector<OpeEntry> entries) : entries_(std::move(entries)) {}

const OpeEntry* OpeTable::find(Field a, Field b) const {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const OpeEntry& e) { return e.lhs == a && e.rhs == b; });
  return it == entries_.end() ? nullptr : &*it;
}

OpeEntry& OpeTable::entry(Field a, Field b) {
  auto it = std::find_if(entries_.begin(), entries_.end(),
                         [&](const OpeEntry& e) { return e.lhs == a && e.rhs == b; });
  if (it == entries_.end())
    throw MissingOpeError("no OPE entry for " + std::string(name(a)) + "(z)" + std::string(name(b)) + "(w)");
  return *it;
}

namespace {

int max_pole(const OpeEntry& e) { return e.poles.empty() ? 0 : e.poles.rbegin()->first; }

FieldExpr direct_product(const OpeEntry& e, int j) {
  auto it = e.poles.find(j + 1);
  return it == e.poles.end() ? FieldExpr{} : it->second;
}

}  // namespace

int OpeTable::pole_bound(Field a, Field b) const {
  if (const auto* e = find(a, b)) return max_pole(*e);
  if (const auto* e = find(b, a)) return max_pole(*e);
  throw MissingOpeError("no OPE entry for " + std::string(name(a)) + "(z)" + std::string(name(b)) + "(w)");
}

FieldExpr OpeTable::product(Field a, int j, Field b) const {
  if (const auto* e = find(a, b)) return direct_product(*e, j);
  const auto* swapped = find(b, a);
  if (swapped == nullptr)
    throw MissingOpeError("no OPE entry for " + std::string(name(a)) + "(z)" + std::string(name(b)) + "(w)");
  FieldExpr out;
  Rational inv_factorial = 1;
  for (int i = 0; j + i < max_pole(*swapped); ++i) {
    if (i > 0) inv_factorial /= i;
    FieldExpr term = direct_product(*swapped, j + i);
    for (int d = 0; d < i; ++d) term = derivative(term);
    const Scalar sign = ((j + i + 1) % 2 == 0) ? 1 : -1;
    for (const auto& [t, c] : term) add_term(out, t, c * sign * Scalar(inv_factorial));
  }
  return out;
}

Rational binomial(int m, int j) {
  Rational r = 1;
  for (int i = 0; i < j; ++i) r = r * (m - i) / (i + 1);
  return r;
}

ModeExpression field_mode(FieldTerm term, int internal_index) {
  Rational factor = 1;
  for (int i = 0; i < term.derivs; ++i) factor *= -(internal_index - i);
  if (factor == 0) return {};
  const int base = internal_index - term.derivs;
  ModeExpression out;
  switch (term.field) {
    case Field::Identity:
      if (term.derivs == 0 && base == -1) out.central = 1;
      return out;
    case Field::JJ:
      out.add_jj(base - display_shift(Field::JJ), Scalar(factor));
      return out;
    default:
      out.add_mode(ModeSymbol{term.field, base - display_shift(term.field)}, Scalar(factor));
      return out;
  }
}

ModeExpression commutator(const OpeTable& table, Field a, int m, Field b, int n) {
  for (Field f : {a, b})
    if (f != Field::J && f != Field::Gplus && f != Field::Gminus && f != Field::T)
      throw MissingOpeError("commutator: " + std::string(name(f)) + " is not a generating field");
  const int mi = m + display_shift(a);
  const int ni = n + display_shift(b);
  ModeExpression out;
  for (int j = 0; j < table.pole_bound(a, b); ++j) {
    const Rational c = binomial(mi, j);
    if (c == 0) continue;
    for (const auto& [term, coeff] : table.product(a, j, b))
      out += field_mode(term, mi + ni - j) * (coeff * Scalar(c));
  }
  return out;
}

ModeExpression to_L_basis(const ModeExpression& expr) {
  ModeExpression out;
  out.quadratic_jj = expr.quadratic_jj;
  out.central = expr.central;
  for (const auto& [s, c] : expr.linear) {
    if (s.family != Field::T) {
      out.add_mode(s, c);
      continue;
    }
    // T_(N) = L_(N) - ½(∂J)_(N) = L_(N) + ½ N J_(N-1), with N = n + 1.
    out.add_mode(ModeSymbol{Field::L, s.index}, c);
    out.add_mode(ModeSymbol{Field::J, s.index}, c * Scalar(frac(s.index + 1, 2)));
  }
  return out;
}

}  // namespace bp
