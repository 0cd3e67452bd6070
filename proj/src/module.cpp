#include "bp/module.hpp"

namespace bp {

std::string_view name(ModuleKind kind) { return kind == ModuleKind::Verma ? "verma" : "vacuum"; }

std::string_view name(Status s) {
  switch (s) {
    case Status::Verified: return "verified";
    case Status::Mismatch: return "mismatch";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

int PbwMonomial::depth() const {
  int d = 0;
  for (const auto& f : factors) d += f.depth_change();
  return d;
}

int PbwMonomial::charge() const {
  int c = 0;
  for (const auto& f : factors) c += f.charge();
  return c;
}

std::string to_string(const PbwMonomial& m) {
  if (m.factors.empty()) return "|hw>";
  std::string out;
  for (const auto& f : m.factors) {
    out += to_string(f);
    out += ' ';
  }
  return out + "|hw>";
}

std::vector<ModeSymbol> raising_modes(RaisingSet set, int depth) {
  if (set == RaisingSet::Generators)
    return {ModeSymbol{Field::J, 1}, ModeSymbol{Field::L, 1}, ModeSymbol{Field::L, 2}, ModeSymbol{Field::Gplus, 1},
            ModeSymbol{Field::Gminus, 0}};
  std::vector<ModeSymbol> out;
  for (int n = 1; n <= depth; ++n)
    for (Field f : {Field::J, Field::L, Field::Gplus}) out.push_back(ModeSymbol{f, n});
  for (int n = 0; n <= depth; ++n) out.push_back(ModeSymbol{Field::Gminus, n});
  return out;
}

template class Module<Rational>;
template class Module<Scalar>;
template class QuotientState<Rational>;
template class QuotientState<Scalar>;

}  // namespace bp
