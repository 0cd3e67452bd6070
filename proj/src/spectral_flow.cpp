#include "bp/spectral_flow.hpp"

#include <stdexcept>

namespace bp {

namespace {

Scalar j_shift() { return -(2 * Scalar::k() + 3) / 3; }

}  // namespace

SpectralFlow::SpectralFlow(const BracketTable& brackets) : brackets_(brackets) {}

ModeExpression SpectralFlow::image_with(ModeSymbol s, const std::function<Scalar(int)>& t) const {
  ModeExpression e;
  switch (s.family) {
    case Field::J:
      e.add_mode(s, 1);
      if (s.index == 0) e.central = j_shift();
      return e;
    case Field::Gplus: return ModeExpression::mode({Field::Gplus, s.index - 1});
    case Field::Gminus: return ModeExpression::mode({Field::Gminus, s.index + 1});
    case Field::L:
      e.add_mode(s, 1);
      e.add_mode({Field::J, s.index}, -1);
      e.central = t(s.index);
      return e;
    default: throw std::invalid_argument("spectral flow: unsupported family " + std::string(name(s.family)));
  }
}

ModeExpression SpectralFlow::apply_with(const ModeExpression& e, const std::function<Scalar(int)>& t) const {
  ModeExpression out = ModeExpression::constant(e.central);
  for (const auto& [s, c] : e.linear) out += image_with(s, t) * c;
  const Scalar shift = j_shift();
  for (const auto& [l, c] : e.quadratic_jj) {
    out.add_jj(l, c);
    out.add_mode({Field::J, l}, 2 * shift * c);
    if (l == 0) out.central += shift * shift * c;
  }
  return out;
}

ModeExpression SpectralFlow::bracket(const ModeExpression& x, const ModeExpression& y) const {
  if (!x.quadratic_jj.empty() || !y.quadratic_jj.empty())
    throw std::logic_error("SpectralFlow::bracket: (J^2) terms unsupported");
  ModeExpression out;
  for (const auto& [a, ca] : x.linear)
    for (const auto& [b, cb] : y.linear) out += brackets_.bracket(a, b) * (ca * cb);
  return out;
}

Scalar SpectralFlow::constant(int n) const {
  {
    std::lock_guard lock(mutex_);
    if (auto it = constants_.find(n); it != constants_.end()) return it->second;
  }
  // [ψL_m, ψL_{n-m}] = (2m - n) ψ(L_n) + ...; pick m with 2m - n ≠ 0.
  const int m = (n + 2 != 0) ? n + 1 : n - 1;
  auto zero = [](int) { return Scalar(0); };
  const ModeExpression lhs = bracket(image_with({Field::L, m}, zero), image_with({Field::L, n - m}, zero));
  const ModeExpression rhs = apply_with(brackets_.bracket({Field::L, m}, {Field::L, n - m}), zero);
  const Scalar t = (lhs.central - rhs.central) / Scalar(2 * m - n);
  std::lock_guard lock(mutex_);
  constants_.emplace(n, t);
  return t;
}

ModeExpression SpectralFlow::image(ModeSymbol s) const {
  return image_with(s, [this](int n) { return constant(n); });
}

ModeExpression SpectralFlow::image(ModeSymbol s, int power) const {
  if (power < 0) throw std::invalid_argument("SpectralFlow::image: negative power");
  ModeExpression e = ModeExpression::mode(s);
  for (int i = 0; i < power; ++i) e = apply(e);
  return e;
}

ModeExpression SpectralFlow::apply(const ModeExpression& e) const {
  return apply_with(e, [this](int n) { return constant(n); });
}

SpectralFlow::Report SpectralFlow::check_automorphism(int lo, int hi) const {
  Report report;
  const Field gens[] = {Field::J, Field::Gplus, Field::Gminus, Field::L};
  for (Field fa : gens)
    for (Field fb : gens)
      for (int m = lo; m <= hi; ++m)
        for (int n = lo; n <= hi; ++n) {
          const ModeSymbol a{fa, m}, b{fb, n};
          const ModeExpression lhs = apply(brackets_.bracket(a, b));
          const ModeExpression rhs = bracket(image(a), image(b));
          ++report.checked;
          if (lhs != rhs)
            report.failures.push_back("psi[" + to_string(a) + "," + to_string(b) + "] = " + to_string(lhs) +
                                      " but [psi,psi] = " + to_string(rhs));
        }
  for (int n = lo; n <= hi; ++n) report.constants.emplace(n, constant(n));
  return report;
}

}  // namespace bp
