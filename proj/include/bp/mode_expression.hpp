#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>

#include "bp/scalar.hpp"

namespace bp {

/// Generating fields plus the composites that appear in OPE right-hand sides.
/// JJ is the normally ordered :J(z)^2:.
enum class Field { Identity, J, Gplus, Gminus, T, L, JJ };

std::string_view name(Field f);
/// Parses "J", "G+", "G-", "T", "L". Throws std::invalid_argument otherwise.
Field parse_field(std::string_view s);

/// Conformal weight with respect to L = T + ½∂J.
int conformal_weight(Field f);
/// J_0 charge.
int charge(Field f);
/// Offset between the display index of the published expansions and the
/// internal index: A_(n + shift) = A_n. 0 for J, G+; 1 for G-, T, L, JJ.
int display_shift(Field f);

/// Rank of a family in PBW monomials: J < L < G+ < G-.
int pbw_rank(Field f);

/// A generator mode with its display index (J_n, G+_n, G-_n, L_n, T_n).
struct ModeSymbol {
  Field family = Field::J;
  int index = 0;

  friend bool operator==(const ModeSymbol&, const ModeSymbol&) = default;
  friend std::strong_ordering operator<=>(const ModeSymbol& a, const ModeSymbol& b) {
    if (auto c = pbw_rank(a.family) <=> pbw_rank(b.family); c != 0) return c;
    return a.index <=> b.index;
  }

  /// L_0 degree lowered by this mode (display index).
  int depth_change() const { return -index; }
  int charge() const { return bp::charge(family); }
};

std::string to_string(const ModeSymbol& s);

/// Finite combination of generator modes, modes (J^2)_l of :J^2: (display
/// index, (J^2)_l = (:JJ:)_(l+1)), and a central constant. Zero coefficients
/// are never stored.
template <class F>
struct BasicModeExpression {
  std::map<ModeSymbol, F> linear;
  std::map<int, F> quadratic_jj;
  F central{};

  static BasicModeExpression mode(ModeSymbol s, const F& c = F(1)) {
    BasicModeExpression e;
    e.add_mode(s, c);
    return e;
  }
  static BasicModeExpression constant(const F& c) {
    BasicModeExpression e;
    e.central = c;
    return e;
  }

  void add_mode(ModeSymbol s, const F& c) { accumulate(linear, s, c); }
  void add_jj(int l, const F& c) { accumulate(quadratic_jj, l, c); }

  bool is_zero() const { return linear.empty() && quadratic_jj.empty() && bp::is_zero(central); }

  BasicModeExpression& operator+=(const BasicModeExpression& o) {
    for (const auto& [s, c] : o.linear) add_mode(s, c);
    for (const auto& [l, c] : o.quadratic_jj) add_jj(l, c);
    central += o.central;
    return *this;
  }
  BasicModeExpression& operator-=(const BasicModeExpression& o) {
    for (const auto& [s, c] : o.linear) add_mode(s, -c);
    for (const auto& [l, c] : o.quadratic_jj) add_jj(l, -c);
    central -= o.central;
    return *this;
  }
  BasicModeExpression& operator*=(const F& c) {
    if (bp::is_zero(c)) return *this = BasicModeExpression{};
    for (auto& [s, x] : linear) x *= c;
    for (auto& [l, x] : quadratic_jj) x *= c;
    central *= c;
    return *this;
  }
  friend BasicModeExpression operator+(BasicModeExpression a, const BasicModeExpression& b) { return a += b; }
  friend BasicModeExpression operator-(BasicModeExpression a, const BasicModeExpression& b) { return a -= b; }
  friend BasicModeExpression operator*(BasicModeExpression a, const F& c) { return a *= c; }
  friend bool operator==(const BasicModeExpression&, const BasicModeExpression&) = default;

  F coefficient(ModeSymbol s) const {
    auto it = linear.find(s);
    return it == linear.end() ? F(0) : it->second;
  }
  F jj_coefficient(int l) const {
    auto it = quadratic_jj.find(l);
    return it == quadratic_jj.end() ? F(0) : it->second;
  }

  /// Coefficient-wise conversion, dropping terms that become zero.
  template <class G, class Fn>
  BasicModeExpression<G> map(Fn&& fn) const {
    BasicModeExpression<G> out;
    for (const auto& [s, c] : linear) out.add_mode(s, fn(c));
    for (const auto& [l, c] : quadratic_jj) out.add_jj(l, fn(c));
    out.central = fn(central);
    return out;
  }

 private:
  template <class Key>
  static void accumulate(std::map<Key, F>& m, const Key& key, const F& c) {
    if (bp::is_zero(c)) return;
    auto [it, inserted] = m.try_emplace(key, c);
    if (inserted) return;
    it->second += c;
    if (bp::is_zero(it->second)) m.erase(it);
  }
};

using ModeExpression = BasicModeExpression<Scalar>;

std::string to_string(const ModeExpression& e);

}  // namespace bp
