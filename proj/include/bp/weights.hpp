#pragma once

#include <array>
#include <vector>

#include "bp/scalar.hpp"

namespace bp {

/// Exceptional level k = p/2 - 3, p odd and at least 3.
class Level {
 public:
  /// Throws std::invalid_argument unless p is odd and ≥ 3.
  explicit Level(int p);
  int p() const { return p_; }
  Rational k() const { return frac(p_, 2) - 3; }

 private:
  int p_;
};

/// (ξ, χ): J_0 and L_0 eigenvalues on a highest-weight vector.
template <class F>
struct BasicWeight {
  F xi{};
  F chi{};
  friend bool operator==(const BasicWeight&, const BasicWeight&) = default;
};
using HighestWeight = BasicWeight<Scalar>;

HighestWeight specialize(const HighestWeight& hw, const Rational& k);

/// a1 Λ̄_1 + a2 Λ̄_2 + level Λ_0.
struct Sl3Weight {
  Rational a1;
  Rational a2;
  Rational level;
  friend bool operator==(const Sl3Weight&, const Sl3Weight&) = default;
};

struct SimpleModuleRecord {
  int p = 0;
  int i = 0;
  int j = 0;
  HighestWeight hw;
  Sl3Weight lambda;
};

/// g(ξ,χ) = -(3ξ² - (2k+3)ξ - (k+3)χ), the eigenvalue of G-_0 G+_0 on |ξ,χ⟩.
Scalar g_fun(const Scalar& xi, const Scalar& chi, const Scalar& k = Scalar::k());

/// h_i as the average (1/i) Σ_{t<i} g(ξ+t, χ).
Scalar h_averaged(int i, const Scalar& xi, const Scalar& chi, const Scalar& k = Scalar::k());
/// h_i from the expanded closed form -i²+ki-3ξi+3i-3ξ²-k+2kξ+6ξ+kχ+3χ-2.
Scalar h_closed(int i, const Scalar& xi, const Scalar& chi, const Scalar& k = Scalar::k());
/// h_i; evaluates both forms and throws std::logic_error if they disagree.
/// Throws std::invalid_argument for i ≤ 0.
Scalar h_fun(int i, const Scalar& xi, const Scalar& chi, const Scalar& k = Scalar::k());

/// Values m in [1, cutoff] with h_m(ξ, χ) = 0.
std::vector<int> h_roots(const HighestWeight& hw, int cutoff, const Scalar& k = Scalar::k());

/// (ξ_{i,j}, χ_{i,j}): the weight whose top space is i-dimensional and whose
/// spectral-flow image has a j-dimensional top space.
HighestWeight xi_chi(int i, int j, const Scalar& k = Scalar::k());

/// Highest weight of the spectral-flow twist of L(ξ,χ) with top dimension i:
/// (ξ + i - 1 - (2k+3)/3, χ - (ξ + i - 1) + (2k+3)/3).
HighestWeight flow_weight(const HighestWeight& hw, int top_dim, const Scalar& k = Scalar::k());

/// (Λ̄_a | Λ̄_b) from the trace form on 3×3 matrices.
std::array<std::array<Rational, 2>, 2> sl3_gram();
/// Inner product of the finite parts (Λ_0 is orthogonal to them and isotropic).
Rational inner(const Sl3Weight& a, const Sl3Weight& b);

/// λ_{i,j} = (i-1)Λ̄_1 + (p-i-j-1)Λ̄_2 + kΛ_0.
Sl3Weight admissible_weight(int i, int j, const Level& level);
/// (λ | -Λ̄_1 + Λ̄_2).
Rational xi_from_weight(const Sl3Weight& lambda);
/// (λ | λ + 2ρ̄) / (2(k+3)) - (λ | Λ̄_2), with k the level of λ.
Rational chi_from_weight(const Sl3Weight& lambda);

/// All (i, j) with 1 ≤ i ≤ p-2, 1 ≤ j ≤ p-i-1, sorted by (i, j).
std::vector<SimpleModuleRecord> enumerate_simples(const Level& level);

/// c(k) = -4(k+1)(2k+3)/(k+3). Throws std::domain_error at k = -3.
Scalar central_charge(const Scalar& k);
/// The p-form -4(p-4)(p-3)/p.
Rational central_charge_from_p(const Level& level);

}  // namespace bp
