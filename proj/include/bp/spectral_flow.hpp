#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "bp/brackets.hpp"

namespace bp {

/// The spectral-flow automorphism ψ induced by Δ(-J, z):
///   ψ(J_n) = J_n - (2k+3)/3 δ_{n,0},  ψ(G+_n) = G+_{n-1},  ψ(G-_n) = G-_{n+1},
///   ψ(L_n) = L_n - J_n + t_n.
/// The constants t_n are not taken from a closed form: constant(n) solves the
/// automorphism constraint ψ[L_m, L_{n-m}] = [ψL_m, ψL_{n-m}] for them.
class SpectralFlow {
 public:
  explicit SpectralFlow(const BracketTable& brackets);

  Scalar constant(int n) const;

  /// ψ(s) for s a J, G+, G- or L mode (spectral_flow_mode).
  ModeExpression image(ModeSymbol s) const;
  /// ψ^power(s), power ≥ 0.
  ModeExpression image(ModeSymbol s, int power) const;
  /// ψ extended linearly; (J^2)_l ↦ (J^2)_l + 2c J_l + c² δ_{l,0} with c the
  /// constant in ψ(J_0).
  ModeExpression apply(const ModeExpression& e) const;

  /// Bilinear bracket of two expressions without (J^2) terms; constants are
  /// central and drop out.
  ModeExpression bracket(const ModeExpression& x, const ModeExpression& y) const;

  struct Report {
    int checked = 0;
    std::vector<std::string> failures;
    std::map<int, Scalar> constants;
    bool ok() const { return failures.empty(); }
  };
  /// ψ([A_m, B_n]) == [ψ(A_m), ψ(B_n)] for all generator pairs, m, n ∈ [lo, hi].
  Report check_automorphism(int lo, int hi) const;

 private:
  ModeExpression apply_with(const ModeExpression& e, const std::function<Scalar(int)>& t) const;
  ModeExpression image_with(ModeSymbol s, const std::function<Scalar(int)>& t) const;

  const BracketTable& brackets_;
  mutable std::mutex mutex_;
  mutable std::map<int, Scalar> constants_;
};

}  // namespace bp
