#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bp/mode_expression.hpp"
#include "bp/scalar.hpp"

namespace bp {

/// A field together with a number of z-derivatives applied to it. The OPE
/// data and its locality swap produce ∂T, ∂G±, ∂²J, ∂:J²:, so derivatives are
/// a property of the term rather than separate field ids.
struct FieldTerm {
  Field field = Field::Identity;
  int derivs = 0;
  friend auto operator<=>(const FieldTerm&, const FieldTerm&) = default;
};

inline constexpr FieldTerm kIdentityTerm{Field::Identity, 0};
inline constexpr FieldTerm kDJ{Field::J, 1};

/// Scalar-linear combination of (derivatives of) fields; never stores zeros.
using FieldExpr = std::map<FieldTerm, Scalar>;

void add_term(FieldExpr& e, FieldTerm t, const Scalar& c);
FieldExpr derivative(const FieldExpr& e);
std::string to_string(const FieldExpr& e);

/// Singular part of A(z)B(w): `poles[j + 1]` is the coefficient of (z-w)^{-j-1},
/// i.e. the product A_(j)B.
struct OpeEntry {
  Field lhs = Field::Identity;
  Field rhs = Field::Identity;
  std::map<int, FieldExpr> poles;
};

/// The defining OPEs of W_3^(2) with the (z-2) misprint in J(z)J(w) read as
/// (z-w). Includes the two vanishing entries G±(z)G±(w) ~ 0.
std::vector<OpeEntry> load_published_opes();

class MissingOpeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class OpeTable {
 public:
  explicit OpeTable(std::vector<OpeEntry> entries);
  static OpeTable published() { return OpeTable(load_published_opes()); }

  const OpeEntry* find(Field a, Field b) const;
  /// Mutable access, used for fault injection in verification runs.
  OpeEntry& entry(Field a, Field b);
  const std::vector<OpeEntry>& entries() const { return entries_; }

  /// The j-th product A_(j)B. Pairs only tabulated as (B, A) use the
  /// skew-symmetry A_(j)B = Σ_i (-1)^{j+i+1} ∂^{(i)}(B_(j+i)A) (all fields even).
  /// Throws MissingOpeError if neither order is tabulated.
  FieldExpr product(Field a, int j, Field b) const;
  /// One past the highest j with A_(j)B possibly nonzero.
  int pole_bound(Field a, Field b) const;

 private:
  std::vector<OpeEntry> entries_;
};

/// Mode (∂^r A)_(N) in the internal convention A(z) = Σ A_(N) z^{-N-1},
/// rewritten into display modes: (∂A)_(N) = -N A_(N-1), 1_(N) = δ_{N,-1}.
ModeExpression field_mode(FieldTerm term, int internal_index);

/// [A_m, B_n] for A, B ∈ {J, G+, G-, T}, display indices, via the Borcherds
/// commutator formula [A_(m), B_(n)] = Σ_j C(m, j) (A_(j)B)_(m+n-j).
/// The result may contain T modes.
ModeExpression commutator(const OpeTable& table, Field a, int m, Field b, int n);

/// Replaces T_n by L_n + (n+1)/2 J_n, from L(z) = T(z) + ½∂J(z).
ModeExpression to_L_basis(const ModeExpression& expr);

/// Generalized binomial C(m, j) for any integer m and j ≥ 0.
Rational binomial(int m, int j);

}  // namespace bp
