#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bp/brackets.hpp"
#include "bp/linalg.hpp"
#include "bp/spectral_flow.hpp"
#include "bp/weights.hpp"

namespace bp {

/// Verma: cyclic vector |ξ,χ⟩ killed by J_n, L_n, G+_n (n ≥ 1) and G-_n (n ≥ 0),
/// with G+_0 acting freely. Vacuum: the universal algebra W^k itself, the cyclic
/// vector additionally killed by G+_0, L_{-1}, G-_{-1}.
enum class ModuleKind { Verma, Vacuum };

std::string_view name(ModuleKind kind);

/// Ordered product of creation modes applied to the cyclic vector; factors are
/// non-decreasing in ModeSymbol order (J < L < G+ < G-, index ascending), so
/// the rightmost factor acts first.
struct PbwMonomial {
  std::vector<ModeSymbol> factors;

  int depth() const;
  int charge() const;
  friend auto operator<=>(const PbwMonomial&, const PbwMonomial&) = default;
};

std::string to_string(const PbwMonomial& m);

/// (J_0 charge offset, L_0 depth) relative to the cyclic vector.
struct BlockKey {
  int charge = 0;
  int depth = 0;
  friend auto operator<=>(const BlockKey&, const BlockKey&) = default;
};

/// Blocks reported by a computation: depth ≤ max_depth, |charge| ≤ charge_window.
struct Truncation {
  int max_depth = 0;
  int charge_window = 0;
  bool contains(BlockKey b) const {
    return b.depth >= 0 && b.depth <= max_depth && b.charge >= -charge_window && b.charge <= charge_window;
  }
};

class TruncationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Coefficient field of a module computation. Rational modules fix k = k0;
/// Scalar modules keep k symbolic.
template <class F>
struct CoefficientField;

template <>
struct CoefficientField<Rational> {
  Rational k;
  Rational from(const Scalar& s) const { return s.specialize(k); }
};

template <>
struct CoefficientField<Scalar> {
  Scalar from(const Scalar& s) const { return s; }
};

template <class F>
struct GradedVector {
  std::map<PbwMonomial, F> coeffs;

  bool is_zero() const { return coeffs.empty(); }
  void add(const PbwMonomial& m, const F& c) {
    if (bp::is_zero(c)) return;
    auto [it, inserted] = coeffs.try_emplace(m, c);
    if (inserted) return;
    it->second += c;
    if (bp::is_zero(it->second)) coeffs.erase(it);
  }
  GradedVector& operator+=(const GradedVector& o) {
    for (const auto& [m, c] : o.coeffs) add(m, c);
    return *this;
  }
  GradedVector& operator-=(const GradedVector& o) {
    for (const auto& [m, c] : o.coeffs) add(m, -c);
    return *this;
  }
  GradedVector& operator*=(const F& c) {
    if (bp::is_zero(c)) return *this = GradedVector{};
    for (auto& [m, x] : coeffs) x *= c;
    return *this;
  }
  friend GradedVector operator+(GradedVector a, const GradedVector& b) { return a += b; }
  friend GradedVector operator-(GradedVector a, const GradedVector& b) { return a -= b; }
  friend GradedVector operator*(GradedVector a, const F& c) { return a *= c; }
  friend bool operator==(const GradedVector&, const GradedVector&) = default;

  /// The block shared by all terms; nullopt for zero or inhomogeneous vectors.
  std::optional<BlockKey> block() const {
    if (coeffs.empty()) return std::nullopt;
    const BlockKey b{coeffs.begin()->first.charge(), coeffs.begin()->first.depth()};
    for (const auto& [m, c] : coeffs)
      if (m.charge() != b.charge || m.depth() != b.depth) return std::nullopt;
    return b;
  }
};

/// A graded highest-weight or vacuum module with a PBW basis. Mode actions are
/// computed by commuting the acting mode to the right with the OPE-derived
/// brackets; results are memoized per (mode, monomial).
template <class F>
class Module {
 public:
  using Vector = GradedVector<F>;
  using Expression = BasicModeExpression<F>;

  Module(ModuleKind kind, BasicWeight<F> hw, const BracketTable& brackets, CoefficientField<F> field = {});

  ModuleKind kind() const { return kind_; }
  const BasicWeight<F>& highest_weight() const { return hw_; }
  const CoefficientField<F>& field() const { return field_; }
  const BracketTable& brackets() const { return brackets_; }

  /// Whether the mode appears in PBW monomials of this module kind.
  bool is_creation(ModeSymbol s) const;
  /// Creation modes of depth ≤ max_depth in PBW order.
  std::vector<ModeSymbol> creation_modes(int max_depth) const;

  Vector cyclic() const { return basis_vector(PbwMonomial{}); }
  static Vector basis_vector(const PbwMonomial& m);

  /// enumerate_block: all PBW monomials of the block in canonical order.
  const std::vector<PbwMonomial>& block(BlockKey key);

  Vector act(ModeSymbol s, const Vector& v);
  Vector act(ModeSymbol s, const PbwMonomial& m);
  /// (J^2)_l = Σ_{a≤-1} J_a J_{l-a} + Σ_{a≥0} J_{l-a} J_a, truncated to the
  /// finitely many terms that can be nonzero on v.
  Vector act_jj(int l, const Vector& v);
  Vector apply(const Expression& e, const Vector& v);

  /// act followed by a window check on the result.
  Vector act(ModeSymbol s, const Vector& v, const Truncation& window);

  const Expression& bracket(ModeSymbol a, ModeSymbol b);
  Expression convert(const ModeExpression& e) const {
    return e.template map<F>([this](const Scalar& c) { return field_.from(c); });
  }

  std::size_t memo_size() const { return act_memo_.size() + jj_memo_.size(); }

 private:
  Vector act_on_cyclic(ModeSymbol s) const;
  Vector act_jj(int l, const PbwMonomial& m);
  void enumerate(const std::vector<ModeSymbol>& modes, std::size_t pos, BlockKey target, int depth_left,
                 int charge, std::vector<ModeSymbol>& current, std::vector<PbwMonomial>& out) const;

  ModuleKind kind_;
  BasicWeight<F> hw_;
  const BracketTable& brackets_;
  CoefficientField<F> field_;
  std::map<std::pair<ModeSymbol, PbwMonomial>, Vector> act_memo_;
  std::map<std::pair<int, PbwMonomial>, Vector> jj_memo_;
  std::map<std::pair<ModeSymbol, ModeSymbol>, Expression> bracket_memo_;
  std::map<BlockKey, std::vector<PbwMonomial>> blocks_;
};

/// Which raising operators test singularity. All: J_n, L_n, G+_n for
/// 1 ≤ n ≤ depth and G-_n for 0 ≤ n ≤ depth. Generators: {J_1, L_1, L_2, G+_1,
/// G-_0}, which generate the same subalgebra.
enum class RaisingSet { All, Generators };

std::vector<ModeSymbol> raising_modes(RaisingSet set, int depth);

/// Per-block data of a quotient M / N, N ⊂ maximal proper submodule.
template <class F>
struct BlockState {
  BlockKey key;
  std::vector<PbwMonomial> basis;
  std::map<PbwMonomial, std::size_t> index;
  /// RREF rows spanning N ∩ M_b, with their pivot columns.
  std::vector<linalg::Row<F>> submodule;
  std::vector<std::size_t> pivots;
  /// Non-pivot columns; the quotient coordinates.
  std::vector<std::size_t> free_columns;

  int module_dimension() const { return static_cast<int>(basis.size()); }
  int dimension() const { return static_cast<int>(basis.size() - submodule.size()); }
};

/// Simple quotient of a module, computed block by block. A block's part of the
/// maximal submodule is the set of vectors whose raising images all vanish in
/// the already-computed quotient of closer-to-top blocks (singular vectors of
/// the current quotient and everything they generate). Blocks are computed on
/// demand, so the result does not depend on the order in which they are asked for.
template <class F>
class QuotientState {
 public:
  explicit QuotientState(Module<F>& module, RaisingSet raising = RaisingSet::All);

  Module<F>& module() { return module_; }
  RaisingSet raising() const { return raising_; }

  const BlockState<F>& block(BlockKey key);
  int dimension(BlockKey key) { return block(key).dimension(); }

  /// Quotient coordinates of a vector homogeneous in `key`.
  linalg::Row<F> project(BlockKey key, const GradedVector<F>& v);
  bool in_submodule(const GradedVector<F>& v);

  /// Quotient-basis representatives (free-column monomials) of the block.
  std::vector<PbwMonomial> representatives(BlockKey key);

  /// Sweeps until a sweep finds no new singular vector in the window.
  int fixpoint_iterations() const { return iterations_; }
  void set_fixpoint_iterations(int n) { iterations_ = n; }

  std::vector<BlockKey> computed_blocks() const;

 private:
  BlockState<F> compute(BlockKey key);

  Module<F>& module_;
  RaisingSet raising_;
  std::map<BlockKey, BlockState<F>> blocks_;
  int iterations_ = 0;
};

/// Vectors of the block whose images under every raising mode vanish in the
/// quotient of the lower blocks held by `state`.
template <class F>
std::vector<GradedVector<F>> singular_vectors(QuotientState<F>& state, BlockKey key);

/// Singular vectors of the module itself (no quotient): vectors killed by every
/// raising mode.
template <class F>
std::vector<GradedVector<F>> strict_singular_vectors(Module<F>& module, BlockKey key,
                                                     RaisingSet raising = RaisingSet::All);

enum class BlockOrder { Ascending, Descending };

/// Computes every block of the window in the given order, then re-checks the
/// finished quotient for singular vectors.
template <class F>
void iterate_quotient(QuotientState<F>& state, const Truncation& window, BlockOrder order = BlockOrder::Ascending);

/// All window blocks with a nonempty module part.
template <class F>
std::vector<BlockKey> window_blocks(Module<F>& module, const Truncation& window);

enum class Status { Verified, Mismatch, Inconclusive };
std::string_view name(Status s);

struct TopDimension {
  Status status = Status::Inconclusive;
  int value = 0;
  int charge_window = 0;
};

/// Dimension of the depth-0 part of the simple quotient of a Verma module; the
/// top space is spanned by (G+_0)^a |ξ,χ⟩, a < top dimension. Inconclusive if
/// no (G+_0)^a with a ≤ charge_window falls into the maximal submodule.
template <class F>
TopDimension top_dimension(QuotientState<F>& state, int charge_window);

template <class F>
struct TwistResult {
  Status status = Status::Inconclusive;
  BasicWeight<F> weight;
  BlockKey block;
  GradedVector<F> vector;
  /// Window blocks holding a twisted highest-weight vector.
  std::vector<BlockKey> candidates;
};

/// Reads the quotient with the action precomposed by ψ^power and locates the
/// highest-weight vector for the twisted action inside the window.
template <class F>
TwistResult<F> twist_module(QuotientState<F>& state, const SpectralFlow& flow, const Truncation& window,
                            int power = 1);

/// act(A_m, act(B_n, v)) - act(B_n, act(A_m, v)) == act([A_m, B_n], v) for the
/// listed families and m, n ∈ [lo, hi]. Returns descriptions of failures.
template <class F>
std::vector<std::string> check_bracket_soundness(Module<F>& module, const GradedVector<F>& v,
                                                 const std::vector<std::pair<Field, Field>>& pairs, int lo, int hi,
                                                 int* checked = nullptr);

/// Random combination of monomials from random blocks with depth ≤ max_depth,
/// small integer coefficients.
template <class F>
GradedVector<F> random_vector(Module<F>& module, int max_depth, std::mt19937_64& rng, int terms = 4);

extern template class Module<Rational>;
extern template class Module<Scalar>;
extern template class QuotientState<Rational>;
extern template class QuotientState<Scalar>;

}  // namespace bp

#include "bp/module_impl.hpp"
