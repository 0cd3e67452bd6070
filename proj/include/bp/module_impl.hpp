#pragma once

// Template definitions for module.hpp; include module.hpp instead.

#include <algorithm>
#include <functional>

namespace bp {

namespace detail {

/// Blocks that can hold PBW monomials at all. Verma: each G- factor costs at
/// least one unit of depth. Vacuum: G- costs two, G+ at least one.
inline bool block_possible(ModuleKind kind, BlockKey b) {
  if (b.depth < 0) return false;
  if (kind == ModuleKind::Verma) return b.charge >= -b.depth;
  return 2 * b.charge >= -b.depth && b.charge <= b.depth;
}

}  // namespace detail

template <class F>
Module<F>::Module(ModuleKind kind, BasicWeight<F> hw, const BracketTable& brackets, CoefficientField<F> field)
    : kind_(kind), hw_(std::move(hw)), brackets_(brackets), field_(std::move(field)) {
  if (kind_ == ModuleKind::Vacuum && (!bp::is_zero(hw_.xi) || !bp::is_zero(hw_.chi)))
    throw std::invalid_argument("vacuum module requires highest weight (0, 0)");
}

template <class F>
bool Module<F>::is_creation(ModeSymbol s) const {
  const bool verma = kind_ == ModuleKind::Verma;
  switch (s.family) {
    case Field::J: return s.index <= -1;
    case Field::L: return s.index <= (verma ? -1 : -2);
    case Field::Gplus: return s.index <= (verma ? 0 : -1);
    case Field::Gminus: return s.index <= (verma ? -1 : -2);
    default: throw std::invalid_argument("module action: unsupported family " + std::string(name(s.family)));
  }
}

template <class F>
std::vector<ModeSymbol> Module<F>::creation_modes(int max_depth) const {
  std::vector<ModeSymbol> out;
  for (Field f : {Field::J, Field::L, Field::Gplus, Field::Gminus})
    for (int n = -max_depth; n <= 0; ++n)
      if (is_creation(ModeSymbol{f, n})) out.push_back(ModeSymbol{f, n});
  std::sort(out.begin(), out.end());
  return out;
}

template <class F>
GradedVector<F> Module<F>::basis_vector(const PbwMonomial& m) {
  Vector v;
  v.add(m, F(1));
  return v;
}

template <class F>
void Module<F>::enumerate(const std::vector<ModeSymbol>& modes, std::size_t pos, BlockKey target, int depth_left,
                          int charge, std::vector<ModeSymbol>& current, std::vector<PbwMonomial>& out) const {
  if (pos == modes.size()) {
    if (depth_left == 0 && charge == target.charge) out.push_back(PbwMonomial{current});
    return;
  }
  const ModeSymbol mode = modes[pos];
  const int cost = mode.depth_change();
  // A depth-zero mode (G+_0) is bounded by what later G- factors can undo.
  const int max_count = cost > 0 ? depth_left / cost : std::max(0, target.charge - charge + depth_left);
  for (int t = 0; t <= max_count; ++t) {
    enumerate(modes, pos + 1, target, depth_left - t * cost, charge + t * mode.charge(), current, out);
    current.push_back(mode);
  }
  current.resize(current.size() - static_cast<std::size_t>(max_count) - 1);
}

template <class F>
const std::vector<PbwMonomial>& Module<F>::block(BlockKey key) {
  if (auto it = blocks_.find(key); it != blocks_.end()) return it->second;
  std::vector<PbwMonomial> out;
  if (detail::block_possible(kind_, key)) {
    std::vector<ModeSymbol> current;
    enumerate(creation_modes(key.depth), 0, key, key.depth, 0, current, out);
    std::sort(out.begin(), out.end());
  }
  return blocks_.emplace(key, std::move(out)).first->second;
}

template <class F>
GradedVector<F> Module<F>::act_on_cyclic(ModeSymbol s) const {
  if (is_creation(s)) return basis_vector(PbwMonomial{{s}});
  Vector v;
  if (s.index == 0 && s.family == Field::J) v.add(PbwMonomial{}, hw_.xi);
  if (s.index == 0 && s.family == Field::L) v.add(PbwMonomial{}, hw_.chi);
  return v;
}

template <class F>
GradedVector<F> Module<F>::act(ModeSymbol s, const PbwMonomial& m) {
  const BlockKey target{m.charge() + s.charge(), m.depth() + s.depth_change()};
  if (!detail::block_possible(kind_, target)) return {};
  if (m.factors.empty()) return act_on_cyclic(s);
  if (is_creation(s) && !(m.factors.front() < s)) {
    PbwMonomial out;
    out.factors.reserve(m.factors.size() + 1);
    out.factors.push_back(s);
    out.factors.insert(out.factors.end(), m.factors.begin(), m.factors.end());
    return basis_vector(out);
  }
  const auto key = std::make_pair(s, m);
  if (auto it = act_memo_.find(key); it != act_memo_.end()) return it->second;

  // s · head · rest = head · (s · rest) + [s, head] · rest
  const ModeSymbol head = m.factors.front();
  const PbwMonomial rest{std::vector<ModeSymbol>(m.factors.begin() + 1, m.factors.end())};
  Vector result = act(head, act(s, rest));
  const Expression commutator = bracket(s, head);
  result += apply(commutator, basis_vector(rest));
  return act_memo_.emplace(key, std::move(result)).first->second;
}

template <class F>
GradedVector<F> Module<F>::act(ModeSymbol s, const Vector& v) {
  Vector out;
  for (const auto& [m, c] : v.coeffs) {
    Vector part = act(s, m);
    for (const auto& [mm, cc] : part.coeffs) out.add(mm, cc * c);
  }
  return out;
}

template <class F>
GradedVector<F> Module<F>::act(ModeSymbol s, const Vector& v, const Truncation& window) {
  Vector out = act(s, v);
  for (const auto& [m, c] : out.coeffs)
    if (!window.contains(BlockKey{m.charge(), m.depth()}))
      throw TruncationError("result of " + to_string(s) + " leaves the truncation window at (" +
                            std::to_string(m.charge()) + ", " + std::to_string(m.depth()) + ")");
  return out;
}

template <class F>
GradedVector<F> Module<F>::act_jj(int l, const PbwMonomial& m) {
  const auto key = std::make_pair(l, m);
  if (auto it = jj_memo_.find(key); it != jj_memo_.end()) return it->second;
  const int d = m.depth();
  const Vector v = basis_vector(m);
  Vector out;
  for (int a = l - d; a <= -1; ++a) out += act(ModeSymbol{Field::J, a}, act(ModeSymbol{Field::J, l - a}, v));
  for (int a = 0; a <= d; ++a) out += act(ModeSymbol{Field::J, l - a}, act(ModeSymbol{Field::J, a}, v));
  return jj_memo_.emplace(key, std::move(out)).first->second;
}

template <class F>
GradedVector<F> Module<F>::act_jj(int l, const Vector& v) {
  Vector out;
  for (const auto& [m, c] : v.coeffs) {
    Vector part = act_jj(l, m);
    for (const auto& [mm, cc] : part.coeffs) out.add(mm, cc * c);
  }
  return out;
}

template <class F>
GradedVector<F> Module<F>::apply(const Expression& e, const Vector& v) {
  Vector out;
  for (const auto& [s, c] : e.linear) out += act(s, v) * c;
  for (const auto& [l, c] : e.quadratic_jj) out += act_jj(l, v) * c;
  if (!bp::is_zero(e.central)) out += v * e.central;
  return out;
}

template <class F>
const BasicModeExpression<F>& Module<F>::bracket(ModeSymbol a, ModeSymbol b) {
  const auto key = std::make_pair(a, b);
  if (auto it = bracket_memo_.find(key); it != bracket_memo_.end()) return it->second;
  return bracket_memo_.emplace(key, convert(brackets_.bracket(a, b))).first->second;
}

// ---------------------------------------------------------------------------
// Quotients

namespace detail {

/// Kernel of v ↦ (π(X v))_X over the given monomials, where π projects a
/// vector of a target block to coordinates chosen by `project`.
template <class F>
std::vector<GradedVector<F>> raising_kernel(
    Module<F>& module, const std::vector<PbwMonomial>& columns,
    const std::vector<BasicModeExpression<F>>& operators,
    const std::function<std::optional<linalg::Row<F>>(BlockKey, const GradedVector<F>&)>& project) {
  const std::size_t n = columns.size();
  if (n == 0) return {};
  std::vector<linalg::Row<F>> rows;
  for (const auto& op : operators) {
    std::vector<linalg::Row<F>> images;  // one per column
    std::size_t height = 0;
    bool skip = false;
    for (const auto& col : columns) {
      const GradedVector<F> image = module.apply(op, Module<F>::basis_vector(col));
      if (image.is_zero()) {
        images.emplace_back();
        continue;
      }
      const auto target = image.block();
      if (!target) throw std::logic_error("raising image is not homogeneous");
      auto coords = project(*target, image);
      if (!coords) {
        skip = true;
        break;
      }
      height = coords->size();
      images.push_back(std::move(*coords));
    }
    if (skip || height == 0) continue;
    for (std::size_t r = 0; r < height; ++r) {
      linalg::Row<F> row(n, F(0));
      bool nonzero = false;
      for (std::size_t c = 0; c < n; ++c) {
        if (images[c].empty()) continue;
        row[c] = images[c][r];
        nonzero = nonzero || !bp::is_zero(row[c]);
      }
      if (nonzero) rows.push_back(std::move(row));
    }
  }
  std::vector<GradedVector<F>> out;
  for (const auto& k : linalg::kernel(std::move(rows), n)) {
    GradedVector<F> v;
    for (std::size_t c = 0; c < n; ++c) v.add(columns[c], k[c]);
    out.push_back(std::move(v));
  }
  return out;
}

template <class F>
std::vector<BasicModeExpression<F>> raising_operators(RaisingSet set, int depth) {
  std::vector<BasicModeExpression<F>> ops;
  for (const auto& s : raising_modes(set, depth)) ops.push_back(BasicModeExpression<F>::mode(s, F(1)));
  return ops;
}

}  // namespace detail

template <class F>
std::vector<GradedVector<F>> singular_vectors(QuotientState<F>& state, BlockKey key) {
  if (key == BlockKey{0, 0}) return {};
  Module<F>& module = state.module();
  const auto& columns = module.block(key);
  return detail::raising_kernel<F>(module, columns, detail::raising_operators<F>(state.raising(), key.depth),
                                   [&state](BlockKey target, const GradedVector<F>& v) -> std::optional<linalg::Row<F>> {
                                     return state.project(target, v);
                                   });
}

template <class F>
std::vector<GradedVector<F>> strict_singular_vectors(Module<F>& module, BlockKey key, RaisingSet raising) {
  if (key == BlockKey{0, 0}) return {};
  const auto& columns = module.block(key);
  return detail::raising_kernel<F>(
      module, columns, detail::raising_operators<F>(raising, key.depth),
      [&module](BlockKey target, const GradedVector<F>& v) -> std::optional<linalg::Row<F>> {
        const auto& basis = module.block(target);
        linalg::Row<F> row(basis.size(), F(0));
        for (const auto& [m, c] : v.coeffs) {
          auto it = std::lower_bound(basis.begin(), basis.end(), m);
          if (it == basis.end() || *it != m) throw std::logic_error("monomial outside its block");
          row[static_cast<std::size_t>(it - basis.begin())] = c;
        }
        return row;
      });
}

template <class F>
QuotientState<F>::QuotientState(Module<F>& module, RaisingSet raising) : module_(module), raising_(raising) {}

template <class F>
const BlockState<F>& QuotientState<F>::block(BlockKey key) {
  if (auto it = blocks_.find(key); it != blocks_.end()) return it->second;
  BlockState<F> computed = compute(key);
  return blocks_.emplace(key, std::move(computed)).first->second;
}

template <class F>
BlockState<F> QuotientState<F>::compute(BlockKey key) {
  BlockState<F> st;
  st.key = key;
  st.basis = module_.block(key);
  for (std::size_t i = 0; i < st.basis.size(); ++i) st.index.emplace(st.basis[i], i);
  const std::size_t n = st.basis.size();
  for (const auto& v : singular_vectors(*this, key)) {
    linalg::Row<F> row(n, F(0));
    for (const auto& [m, c] : v.coeffs) row[st.index.at(m)] = c;
    st.submodule.push_back(std::move(row));
  }
  st.pivots = linalg::rref(st.submodule, n);
  std::vector<bool> pivot(n, false);
  for (auto p : st.pivots) pivot[p] = true;
  for (std::size_t c = 0; c < n; ++c)
    if (!pivot[c]) st.free_columns.push_back(c);
  return st;
}

template <class F>
linalg::Row<F> QuotientState<F>::project(BlockKey key, const GradedVector<F>& v) {
  const BlockState<F>& st = block(key);
  linalg::Row<F> x(st.basis.size(), F(0));
  for (const auto& [m, c] : v.coeffs) {
    auto it = st.index.find(m);
    if (it == st.index.end()) throw std::logic_error("project: monomial " + to_string(m) + " outside block");
    x[it->second] = c;
  }
  for (std::size_t r = 0; r < st.submodule.size(); ++r) {
    const F f = x[st.pivots[r]];
    if (bp::is_zero(f)) continue;
    for (std::size_t j = 0; j < x.size(); ++j)
      if (!bp::is_zero(st.submodule[r][j])) x[j] -= f * st.submodule[r][j];
  }
  linalg::Row<F> out;
  out.reserve(st.free_columns.size());
  for (auto c : st.free_columns) out.push_back(x[c]);
  return out;
}

template <class F>
bool QuotientState<F>::in_submodule(const GradedVector<F>& v) {
  if (v.is_zero()) return true;
  const auto key = v.block();
  if (!key) throw std::invalid_argument("in_submodule: vector is not homogeneous");
  for (const auto& c : project(*key, v))
    if (!bp::is_zero(c)) return false;
  return true;
}

template <class F>
std::vector<PbwMonomial> QuotientState<F>::representatives(BlockKey key) {
  const BlockState<F>& st = block(key);
  std::vector<PbwMonomial> out;
  for (auto c : st.free_columns) out.push_back(st.basis[c]);
  return out;
}

template <class F>
std::vector<BlockKey> QuotientState<F>::computed_blocks() const {
  std::vector<BlockKey> out;
  for (const auto& [k, v] : blocks_) out.push_back(k);
  return out;
}

template <class F>
std::vector<BlockKey> window_blocks(Module<F>& module, const Truncation& window) {
  std::vector<BlockKey> out;
  for (int d = 0; d <= window.max_depth; ++d)
    for (int a = -window.charge_window; a <= window.charge_window; ++a)
      if (!module.block(BlockKey{a, d}).empty()) out.push_back(BlockKey{a, d});
  return out;
}

template <class F>
void iterate_quotient(QuotientState<F>& state, const Truncation& window, BlockOrder order) {
  auto blocks = window_blocks(state.module(), window);
  if (order == BlockOrder::Descending) std::reverse(blocks.begin(), blocks.end());
  for (const auto& b : blocks) state.block(b);
  // Second sweep: the finished quotient must have no singular vectors left.
  Module<F>& module = state.module();
  for (const auto& b : blocks) {
    if (b == BlockKey{0, 0}) continue;
    const auto reps = state.representatives(b);
    const auto found = detail::raising_kernel<F>(
        module, reps, detail::raising_operators<F>(state.raising(), b.depth),
        [&state](BlockKey target, const GradedVector<F>& v) -> std::optional<linalg::Row<F>> {
          return state.project(target, v);
        });
    if (!found.empty())
      throw std::logic_error("quotient still has a singular vector in block (" + std::to_string(b.charge) + ", " +
                             std::to_string(b.depth) + ")");
  }
  state.set_fixpoint_iterations(2);
}

template <class F>
TopDimension top_dimension(QuotientState<F>& state, int charge_window) {
  if (state.module().kind() != ModuleKind::Verma) {
    // The vacuum top space is the vacuum line itself.
    return TopDimension{Status::Verified, 1, charge_window};
  }
  for (int a = 0; a <= charge_window; ++a)
    if (state.dimension(BlockKey{a, 0}) == 0) return TopDimension{Status::Verified, a, charge_window};
  return TopDimension{Status::Inconclusive, 0, charge_window};
}

template <class F>
TwistResult<F> twist_module(QuotientState<F>& state, const SpectralFlow& flow, const Truncation& window, int power) {
  Module<F>& module = state.module();
  TwistResult<F> result;
  const auto project = [&state](BlockKey target, const GradedVector<F>& v) -> std::optional<linalg::Row<F>> {
    return state.project(target, v);
  };
  for (const auto& b : window_blocks(module, window)) {
    if (state.dimension(b) == 0) continue;
    std::vector<BasicModeExpression<F>> ops;
    for (int n = 1; n <= b.depth + power + 1; ++n)
      for (Field f : {Field::J, Field::L, Field::Gplus})
        ops.push_back(module.convert(flow.image(ModeSymbol{f, n}, power)));
    for (int n = 0; n <= b.depth + 1; ++n) ops.push_back(module.convert(flow.image(ModeSymbol{Field::Gminus, n}, power)));
    const auto reps = state.representatives(b);
    const auto kernel = detail::raising_kernel<F>(module, reps, ops, project);
    if (kernel.empty()) continue;
    result.candidates.push_back(b);
    if (result.candidates.size() == 1 && kernel.size() == 1) {
      result.block = b;
      result.vector = kernel.front();
    }
  }
  if (result.candidates.empty()) return result;
  if (result.candidates.size() > 1 || result.vector.is_zero()) {
    result.status = Status::Mismatch;
    return result;
  }
  // Eigenvalues of ψ^power(J_0) and ψ^power(L_0) on the located vector.
  const F charge_value = module.highest_weight().xi + F(result.block.charge);
  const F depth_value = module.highest_weight().chi + F(result.block.depth);
  auto eigenvalue = [&](ModeSymbol zero_mode) {
    const auto e = module.convert(flow.image(zero_mode, power));
    F value = e.central;
    for (const auto& [s, c] : e.linear) {
      if (s.index != 0) throw std::logic_error("twisted zero mode is not diagonal");
      value += c * (s.family == Field::J ? charge_value : depth_value);
    }
    return value;
  };
  result.weight = BasicWeight<F>{eigenvalue(ModeSymbol{Field::J, 0}), eigenvalue(ModeSymbol{Field::L, 0})};
  result.status = Status::Verified;
  return result;
}

template <class F>
std::vector<std::string> check_bracket_soundness(Module<F>& module, const GradedVector<F>& v,
                                                 const std::vector<std::pair<Field, Field>>& pairs, int lo, int hi,
                                                 int* checked) {
  std::vector<std::string> failures;
  for (const auto& [fa, fb] : pairs)
    for (int m = lo; m <= hi; ++m)
      for (int n = lo; n <= hi; ++n) {
        const ModeSymbol a{fa, m}, b{fb, n};
        const GradedVector<F> lhs = module.act(a, module.act(b, v)) - module.act(b, module.act(a, v));
        const GradedVector<F> rhs = module.apply(module.bracket(a, b), v);
        if (checked) ++*checked;
        if (lhs != rhs) failures.push_back("[" + to_string(a) + "," + to_string(b) + "] fails on a test vector");
      }
  return failures;
}

template <class F>
GradedVector<F> random_vector(Module<F>& module, int max_depth, std::mt19937_64& rng, int terms) {
  GradedVector<F> v;
  std::uniform_int_distribution<int> depth_dist(0, max_depth);
  std::uniform_int_distribution<int> coeff_dist(1, 5);
  std::bernoulli_distribution sign(0.5);
  int attempts = 0;
  while (static_cast<int>(v.coeffs.size()) < terms && attempts++ < 100 * terms) {
    const int d = depth_dist(rng);
    std::uniform_int_distribution<int> charge_dist(-d, d + 1);
    const auto& basis = module.block(BlockKey{charge_dist(rng), d});
    if (basis.empty()) continue;
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    v.add(basis[pick(rng)], F(sign(rng) ? coeff_dist(rng) : -coeff_dist(rng)));
  }
  return v;
}

}  // namespace bp
