#include "cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <chrono>
#include <functional>
#include <json.hpp>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "bp/module.hpp"

namespace bp::cli {
namespace {

using json = nlohmann::json;

struct Options {
  int p = 0;
  std::string k;
  std::optional<int> i, j, depth, charge, grid;
  std::string format = "json";
  std::string profile = "quick";
  std::string field = "G+";
  std::string fault;
  bool timing = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  json inputs = json::object();
  json results;
  Status verdict = Status::Verified;
};

Status combine(Status a, Status b) {
  if (a == Status::Mismatch || b == Status::Mismatch) return Status::Mismatch;
  if (a == Status::Inconclusive || b == Status::Inconclusive) return Status::Inconclusive;
  return Status::Verified;
}

std::string str(const Rational& q) { return to_string(q); }
std::string str(const Scalar& s) { return s.is_constant() ? to_string(s.constant_value()) : s.to_string(); }

json mode_json(ModeSymbol s) { return json::array({std::string(name(s.family)), s.index}); }

Level level_of(int p) {
  try {
    return Level(p);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--p: ") + e.what());
  }
}

Rational k_of(const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("--k: invalid rational '" + text + "'");
  }
}

json tally_json(const CheckTally& t, std::size_t keep = 20) {
  json m = json::array();
  for (std::size_t n = 0; n < t.mismatches.size() && n < keep; ++n) m.push_back(t.mismatches[n]);
  return json{{"name", t.name}, {"checked", t.checked}, {"mismatch_count", t.mismatches.size()}, {"mismatches", m}};
}

/// The published G+(z)G-(w) central term with a factor 2 error.
OpeTable faulted_table(const std::string& fault) {
  OpeTable table = OpeTable::published();
  if (fault.empty()) return table;
  if (fault != "gpgm-central") throw UsageError("--inject-fault: unknown fault '" + fault + "'");
  for (auto& [order, expr] : table.entry(Field::Gplus, Field::Gminus).poles)
    if (auto it = expr.find(kIdentityTerm); it != expr.end()) it->second *= Scalar(2);
  return table;
}

// ---------------------------------------------------------------------------
// Checks shared by the single commands and `verify`.

Outcome bracket_outcome(const BracketTable& table, int grid) {
  const BracketReport report = verify_bracket_table(table, -grid, grid);
  Outcome o;
  json families = json::array();
  for (const auto& f : report.families) families.push_back(tally_json(f));
  o.results = json{{"grid", json::array({-grid, grid})},
                   {"families", families},
                   {"antisymmetry", tally_json(report.antisymmetry)},
                   {"bookkeeping", tally_json(report.bookkeeping)},
                   {"printed_central_term", tally_json(report.printed_central, 3)},
                   {"conventions", report.conventions}};
  o.verdict = report.ok() ? Status::Verified : Status::Mismatch;
  return o;
}

Outcome flow_automorphism_outcome(const BracketTable& table, int grid) {
  SpectralFlow flow(table);
  const auto report = flow.check_automorphism(-grid, grid);
  json constants = json::object();
  for (const auto& [n, c] : report.constants) constants[std::to_string(n)] = str(c);
  json failures = json::array();
  for (std::size_t n = 0; n < report.failures.size() && n < 20; ++n) failures.push_back(report.failures[n]);
  Outcome o;
  o.results = json{{"grid", json::array({-grid, grid})},
                   {"checked", report.checked},
                   {"failures", failures},
                   {"failure_count", report.failures.size()},
                   {"constants", constants}};
  o.verdict = report.ok() ? Status::Verified : Status::Mismatch;
  return o;
}

Outcome weights_outcome(const std::vector<int>& levels) {
  Outcome o;
  json per_level = json::array();
  std::vector<std::string> failures;
  const auto fail = [&](std::string s) { failures.push_back(std::move(s)); };
  for (int i = 1; i <= 8; ++i) {
    const Scalar xi = Scalar::parse("(2*k+1)/(3)"), chi = Scalar::parse("(k^2-1)/(k+5)");
    if (h_averaged(i, xi, chi) != h_closed(i, xi, chi)) fail("h_" + std::to_string(i) + " averaged != closed");
  }
  for (int p : levels) {
    const Level level = level_of(p);
    const Rational kv = level.k();
    const auto records = enumerate_simples(level);
    std::set<std::pair<Rational, Rational>> seen;
    for (const auto& r : records) {
      const std::string tag = "p=" + std::to_string(p) + " (" + std::to_string(r.i) + "," + std::to_string(r.j) + ")";
      const HighestWeight hw = specialize(r.hw, kv);
      if (!h_fun(r.i, hw.xi, hw.chi, Scalar(kv)).is_zero()) fail(tag + ": h_i != 0");
      const HighestWeight flowed = flow_weight(hw, r.i, Scalar(kv));
      if (!h_fun(r.j, flowed.xi, flowed.chi, Scalar(kv)).is_zero()) fail(tag + ": h_j(flow) != 0");
      if (xi_from_weight(r.lambda) != hw.xi.constant_value() || chi_from_weight(r.lambda) != hw.chi.constant_value())
        fail(tag + ": sl3 inner-product form disagrees");
      if (!seen.emplace(hw.xi.constant_value(), hw.chi.constant_value()).second) fail(tag + ": repeated weight");
    }
    const int expected = (p - 1) * (p - 2) / 2;
    if (static_cast<int>(records.size()) != expected) fail("p=" + std::to_string(p) + ": record count");
    const HighestWeight corner = specialize(xi_chi(1, p - 2), kv);
    if (!corner.xi.is_zero() || !corner.chi.is_zero()) fail("p=" + std::to_string(p) + ": (1,p-2) is not (0,0)");
    const Rational c_k = central_charge(Scalar(kv)).constant_value();
    if (c_k != central_charge_from_p(level)) fail("p=" + std::to_string(p) + ": central charge forms differ");
    per_level.push_back(json{{"p", p}, {"records", records.size()}, {"central_charge", str(c_k)}});
  }
  o.results = json{{"levels", per_level}, {"failures", failures}};
  o.verdict = failures.empty() ? Status::Verified : Status::Mismatch;
  return o;
}

Outcome null_vector_outcome(const BracketTable& table, int p, Field field) {
  const Level level = level_of(p);
  Module<Rational> vacuum(ModuleKind::Vacuum, {0, 0}, table, {level.k()});
  QuotientState<Rational> state(vacuum);
  const ModeSymbol mode = field == Field::Gplus ? ModeSymbol{Field::Gplus, -1} : ModeSymbol{Field::Gminus, -2};
  const PbwMonomial m{std::vector<ModeSymbol>(static_cast<std::size_t>(p - 2), mode)};
  const BlockKey key{m.charge(), m.depth()};
  const bool in_max = state.in_submodule(Module<Rational>::basis_vector(m));
  Outcome o;
  o.inputs = json{{"p", p}, {"field", std::string(name(field))}};
  o.results = json{{"monomial", "(" + to_string(mode) + ")^" + std::to_string(p - 2)},
                   {"in_maximal_submodule", in_max},
                   {"certificate_depth", key.depth},
                   {"block", json{{"charge", key.charge}, {"depth", key.depth}}},
                   {"module_dim", state.block(key).module_dimension()},
                   {"quotient_dim", state.dimension(key)}};
  o.verdict = in_max ? Status::Verified : Status::Mismatch;
  return o;
}

Module<Rational> verma_at(const BracketTable& table, const Level& level, const HighestWeight& hw) {
  const HighestWeight v = specialize(hw, level.k());
  return Module<Rational>(ModuleKind::Verma, {v.xi.constant_value(), v.chi.constant_value()}, table, {level.k()});
}

Outcome top_dims_outcome(const BracketTable& table, int p, int charge_window) {
  const Level level = level_of(p);
  Outcome o;
  o.inputs = json{{"p", p}, {"charge", charge_window}};
  o.results = json::array();
  for (const auto& r : enumerate_simples(level)) {
    Module<Rational> verma = verma_at(table, level, r.hw);
    QuotientState<Rational> state(verma);
    const TopDimension top = top_dimension(state, charge_window);
    Status s = top.status;
    if (s == Status::Verified && top.value != r.i) s = Status::Mismatch;
    json roots = json::array();
    for (int m : h_roots(specialize(r.hw, level.k()), charge_window, Scalar(level.k()))) roots.push_back(m);
    const HighestWeight hw = specialize(r.hw, level.k());
    o.results.push_back(json{{"i", r.i},
                             {"j", r.j},
                             {"xi", str(hw.xi)},
                             {"chi", str(hw.chi)},
                             {"top_dim", top.status == Status::Inconclusive ? json(nullptr) : json(top.value)},
                             {"h_roots", roots},
                             {"status", std::string(name(s))}});
    o.verdict = combine(o.verdict, s);
  }
  return o;
}

json twist_json(const TwistResult<Rational>& t) {
  json cands = json::array();
  for (const auto& b : t.candidates) cands.push_back(json::array({b.charge, b.depth}));
  json out{{"status", std::string(name(t.status))}, {"candidates", cands}};
  if (t.status == Status::Verified) {
    out["xi"] = str(t.weight.xi);
    out["chi"] = str(t.weight.chi);
    out["block"] = json::array({t.block.charge, t.block.depth});
  }
  return out;
}

Outcome twist_outcome(const BracketTable& table, int p, int depth, int charge_window) {
  const Level level = level_of(p);
  const Scalar k(level.k());
  SpectralFlow flow(table);
  const Truncation window{depth, charge_window};
  Outcome o;
  json rows = json::array();
  for (const auto& r : enumerate_simples(level)) {
    Module<Rational> verma = verma_at(table, level, r.hw);
    QuotientState<Rational> state(verma);
    const auto t = twist_module(state, flow, window);
    const HighestWeight expected = flow_weight(specialize(r.hw, level.k()), r.i, k);
    Status s = t.status;
    if (s == Status::Verified && (Scalar(t.weight.xi) != expected.xi || Scalar(t.weight.chi) != expected.chi))
      s = Status::Mismatch;
    json row = twist_json(t);
    row["i"] = r.i;
    row["j"] = r.j;
    row["expected_xi"] = str(expected.xi);
    row["expected_chi"] = str(expected.chi);
    row["status"] = std::string(name(s));
    rows.push_back(row);
    o.verdict = combine(o.verdict, s);
  }
  Module<Rational> vacuum(ModuleKind::Vacuum, {0, 0}, table, {level.k()});
  QuotientState<Rational> vstate(vacuum);
  const auto vt = twist_module(vstate, flow, window);
  const HighestWeight vexp = flow_weight(HighestWeight{}, 1, k);
  Status vs = vt.status;
  if (vs == Status::Verified && (Scalar(vt.weight.xi) != vexp.xi || Scalar(vt.weight.chi) != vexp.chi))
    vs = Status::Mismatch;
  json vrow = twist_json(vt);
  vrow["status"] = std::string(name(vs));
  vrow["expected_xi"] = str(vexp.xi);
  vrow["expected_chi"] = str(vexp.chi);
  o.verdict = combine(o.verdict, vs);
  o.results = json{{"simples", rows}, {"vacuum", vrow}};
  return o;
}

Outcome collapse_outcome(const BracketTable& table, int p, int depth) {
  const Level level = level_of(p);
  Module<Rational> vacuum(ModuleKind::Vacuum, {0, 0}, table, {level.k()});
  QuotientState<Rational> state(vacuum);
  const Truncation window{depth, 2 * depth};
  iterate_quotient(state, window);
  int total = 0;
  for (const auto& b : window_blocks(vacuum, window)) total += state.dimension(b);
  Outcome o;
  o.results = json{{"p", p}, {"depth", depth}, {"total_dimension", total}};
  o.verdict = total == 1 ? Status::Verified : Status::Mismatch;
  return o;
}

/// Non-integer rational with |q| < 5 and denominator at most 9, avoiding `avoid`.
Rational random_rational(std::mt19937_64& rng, const std::vector<Rational>& avoid = {}) {
  std::uniform_int_distribution<int> num(-40, 40), den(2, 9);
  for (;;) {
    const Rational q = frac(num(rng), den(rng));
    if (!is_integer(q) && abs(q) < 5 && std::find(avoid.begin(), avoid.end(), q) == avoid.end()) return q;
  }
}

template <class F>
void jacobi_run(Module<F>& module, int grid, int depth, std::mt19937_64& rng,
                const std::vector<std::pair<Field, Field>>& pairs, int& checked, std::vector<std::string>& failures) {
  for (int sample = 0; sample < 2; ++sample) {
    const GradedVector<F> v = random_vector(module, depth, rng, 3);
    for (auto& f : check_bracket_soundness(module, v, pairs, -grid, grid, &checked))
      failures.push_back(std::string(name(module.kind())) + ": " + f);
  }
}

Outcome jacobi_outcome(const BracketTable& table, int grid, int depth, const std::vector<Rational>& ks) {
  const Field fs[] = {Field::J, Field::L, Field::Gplus, Field::Gminus};
  std::vector<std::pair<Field, Field>> linear_pairs, all_pairs;
  for (Field a : fs)
    for (Field b : fs) {
      all_pairs.emplace_back(a, b);
      const bool quadratic = (a == Field::Gplus && b == Field::Gminus) || (a == Field::Gminus && b == Field::Gplus);
      if (!quadratic) linear_pairs.emplace_back(a, b);
    }
  std::mt19937_64 rng(20240611);
  std::vector<std::string> failures;
  int symbolic_checked = 0;
  {
    const Scalar xi(random_rational(rng)), chi(random_rational(rng));
    Module<Scalar> verma(ModuleKind::Verma, {xi, chi}, table);
    jacobi_run(verma, grid, depth, rng, linear_pairs, symbolic_checked, failures);
    Module<Scalar> vacuum(ModuleKind::Vacuum, {Scalar(0), Scalar(0)}, table);
    jacobi_run(vacuum, grid, depth, rng, linear_pairs, symbolic_checked, failures);
  }
  json rational = json::array();
  for (const Rational& k : ks) {
    int checked = 0;
    const std::size_t before = failures.size();
    Module<Rational> verma(ModuleKind::Verma, {random_rational(rng), random_rational(rng)}, table, {k});
    jacobi_run(verma, grid, depth, rng, all_pairs, checked, failures);
    Module<Rational> vacuum(ModuleKind::Vacuum, {0, 0}, table, {k});
    jacobi_run(vacuum, grid, depth, rng, all_pairs, checked, failures);
    rational.push_back(json{{"k", str(k)}, {"checked", checked}, {"failure_count", failures.size() - before}});
  }
  json shown = json::array();
  for (std::size_t n = 0; n < failures.size() && n < 20; ++n) shown.push_back(failures[n]);
  Outcome o;
  o.results = json{{"grid", json::array({-grid, grid})},
                   {"max_depth", depth},
                   {"symbolic", json{{"pairs", linear_pairs.size()}, {"checked", symbolic_checked}}},
                   {"rational", rational},
                   {"failures", shown},
                   {"failure_count", failures.size()}};
  o.verdict = failures.empty() ? Status::Verified : Status::Mismatch;
  return o;
}

std::vector<Rational> jacobi_levels(const Options& opt) {
  if (!opt.k.empty()) return {k_of(opt.k)};
  std::mt19937_64 rng(7);
  std::vector<Rational> out;
  // k = -3 is the critical level; G+G- brackets have no pole elsewhere.
  while (out.size() < 3) {
    std::vector<Rational> avoid = out;
    avoid.push_back(Rational(-3));
    out.push_back(random_rational(rng, avoid));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands

Outcome cmd_brackets(const Options& opt) {
  const int grid = opt.grid.value_or(3);
  std::optional<Rational> k;
  if (!opt.k.empty()) k = k_of(opt.k);
  BracketTable table;
  Outcome o;
  o.inputs = json{{"grid", grid}};
  if (k) o.inputs["k"] = str(*k);
  const auto coeff = [&](const Scalar& c) { return k ? str(c.specialize(*k)) : c.to_string(); };
  o.results = json::array();
  const Field fs[] = {Field::J, Field::L, Field::Gplus, Field::Gminus};
  for (Field a : fs)
    for (Field b : fs)
      for (int m = -grid; m <= grid; ++m)
        for (int n = -grid; n <= grid; ++n) {
          const ModeExpression& e = table.bracket({a, m}, {b, n});
          json terms = json::array();
          for (const auto& [s, c] : e.linear) terms.push_back(json{{"mode", mode_json(s)}, {"coeff", coeff(c)}});
          for (const auto& [l, c] : e.quadratic_jj)
            terms.push_back(json{{"mode", json::array({"(J^2)", l})}, {"coeff", coeff(c)}});
          o.results.push_back(json{{"lhs", json::array({mode_json({a, m}), mode_json({b, n})})},
                                   {"rhs_terms", terms},
                                   {"central", coeff(e.central)}});
        }
  return o;
}

Outcome cmd_verify_brackets(const Options& opt) {
  const int grid = opt.grid.value_or(3);
  BracketTable table(faulted_table(opt.fault));
  Outcome o = bracket_outcome(table, grid);
  o.inputs = json{{"grid", grid}};
  return o;
}

Outcome cmd_verify_jacobi(const Options& opt) {
  const int grid = opt.grid.value_or(2);
  const int depth = opt.depth.value_or(3);
  const auto ks = jacobi_levels(opt);
  BracketTable table(faulted_table(opt.fault));
  Outcome o = jacobi_outcome(table, grid, depth, ks);
  o.inputs = json{{"grid", grid}, {"depth", depth}};
  return o;
}

Outcome cmd_simples(const Options& opt) {
  const Level level = level_of(opt.p);
  Outcome o;
  o.inputs = json{{"p", opt.p}};
  o.results = json::array();
  for (const auto& r : enumerate_simples(level)) {
    const HighestWeight hw = specialize(r.hw, level.k());
    o.results.push_back(json{{"p", r.p},
                             {"i", r.i},
                             {"j", r.j},
                             {"xi", str(hw.xi)},
                             {"chi", str(hw.chi)},
                             {"lambda", json::array({str(r.lambda.a1), str(r.lambda.a2), str(r.lambda.level)})}});
  }
  return o;
}

Outcome cmd_character(const Options& opt) {
  const Level level = level_of(opt.p);
  if (opt.i.has_value() != opt.j.has_value()) throw UsageError("character: give both --i and --j, or neither");
  const int depth = opt.depth.value_or(opt.p - 2);
  const int charge = opt.charge.value_or(opt.p);
  if (depth < 0 || charge < 0) throw UsageError("character: --depth and --charge must be non-negative");
  BracketTable table;
  std::optional<Module<Rational>> module;
  Outcome o;
  o.inputs = json{{"p", opt.p}, {"depth", depth}, {"charge", charge}};
  if (opt.i) {
    const int i = *opt.i, j = *opt.j;
    if (i < 1 || j < 1 || i + j > opt.p - 1) throw UsageError("character: need i, j >= 1 and i + j <= p - 1");
    o.inputs["i"] = i;
    o.inputs["j"] = j;
    module.emplace(verma_at(table, level, xi_chi(i, j)));
  } else {
    module.emplace(ModuleKind::Vacuum, BasicWeight<Rational>{0, 0}, table, CoefficientField<Rational>{level.k()});
  }
  QuotientState<Rational> state(*module);
  const Truncation window{depth, charge};
  iterate_quotient(state, window);
  json blocks = json::array();
  for (const auto& b : window_blocks(*module, window))
    blocks.push_back(json{{"charge", b.charge}, {"depth", b.depth}, {"dim", state.dimension(b)},
                          {"module_dim", state.block(b).module_dimension()}});
  o.results = json{{"module", std::string(name(module->kind()))},
                   {"xi", str(module->highest_weight().xi)},
                   {"chi", str(module->highest_weight().chi)},
                   {"blocks", blocks},
                   {"fixpoint_iterations", state.fixpoint_iterations()}};
  return o;
}

Outcome cmd_null_vector(const Options& opt) {
  level_of(opt.p);
  Field field;
  try {
    field = parse_field(opt.field);
  } catch (const std::invalid_argument&) {
    throw UsageError("--field: expected G+ or G-");
  }
  if (field != Field::Gplus && field != Field::Gminus) throw UsageError("--field: expected G+ or G-");
  BracketTable table;
  return null_vector_outcome(table, opt.p, field);
}

Outcome cmd_top_dims(const Options& opt) {
  level_of(opt.p);
  BracketTable table;
  return top_dims_outcome(table, opt.p, opt.charge.value_or(opt.p));
}

Outcome cmd_spectral_flow(Options opt) {
  if (opt.p == 0) opt.p = 5;
  level_of(opt.p);
  const int grid = opt.grid.value_or(3);
  const int depth = opt.depth.value_or(3);
  const int charge = opt.charge.value_or(opt.p);
  BracketTable table(faulted_table(opt.fault));
  const Outcome automorphism = flow_automorphism_outcome(table, grid);
  const Outcome twists = twist_outcome(table, opt.p, depth, charge);
  Outcome o;
  o.inputs = json{{"p", opt.p}, {"grid", grid}, {"depth", depth}, {"charge", charge}};
  o.results = json{{"automorphism", automorphism.results}, {"twists", twists.results}};
  o.verdict = combine(automorphism.verdict, twists.verdict);
  return o;
}

Outcome cmd_central_charge(const Options& opt) {
  if ((opt.p != 0) == !opt.k.empty()) throw UsageError("central-charge: give exactly one of --p and --k");
  Outcome o;
  if (opt.p != 0) {
    const Level level = level_of(opt.p);
    const Rational by_k = central_charge(Scalar(level.k())).constant_value();
    const Rational by_p = central_charge_from_p(level);
    o.inputs = json{{"p", opt.p}};
    o.results = json{{"k", str(level.k())}, {"c", str(by_k)}, {"c_from_k", str(by_k)}, {"c_from_p", str(by_p)},
                     {"forms_equal", by_k == by_p}};
    o.verdict = by_k == by_p ? Status::Verified : Status::Mismatch;
  } else {
    const Rational k = k_of(opt.k);
    if (k == -3) throw UsageError("central-charge: k = -3 is the critical level");
    const Rational c = central_charge(Scalar(k)).constant_value();
    o.inputs = json{{"k", str(k)}};
    o.results = json{{"k", str(k)}, {"c", str(c)}, {"c_from_k", str(c)}};
  }
  return o;
}

Outcome cmd_verify(const Options& opt) {
  if (opt.profile != "quick" && opt.profile != "full") throw UsageError("--profile: expected quick or full");
  const bool full = opt.profile == "full";
  BracketTable table(faulted_table(opt.fault));
  struct Check {
    std::string name;
    std::function<Outcome()> run;
  };
  std::vector<Check> checks = {
      {"brackets", [&] { return bracket_outcome(table, 3); }},
      {"spectral-flow-automorphism", [&] { return flow_automorphism_outcome(table, 3); }},
      {"weights", [&] { return weights_outcome({3, 5, 7, 9}); }},
      {"vacuum-collapse-p3", [&] { return collapse_outcome(table, 3, 4); }},
      {"null-vector-p5", [&] { return null_vector_outcome(table, 5, Field::Gplus); }},
      {"top-dims-p5", [&] { return top_dims_outcome(table, 5, 5); }},
      {"twist-p5", [&] { return twist_outcome(table, 5, 3, 5); }},
  };
  if (full) {
    checks.push_back({"jacobi", [&] { return jacobi_outcome(table, 2, 3, jacobi_levels(opt)); }});
    checks.push_back({"null-vector-g-minus-p5", [&] { return null_vector_outcome(table, 5, Field::Gminus); }});
    checks.push_back({"null-vector-p7", [&] { return null_vector_outcome(table, 7, Field::Gplus); }});
    checks.push_back({"top-dims-p7", [&] { return top_dims_outcome(table, 7, 7); }});
    checks.push_back({"twist-p7", [&] { return twist_outcome(table, 7, 3, 7); }});
  }
  Outcome o;
  o.inputs = json{{"profile", opt.profile}};
  if (!opt.fault.empty()) o.inputs["inject_fault"] = opt.fault;
  json rows = json::array();
  json failing = json::array();
  for (const auto& c : checks) {
    Status s;
    try {
      s = c.run().verdict;
    } catch (const std::exception& e) {
      s = Status::Mismatch;
    }
    rows.push_back(json{{"check", c.name}, {"verdict", std::string(name(s))}});
    if (s != Status::Verified) failing.push_back(c.name);
    o.verdict = combine(o.verdict, s);
  }
  o.results = json{{"checks", rows}, {"failing", failing}};
  return o;
}

// ---------------------------------------------------------------------------
// Output

std::string raw_cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (!v.is_array()) return v.dump();
  std::string s;
  for (std::size_t n = 0; n < v.size(); ++n) s += (n ? " " : "") + raw_cell(v[n]);
  return s;
}

std::string csv_cell(const json& v) {
  const std::string s = raw_cell(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return quoted + "\"";
}

void flatten(const json& v, const std::string& path, std::vector<std::pair<std::string, json>>& out) {
  if (v.is_object() && !v.empty()) {
    for (const auto& [key, item] : v.items()) flatten(item, path.empty() ? key : path + "." + key, out);
  } else if (v.is_array() && !v.empty() && (v.front().is_object() || v.front().is_array())) {
    for (std::size_t n = 0; n < v.size(); ++n) flatten(v[n], path + "." + std::to_string(n), out);
  } else {
    out.emplace_back(path, v);
  }
}

bool is_table(const json& v) {
  if (!v.is_array()) return false;
  for (const auto& row : v)
    if (!row.is_object()) return false;
  return true;
}

/// Tabular results print as one row per record (scalar sibling fields
/// repeated as leading columns); anything else prints as path,value pairs.
void write_csv(const json& report, std::ostream& out) {
  const json& results = report["results"];
  const json* rows = nullptr;
  json prefix = json::object();
  if (is_table(results) && !results.empty()) {
    rows = &results;
  } else if (results.is_object()) {
    const json* only = nullptr;
    int tables = 0;
    for (const auto& [key, item] : results.items()) {
      if (is_table(item) && !item.empty()) {
        ++tables;
        only = &item;
      } else if (!item.is_object() && !item.is_array()) {
        prefix[key] = item;
      }
    }
    bool nested = false;
    for (const auto& [key, item] : results.items())
      if (item.is_object() || (item.is_array() && !is_table(item))) nested = true;
    if (tables == 1 && !nested) rows = only;
  }
  if (rows) {
    std::vector<std::string> columns;
    for (const auto& [key, item] : prefix.items()) columns.push_back(key);
    std::set<std::string> seen;
    std::vector<std::string> row_columns;
    for (const auto& row : *rows)
      for (const auto& [key, item] : row.items())
        if (seen.insert(key).second) row_columns.push_back(key);
    std::sort(row_columns.begin(), row_columns.end());
    columns.insert(columns.end(), row_columns.begin(), row_columns.end());
    for (std::size_t n = 0; n < columns.size(); ++n) out << (n ? "," : "") << columns[n];
    out << "\n";
    for (const auto& row : *rows) {
      for (std::size_t n = 0; n < columns.size(); ++n) {
        const std::string& c = columns[n];
        const json& cell = row.contains(c) ? row[c] : prefix.contains(c) ? prefix[c] : json("");
        out << (n ? "," : "") << csv_cell(cell);
      }
      out << "\n";
    }
  } else {
    std::vector<std::pair<std::string, json>> flat;
    flatten(results, "", flat);
    out << "path,value\n";
    for (const auto& [path, v] : flat) out << csv_cell(path) << "," << csv_cell(v) << "\n";
  }
  out << "# verdict," << report["verdict"].get<std::string>() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Exact computations for the Bershadsky-Polyakov algebra W_3^(2)", "bpw"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  struct Spec {
    const char* name;
    const char* help;
    std::function<Outcome(const Options&)> run;
  };
  const std::vector<Spec> specs = {
      {"brackets", "Export the OPE-derived mode brackets as JSON", cmd_brackets},
      {"verify-brackets", "Compare derived brackets with the published list", cmd_verify_brackets},
      {"verify-jacobi", "Bracket soundness of module actions on random vectors", cmd_verify_jacobi},
      {"simples", "List the highest weights L(xi_{i,j}, chi_{i,j}) at level p", cmd_simples},
      {"character", "Graded dimensions of a simple quotient in a window", cmd_character},
      {"null-vector", "Membership of (G+_{-1})^{p-2} (or (G-_{-2})^{p-2}) in the maximal ideal", cmd_null_vector},
      {"top-dims", "Top-space dimensions of the simple modules at level p", cmd_top_dims},
      {"spectral-flow", "Spectral-flow automorphism check and module twists", cmd_spectral_flow},
      {"central-charge", "Central charge from k and from p", cmd_central_charge},
      {"verify", "Run every check of a profile", cmd_verify},
  };
  std::map<CLI::App*, const Spec*> by_app;
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    by_app[sub] = &spec;
    const std::string n = spec.name;
    const bool needs_p = n == "simples" || n == "character" || n == "null-vector" || n == "top-dims";
    if (needs_p) sub->add_option("--p", opt.p, "Odd level parameter p >= 3 (k = p/2 - 3)")->required();
    if (n == "spectral-flow") sub->add_option("--p", opt.p, "Odd level parameter p >= 3 (default 5)");
    if (n == "central-charge") sub->add_option("--p", opt.p, "Odd level parameter p >= 3");
    if (n == "brackets" || n == "central-charge" || n == "verify-jacobi")
      sub->add_option("--k", opt.k, "Exact rational level, e.g. -1/2");
    if (n == "character") {
      sub->add_option("--i", opt.i, "Top dimension index i (omit with --j for the vacuum)");
      sub->add_option("--j", opt.j, "Flowed top dimension index j");
    }
    if (n == "character" || n == "verify-jacobi" || n == "spectral-flow")
      sub->add_option("--depth", opt.depth, "Maximal depth D");
    if (n == "character" || n == "top-dims" || n == "spectral-flow")
      sub->add_option("--charge", opt.charge, "Charge window C");
    if (n == "brackets" || n == "verify-brackets" || n == "verify-jacobi" || n == "spectral-flow")
      sub->add_option("--grid", opt.grid, "Mode index range [-N, N]");
    if (n == "verify") sub->add_option("--profile", opt.profile, "quick or full")->default_val("quick");
    if (n == "null-vector") sub->add_option("--field", opt.field, "G+ or G-")->default_val("G+");
    if (n == "verify" || n == "verify-brackets" || n == "verify-jacobi" || n == "spectral-flow")
      sub->add_option("--inject-fault", opt.fault)->group("");
    sub->add_option("--format", opt.format, "json or csv")->default_val("json")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("--timing", opt.timing, "Include wall-clock timing in the report");
  }

  // "--k -1/2": CLI11 reads a leading '-' as the start of an option, so
  // negative values are attached to their flag.
  std::vector<std::string> argv_store{"bpw"};
  for (std::size_t n = 0; n < args.size(); ++n) {
    const bool negative_value = n + 1 < args.size() && args[n].rfind("--", 0) == 0 &&
                                args[n].find('=') == std::string::npos && args[n + 1].size() > 1 &&
                                args[n + 1][0] == '-' && std::isdigit(static_cast<unsigned char>(args[n + 1][1]));
    if (negative_value) {
      argv_store.push_back(args[n] + "=" + args[n + 1]);
      ++n;
    } else {
      argv_store.push_back(args[n]);
    }
  }
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const Spec& spec = *by_app.at(chosen);
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = spec.run(opt);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << chosen->help();
    return kUsage;
  } catch (const TruncationError& e) {
    outcome.verdict = Status::Inconclusive;
    outcome.results = json{{"error", e.what()}};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  json report{{"command", spec.name}, {"inputs", outcome.inputs}, {"results", outcome.results},
              {"verdict", std::string(name(outcome.verdict))}};
  if (opt.timing) report["timing"] = json{{"seconds", seconds}};
  if (opt.format == "csv")
    write_csv(report, out);
  else
    out << report.dump(2) << "\n";

  switch (outcome.verdict) {
    case Status::Verified: return kOk;
    case Status::Mismatch: return kMismatch;
    case Status::Inconclusive: return kInconclusive;
  }
  return kMismatch;
}

}  // namespace bp::cli
