#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bp/ope.hpp"

namespace bp {

/// Mode brackets derived from an OPE table, expressed in the L basis.
/// Results are memoized; the table is safe to share between threads.
class BracketTable {
 public:
  explicit BracketTable(OpeTable table = OpeTable::published());

  /// [a, b] for families J, G+, G-, L, T. L modes are expanded as
  /// L_n = T_n - (n+1)/2 J_n before applying the commutator formula.
  const ModeExpression& bracket(ModeSymbol a, ModeSymbol b) const;

  const OpeTable& opes() const { return table_; }

 private:
  ModeExpression compute(ModeSymbol a, ModeSymbol b) const;

  OpeTable table_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<ModeSymbol, ModeSymbol>, ModeExpression> cache_;
};

/// c(k) = -4(k+1)(2k+3)/(k+3).
Scalar central_charge_symbolic();

/// How to read the central term of [G+_m, G-_n]. The printed formula has
/// m(m+1)/2; the OPE together with the stated mode expansions forces m(m-1)/2.
enum class CentralReading { Printed, Corrected };

/// The published closed-form bracket list, for families the list covers:
/// (J,J), (J,G±), (L,J), (L,G±), (G+,G-), (G±,G±), and (L,L) in Virasoro form.
/// Returns nullopt for other ordered pairs.
std::optional<ModeExpression> published_bracket(ModeSymbol a, ModeSymbol b,
                                            CentralReading reading = CentralReading::Corrected);

struct CheckTally {
  std::string name;
  int checked = 0;
  std::vector<std::string> mismatches;
  bool ok() const { return mismatches.empty(); }
};

struct BracketReport {
  int grid_lo = 0;
  int grid_hi = 0;
  /// One tally per published bracket family, plus "[L_m,L_n]".
  std::vector<CheckTally> families;
  CheckTally antisymmetry{"antisymmetry", 0, {}};
  CheckTally bookkeeping{"charge/weight bookkeeping", 0, {}};
  /// [G+_m, G-_n] grid points where the printed central term disagrees with
  /// the derived bracket.
  CheckTally printed_central{"[G+_m,G-_n] printed m(m+1)/2 central term", 0, {}};
  std::vector<std::string> conventions;

  bool ok() const;
};

/// Compares the derived brackets with the published list on m, n ∈ [lo, hi].
BracketReport verify_bracket_table(const BracketTable& brackets, int lo, int hi);

}  // namespace bp
