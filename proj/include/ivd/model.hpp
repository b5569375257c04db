#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ivd/combinatorics.hpp"

namespace ivd {

// Which pairwise condition family the covering model encodes:
//   CC  - each pair needs an intervention containing neither variable
//   UPC - each pair needs an intervention containing exactly one of them
//   OPC - each pair needs that in both directions (one with i only, one with j only)
//   Identifiability - each pair needs two distinct classes among
//                     {forward, backward, null}
enum class ConditionKind { CC, UPC, OPC, Identifiability };

const char* to_string(ConditionKind k);
ConditionKind condition_kind_from_string(const std::string& s);  // throws on unknown

using CostVector = std::vector<double>;

struct Selection {
  std::vector<int> chosen;  // candidate indices, sorted ascending, unique

  static Selection of(std::initializer_list<int> idx);
  static Selection from_indices(std::vector<int> idx);  // sorts, dedupes, rejects negatives
  int size() const { return static_cast<int>(chosen.size()); }
  bool operator==(const Selection&) const = default;
};

struct PairConditions {
  int i = 0, j = 0;  // i < j
  bool forward = false, backward = false, null_covered = false;
  bool satisfied = false;
  int covered_classes() const { return int(forward) + int(backward) + int(null_covered); }
};

struct FeasibilityReport {
  bool feasible = true;
  int violated = 0;
  std::vector<PairConditions> pairs;  // canonical pair order
};

enum class RowKind { Forward, Backward, Null, Separation };

const char* to_string(RowKind k);

struct CoverRow {
  int pair = -1;  // index into the model's pair list
  RowKind kind = RowKind::Forward;
  std::vector<int> covering;  // candidate indices whose class matches, ascending
};

// Set-covering view of a condition family over a candidate pool. Rows demand
// one covering candidate each; identifiability additionally requires, per
// pair, that at least two of its three class rows be covered (the per-pair
// forward/backward/null indicator variables of the underlying integer
// program are projected out into this threshold).
class CoverModel {
public:
  static CoverModel build(CandidatePool pool, ConditionKind kind, CostVector costs = {});

  const CandidatePool& pool() const { return pool_; }
  ConditionKind kind() const { return kind_; }
  const CostVector& costs() const { return costs_; }
  bool unit_costs() const { return unit_costs_; }
  int candidate_count() const { return pool_.size(); }
  int n() const { return pool_.spec.n; }

  int pair_count() const { return static_cast<int>(pairs_.size()); }
  std::pair<int, int> pair_vars(int p) const { return pairs_[p]; }
  int pair_index(int i, int j) const;  // i < j

  const std::vector<CoverRow>& rows() const { return rows_; }
  // Each covered class contributes one unit; a pair is satisfied once its
  // units reach this requirement. Identifiability accepts any two distinct
  // classes, the opposite-pair condition needs both of its rows.
  int pair_requirement() const {
    return kind_ == ConditionKind::Identifiability || kind_ == ConditionKind::OPC ? 2 : 1;
  }
  int total_requirement_units() const;

  FeasibilityReport check(const Selection& sel) const;  // throws on bad indices
  double objective_value(const Selection& sel) const;

  // Normalized plain-text export; format documented in the README.
  void write_text(std::ostream& os) const;

private:
  CandidatePool pool_;
  ConditionKind kind_ = ConditionKind::CC;
  CostVector costs_;
  bool unit_costs_ = true;
  std::vector<std::pair<int, int>> pairs_;
  std::vector<CoverRow> rows_;
};

}  // namespace ivd
