#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "ivd/combinatorics.hpp"
#include "ivd/model.hpp"

namespace ivd::detail {

// Returned by signature_min_columns when no column count up to kMaxColumns
// works; treated as an infeasibility marker by callers.
inline constexpr int kColumnsInfeasible = 1 << 20;
inline constexpr int kMaxColumns = 64;

// Variables grouped by their membership pattern over the included columns:
// size of each group plus whether that shared pattern is all-ones (those
// variables sit inside every included intervention so far).
struct SignatureGroup {
  int size = 0;
  bool all_ones = true;   // variables inside every included intervention
  bool all_zeros = true;  // variables inside none of them
  bool dominated = false; // some other variable's partial signature is a
                          // strict superset of this one
};

std::vector<SignatureGroup> group_by_partial_signature(int n,
                                                       const std::vector<Intervention>& included);

// Total weight of the `count` lightest distinct bit vectors of the given
// width; saturates alongside binomial() and returns a huge value when
// 2^bits < count.
std::uint64_t min_weight_of_distinct(std::uint64_t count, int bits);

// Can `t` further columns, each intervening on at most `limit` variables,
// complete the given partial signatures for this condition kind? Counting
// relaxation only: necessary, not sufficient.
bool signature_t_feasible(ConditionKind kind, const std::vector<SignatureGroup>& groups, int t,
                          int limit);

// Least t accepted by signature_t_feasible, or kColumnsInfeasible.
int signature_min_columns(ConditionKind kind, const std::vector<SignatureGroup>& groups,
                          int limit);

// Per-pair class coverage accumulated from a set of chosen candidates.
struct CoverageState {
  std::vector<std::uint8_t> forward, backward, null_seen;  // per pair: count > 0 flags as 0/1
  int remaining_units = 0;
};

CoverageState coverage_from(const CoverModel& model, const std::vector<int>& included);

int remaining_pair_units(ConditionKind kind, bool f, bool b, bool nl);

// Most new units any single undecided candidate can cover against the given
// coverage. `decided[k]` marks candidates excluded from consideration.
int max_new_units(const CoverModel& model, const CoverageState& state,
                  const std::vector<char>& decided);

}  // namespace ivd::detail
