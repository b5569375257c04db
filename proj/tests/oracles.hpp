// Independent reference implementations used to cross-check the library.
// Everything here is computed straight from the definitions — exhaustive
// subset enumeration, exhaustive path enumeration — and shares no logic with
// the code under test.

#pragma once

#include <vector>

#include "ivd/causal.hpp"
#include "ivd/combinatorics.hpp"
#include "ivd/model.hpp"

namespace oracle {

// Does the selection satisfy the pairwise condition for variables (i, j)?
bool covers_pair(ivd::ConditionKind kind, int i, int j,
                 const std::vector<ivd::Intervention>& selection);

// ... and for every unordered pair over n variables?
bool feasible(ivd::ConditionKind kind, int n, const std::vector<ivd::Intervention>& selection);

struct BestSubsets {
  bool feasible = false;
  double cost = 0.0;
  // Every minimum-cost feasible selection as an ascending candidate-index
  // list, in lexicographic order.
  std::vector<std::vector<int>> optima;
};

// Full 2^m enumeration over the pool (m <= 24 guarded).
BestSubsets best_subsets(ivd::ConditionKind kind, const ivd::CandidatePool& pool,
                         const std::vector<double>& costs);

// d-separation decided by enumerating every simple undirected path and
// applying the blocking rules position by position.
bool d_separated_paths(const ivd::Dag& g, int i, int j, ivd::VarSet z);

}  // namespace oracle
