#pragma once

#include <string>
#include <vector>

#include "ivd/model.hpp"

namespace ivd {

struct TableOptions {
  std::vector<int> ns;      // one row per variable count
  std::vector<int> ks;      // one column per intervention-size cap
  bool markdown = true;     // otherwise csv
  bool with_times = false;  // append per-cell wall seconds (non-deterministic)
  double time_limit_s = 0.0;
  int threads = 1;
};

// Minimum experiment counts per (N, k_max) cell for one condition kind.
// Identifiability leaves cells with k_max > floor(N/2) blank; the other
// kinds print the value at the capped size, which is what the pool builds
// anyway. Cells the solver could not prove show the incumbent and its
// matching dual bound as `incumbent (>=bound)`.
std::string objective_table(ConditionKind kind, const TableOptions& opt);

// Every size profile an optimal identifiability design can have, per cell:
// "(0,2,2) (1,1,1) ..." in lexicographic order.
std::string size_configuration_table(const TableOptions& opt);

// The size profile of the optimal identifiability design with the fewest
// intervened variables in total, per cell.
std::string preferred_configuration_table(const TableOptions& opt);

}  // namespace ivd
