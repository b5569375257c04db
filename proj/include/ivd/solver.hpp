#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ivd/model.hpp"

namespace ivd {

enum class BoundingMode { Combinatorial, LpRelaxation };

enum class SolveStatus { Optimal, Feasible, Infeasible, NoCandidates };

const char* to_string(SolveStatus s);

struct Incumbent {
  Selection selection;
  double objective = 0.0;
  double dual_bound = 0.0;
  long long nodes = 0;
  double wall_s = 0.0;
};

struct SolveParams {
  double time_limit_s = 0.0;  // 0 disables the limit
  long long node_limit = 0;   // 0 disables the limit
  BoundingMode bounding = BoundingMode::Combinatorial;
  int threads = 1;  // 1 = serial, >1 = parallel root split, 0 = hardware default
  std::function<void(const Incumbent&)> on_incumbent;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::Infeasible;
  std::optional<Selection> best;
  double objective = 0.0;
  double dual_bound = 0.0;
  long long nodes = 0;
  double wall_s = 0.0;
};

// Branch-and-bound minimization over subsets of the candidate pool. When it
// proves optimality it returns the canonically-first optimal selection: the
// one whose ascending index sequence is lexicographically smallest (a proper
// prefix counts as smaller). Under a time or node limit the result may be
// any incumbent, with dual_bound reporting the proven lower bound.
SolveOutcome solve(const CoverModel& model, const SolveParams& params = {});

// All optimal selections, each as an ascending index sequence, listed in
// lexicographic order of those sequences. Throws std::logic_error when
// optimality cannot be established (infeasible model or limits hit).
std::vector<Selection> enumerate_optima(const CoverModel& model, const SolveParams& params = {});

enum class LexObjective { MinTotalSize, MinMaxSize };

// Among optimal selections, pick the one minimizing total intervention size
// (or the largest single intervention size), breaking remaining ties
// canonically. Intended for instances small enough to enumerate optima.
SolveOutcome solve_lexicographic(const CoverModel& model, LexObjective objective,
                                 const SolveParams& params = {});

// Census of intervention-size profiles across all optimal selections: each
// distinct ascending size tuple once, in lexicographic order.
std::vector<std::vector<int>> size_configurations(const CoverModel& model,
                                                  const SolveParams& params = {});

// Partial assignment of candidates used when bounding inside the tree.
struct Fixing {
  std::vector<int> include;
  std::vector<int> exclude;
};

struct LpResult {
  bool feasible = false;
  double value = 0.0;                    // objective over the undecided part
  std::vector<double> candidate_values;  // x_k per pool candidate (fixed ones at 0/1)
};

// LP relaxation of the covering model under a partial fixing. For the
// identifiability model the relaxation carries per-pair class variables and
// two-of-three threshold rows.
LpResult lp_bound(const CoverModel& model, const Fixing& fixing = {});

// Lower bound on how many further candidates any completion of the fixing
// needs: the larger of the coverage ratio bound and a signature-counting
// bound on distinguishing power. Exposed for testing.
int counting_bound(const CoverModel& model, const Fixing& fixing = {});

}  // namespace ivd
