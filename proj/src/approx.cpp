#include "ivd/approx.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "bounds_internal.hpp"
#include "ivd/solver.hpp"

namespace ivd {

namespace {

constexpr double kTieEps = 1e-9;

double harmonic(int d) {
  double h = 0.0;
  for (int i = 1; i <= d; ++i) h += 1.0 / i;
  return std::max(h, 1.0);
}

// Certified cost floor: any solution needs at least `count` candidates, so
// it costs at least the sum of the `count` cheapest ones.
double cost_floor(const CoverModel& model, int count) {
  if (count >= detail::kColumnsInfeasible) return std::numeric_limits<double>::infinity();
  std::vector<double> costs = model.costs();
  std::sort(costs.begin(), costs.end());
  double s = 0.0;
  for (int i = 0; i < count && i < static_cast<int>(costs.size()); ++i) s += costs[i];
  return s;
}

}  // namespace

ApproxResult greedy(const CoverModel& model) {
  const int m = model.candidate_count();
  ApproxResult res;
  res.lower_bound = cost_floor(model, counting_bound(model, {}));
  if (m == 0) return res;

  detail::CoverageState state = detail::coverage_from(model, {});
  std::vector<char> chosen(m, 0);
  const std::vector<char> none(m, 0);
  res.factor = harmonic(detail::max_new_units(model, state, none));

  std::vector<int> picks;
  const CostVector& cost = model.costs();
  while (state.remaining_units > 0) {
    // New units per candidate against the current coverage.
    std::vector<int> units(m, 0);
    for (const CoverRow& row : model.rows()) {
      const int p = row.pair;
      const bool f = state.forward[p], b = state.backward[p], nl = state.null_seen[p];
      if (detail::remaining_pair_units(model.kind(), f, b, nl) == 0) continue;
      bool covered = false;
      switch (row.kind) {
        case RowKind::Forward: covered = f; break;
        case RowKind::Backward: covered = b; break;
        case RowKind::Null: covered = nl; break;
        case RowKind::Separation: covered = f || b; break;
      }
      if (covered) continue;
      for (int k : row.covering)
        if (!chosen[k]) ++units[k];
    }
    // Highest units-per-cost wins; cross-multiplied so zero costs order as
    // infinite scores; ties keep the earlier candidate.
    int best = -1;
    for (int k = 0; k < m; ++k) {
      if (chosen[k] || units[k] == 0) continue;
      if (best < 0) {
        best = k;
        continue;
      }
      const double lhs = static_cast<double>(units[k]) * cost[best];
      const double rhs = static_cast<double>(units[best]) * cost[k];
      if (lhs > rhs + kTieEps) best = k;
    }
    if (best < 0) {
      res.selection = Selection::from_indices(picks);
      res.objective = model.objective_value(res.selection);
      return res;  // stalled: the model itself is infeasible
    }
    chosen[best] = 1;
    picks.push_back(best);
    const Intervention s = model.pool().sets[best];
    for (int p = 0; p < model.pair_count(); ++p) {
      auto [i, j] = model.pair_vars(p);
      switch (classify(i, j, s)) {
        case PairClass::Forward: state.forward[p] = 1; break;
        case PairClass::Backward: state.backward[p] = 1; break;
        case PairClass::Null: state.null_seen[p] = 1; break;
        case PairClass::BothIn: break;
      }
    }
    int u = 0;
    for (int p = 0; p < model.pair_count(); ++p)
      u += detail::remaining_pair_units(model.kind(), state.forward[p], state.backward[p],
                                        state.null_seen[p]);
    state.remaining_units = u;
  }

  res.feasible = true;
  res.selection = Selection::from_indices(picks);
  res.objective = model.objective_value(res.selection);
  return res;
}

ApproxResult lp_round(const CoverModel& model) {
  ApproxResult res;
  LpResult lp = lp_bound(model, {});
  res.lower_bound = lp.value;
  if (!lp.feasible) return res;

  std::size_t f = 1;
  for (const CoverRow& row : model.rows()) f = std::max(f, row.covering.size());
  const bool ident = model.kind() == ConditionKind::Identifiability;
  res.factor = ident ? 2.0 * static_cast<double>(f) : static_cast<double>(f);

  const double threshold = 1.0 / res.factor - kTieEps;
  std::vector<int> picks;
  for (int k = 0; k < model.candidate_count(); ++k)
    if (lp.candidate_values[k] >= threshold) picks.push_back(k);

  res.selection = Selection::from_indices(picks);
  res.objective = model.objective_value(res.selection);
  res.feasible = model.check(res.selection).feasible;
  return res;
}

}  // namespace ivd
