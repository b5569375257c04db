#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bounds_internal.hpp"
#include "ivd/simplex.hpp"
#include "ivd/solver.hpp"

namespace ivd {

// Relaxation layout: one x variable per undecided candidate; for the
// identifiability threshold each short pair adds one variable per still
// uncovered class, linked to the candidates able to cover it.
LpResult lp_bound(const CoverModel& model, const Fixing& fixing) {
  const int m = model.candidate_count();
  std::vector<char> included(m, 0), decided(m, 0);
  for (int k : fixing.include) {
    if (k < 0 || k >= m) throw std::out_of_range("fixing index out of range");
    included[k] = decided[k] = 1;
  }
  for (int k : fixing.exclude) {
    if (k < 0 || k >= m) throw std::out_of_range("fixing index out of range");
    if (included[k]) throw std::invalid_argument("candidate both included and excluded");
    decided[k] = 1;
  }

  const auto state = detail::coverage_from(model, fixing.include);

  std::vector<int> var_of(m, -1);
  int nvars = 0;
  for (int k = 0; k < m; ++k)
    if (!decided[k]) var_of[k] = nvars++;

  struct ClassVar {
    int pair;
    const CoverRow* row;
  };
  std::vector<ClassVar> class_vars;
  std::vector<std::vector<int>> pair_class_vars(model.pair_count());
  const bool ident = model.kind() == ConditionKind::Identifiability;
  if (ident) {
    for (const CoverRow& row : model.rows()) {
      const int p = row.pair;
      if (detail::remaining_pair_units(model.kind(), state.forward[p], state.backward[p],
                                       state.null_seen[p]) == 0)
        continue;
      bool covered = (row.kind == RowKind::Forward && state.forward[p]) ||
                     (row.kind == RowKind::Backward && state.backward[p]) ||
                     (row.kind == RowKind::Null && state.null_seen[p]);
      if (covered) continue;
      pair_class_vars[p].push_back(nvars + static_cast<int>(class_vars.size()));
      class_vars.push_back({p, &row});
    }
  }

  const int total_vars = nvars + static_cast<int>(class_vars.size());
  if (total_vars == 0) {
    LpResult res;
    res.feasible = state.remaining_units == 0;
    res.candidate_values.assign(m, 0.0);
    for (int k = 0; k < m; ++k)
      if (included[k]) res.candidate_values[k] = 1.0;
    return res;
  }

  LinearProgram lp(total_vars);
  const CostVector& costs = model.costs();
  for (int k = 0; k < m; ++k)
    if (var_of[k] >= 0) lp.set_objective(var_of[k], costs[k]);

  if (ident) {
    for (std::size_t cv = 0; cv < class_vars.size(); ++cv) {
      const int v = nvars + static_cast<int>(cv);
      std::vector<std::pair<int, double>> link;
      for (int k : class_vars[cv].row->covering)
        if (var_of[k] >= 0) link.push_back({var_of[k], 1.0});
      link.push_back({v, -1.0});
      lp.add_ge(std::move(link), 0.0);     // class needs covering mass behind it
      lp.add_le({{v, 1.0}}, 1.0);          // a class counts at most once
    }
    for (int p = 0; p < model.pair_count(); ++p) {
      const int have =
          int(state.forward[p]) + int(state.backward[p]) + int(state.null_seen[p]);
      const int need = 2 - std::min(2, have);
      if (need == 0) continue;
      std::vector<std::pair<int, double>> terms;
      for (int v : pair_class_vars[p]) terms.push_back({v, 1.0});
      lp.add_ge(std::move(terms), static_cast<double>(need));
    }
  } else {
    for (const CoverRow& row : model.rows()) {
      const int p = row.pair;
      bool covered = false;
      switch (row.kind) {
        case RowKind::Forward: covered = state.forward[p]; break;
        case RowKind::Backward: covered = state.backward[p]; break;
        case RowKind::Null: covered = state.null_seen[p]; break;
        case RowKind::Separation: covered = state.forward[p] || state.backward[p]; break;
      }
      if (covered) continue;
      std::vector<std::pair<int, double>> terms;
      for (int k : row.covering)
        if (var_of[k] >= 0) terms.push_back({var_of[k], 1.0});
      lp.add_ge(std::move(terms), 1.0);
    }
  }

  const auto sol = lp.solve();
  LpResult res;
  res.candidate_values.assign(m, 0.0);
  for (int k = 0; k < m; ++k)
    if (included[k]) res.candidate_values[k] = 1.0;
  if (sol.status != LinearProgram::Status::Optimal) return res;  // feasible stays false
  res.feasible = true;
  res.value = sol.value;
  for (int k = 0; k < m; ++k)
    if (var_of[k] >= 0) res.candidate_values[k] = std::clamp(sol.x[var_of[k]], 0.0, 1.0);
  return res;
}

}  // namespace ivd
