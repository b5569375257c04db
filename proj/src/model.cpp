#include "ivd/model.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace ivd {

const char* to_string(ConditionKind k) {
  switch (k) {
    case ConditionKind::CC: return "cc";
    case ConditionKind::UPC: return "upc";
    case ConditionKind::OPC: return "opc";
    case ConditionKind::Identifiability: return "identifiability";
  }
  return "?";
}

ConditionKind condition_kind_from_string(const std::string& s) {
  if (s == "cc") return ConditionKind::CC;
  if (s == "upc") return ConditionKind::UPC;
  if (s == "opc") return ConditionKind::OPC;
  if (s == "identifiability" || s == "id") return ConditionKind::Identifiability;
  throw std::invalid_argument("unknown condition kind: " + s);
}

const char* to_string(RowKind k) {
  switch (k) {
    case RowKind::Forward: return "forward";
    case RowKind::Backward: return "backward";
    case RowKind::Null: return "null";
    case RowKind::Separation: return "separation";
  }
  return "?";
}

Selection Selection::of(std::initializer_list<int> idx) {
  return from_indices(std::vector<int>(idx));
}

Selection Selection::from_indices(std::vector<int> idx) {
  for (int k : idx)
    if (k < 0) throw std::invalid_argument("candidate index must be non-negative");
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return Selection{std::move(idx)};
}

CoverModel CoverModel::build(CandidatePool pool, ConditionKind kind, CostVector costs) {
  pool.spec.validate();
  CoverModel m;
  m.kind_ = kind;
  if (costs.empty()) {
    costs.assign(pool.sets.size(), 1.0);
    m.unit_costs_ = true;
  } else {
    if (static_cast<int>(costs.size()) != pool.size())
      throw std::invalid_argument("cost vector length must equal candidate count");
    for (double c : costs)
      if (!(c >= 0.0) || !std::isfinite(c))
        throw std::invalid_argument("costs must be finite and non-negative");
    m.unit_costs_ = std::all_of(costs.begin(), costs.end(), [](double c) { return c == 1.0; });
  }
  m.costs_ = std::move(costs);

  int n = pool.spec.n;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m.pairs_.emplace_back(i, j);

  auto covering_of = [&](int i, int j, RowKind rk) {
    std::vector<int> cov;
    for (int k = 0; k < pool.size(); ++k) {
      PairClass c = classify(i, j, pool.sets[k]);
      bool match = false;
      switch (rk) {
        case RowKind::Forward: match = c == PairClass::Forward; break;
        case RowKind::Backward: match = c == PairClass::Backward; break;
        case RowKind::Null: match = c == PairClass::Null; break;
        case RowKind::Separation:
          match = c == PairClass::Forward || c == PairClass::Backward;
          break;
      }
      if (match) cov.push_back(k);
    }
    return cov;
  };

  for (int p = 0; p < static_cast<int>(m.pairs_.size()); ++p) {
    auto [i, j] = m.pairs_[p];
    switch (kind) {
      case ConditionKind::CC:
        m.rows_.push_back({p, RowKind::Null, covering_of(i, j, RowKind::Null)});
        break;
      case ConditionKind::UPC:
        m.rows_.push_back({p, RowKind::Separation, covering_of(i, j, RowKind::Separation)});
        break;
      case ConditionKind::OPC:
        m.rows_.push_back({p, RowKind::Forward, covering_of(i, j, RowKind::Forward)});
        m.rows_.push_back({p, RowKind::Backward, covering_of(i, j, RowKind::Backward)});
        break;
      case ConditionKind::Identifiability:
        m.rows_.push_back({p, RowKind::Forward, covering_of(i, j, RowKind::Forward)});
        m.rows_.push_back({p, RowKind::Backward, covering_of(i, j, RowKind::Backward)});
        m.rows_.push_back({p, RowKind::Null, covering_of(i, j, RowKind::Null)});
        break;
    }
  }
  m.pool_ = std::move(pool);
  return m;
}

int CoverModel::pair_index(int i, int j) const {
  if (i > j) std::swap(i, j);
  if (i < 0 || j >= n() || i == j) throw std::invalid_argument("bad pair");
  // pairs are emitted in lexicographic (i, j) order
  int before = i * (2 * n() - i - 1) / 2;
  return before + (j - i - 1);
}

int CoverModel::total_requirement_units() const {
  return pair_count() * pair_requirement();
}

FeasibilityReport CoverModel::check(const Selection& sel) const {
  for (int k : sel.chosen)
    if (k < 0 || k >= candidate_count())
      throw std::out_of_range("selection refers to candidate " + std::to_string(k) +
                              " outside the pool");
  FeasibilityReport rep;
  rep.pairs.reserve(pairs_.size());
  for (auto [i, j] : pairs_) {
    PairConditions pc;
    pc.i = i;
    pc.j = j;
    for (int k : sel.chosen) {
      switch (classify(i, j, pool_.sets[k])) {
        case PairClass::Forward: pc.forward = true; break;
        case PairClass::Backward: pc.backward = true; break;
        case PairClass::Null: pc.null_covered = true; break;
        case PairClass::BothIn: break;
      }
    }
    switch (kind_) {
      case ConditionKind::CC: pc.satisfied = pc.null_covered; break;
      case ConditionKind::UPC: pc.satisfied = pc.forward || pc.backward; break;
      case ConditionKind::OPC: pc.satisfied = pc.forward && pc.backward; break;
      case ConditionKind::Identifiability: pc.satisfied = pc.covered_classes() >= 2; break;
    }
    if (!pc.satisfied) ++rep.violated;
    rep.pairs.push_back(pc);
  }
  rep.feasible = rep.violated == 0;
  return rep;
}

double CoverModel::objective_value(const Selection& sel) const {
  double total = 0.0;
  for (int k : sel.chosen) {
    if (k < 0 || k >= candidate_count()) throw std::out_of_range("selection index out of range");
    total += costs_[k];
  }
  return total;
}

void CoverModel::write_text(std::ostream& os) const {
  os << "model " << to_string(kind_) << " n=" << n() << " limit=" << pool_.spec.effective_limit()
     << " candidates=" << candidate_count() << " pairs=" << pair_count() << "\n";
  if (unit_costs_) {
    os << "costs unit\n";
  } else {
    os << "costs";
    for (double c : costs_) os << " " << c;
    os << "\n";
  }
  for (int k = 0; k < candidate_count(); ++k) {
    os << "candidate " << k << " ";
    const auto& s = pool_.sets[k];
    if (s.empty()) {
      os << "-";
    } else {
      bool first = true;
      for (int v : s.members()) {
        if (!first) os << " ";
        os << v;
        first = false;
      }
    }
    os << "\n";
  }
  for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
    const auto& row = rows_[r];
    auto [i, j] = pairs_[row.pair];
    os << "row " << r << " pair " << i << " " << j << " " << to_string(row.kind) << " :";
    for (int k : row.covering) os << " " << k;
    os << "\n";
  }
  if (kind_ == ConditionKind::Identifiability) {
    for (auto [i, j] : pairs_) os << "threshold pair " << i << " " << j << " needs 2\n";
  }
}

}  // namespace ivd
