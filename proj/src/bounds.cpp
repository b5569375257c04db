#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>

#include "bounds_internal.hpp"
#include "ivd/solver.hpp"

namespace ivd::detail {

std::vector<SignatureGroup> group_by_partial_signature(
    int n, const std::vector<Intervention>& included) {
  // Key = membership bits across included columns, chunked into words so the
  // column count is unbounded.
  const int words = static_cast<int>(included.size()) / 64 + 1;
  std::map<std::vector<std::uint64_t>, SignatureGroup> by_sig;
  std::vector<std::uint64_t> key(words);
  for (int v = 0; v < n; ++v) {
    std::fill(key.begin(), key.end(), 0);
    bool all = true;
    for (std::size_t c = 0; c < included.size(); ++c) {
      if (included[c].contains(v))
        key[c / 64] |= std::uint64_t{1} << (c % 64);
      else
        all = false;
    }
    auto& g = by_sig[key];
    ++g.size;
    g.all_ones = all;
    g.all_zeros = std::all_of(key.begin(), key.end(),
                              [](std::uint64_t w) { return w == 0; });
  }
  std::vector<SignatureGroup> out;
  out.reserve(by_sig.size());
  for (auto& [ka, ga] : by_sig) {
    for (const auto& [kb, gb] : by_sig) {
      if (&ka == &kb) continue;
      bool subset = true;
      for (int w = 0; w < words && subset; ++w) subset = (ka[w] & ~kb[w]) == 0;
      if (subset) {
        ga.dominated = true;
        break;
      }
    }
    out.push_back(ga);
  }
  return out;
}

std::uint64_t min_weight_of_distinct(std::uint64_t count, int bits) {
  std::uint64_t weight = 0, remaining = count;
  for (int lvl = 0; lvl <= bits && remaining > 0; ++lvl) {
    std::uint64_t take = std::min(remaining, binomial(bits, lvl));
    weight += take * static_cast<std::uint64_t>(lvl);
    remaining -= take;
  }
  if (remaining > 0) return std::numeric_limits<std::uint64_t>::max() / 4;
  return weight;
}

namespace {

// Group of `size` variables sharing a partial signature: can their
// extensions over t columns be pairwise distinct (capacity), and what is the
// least total weight those extensions can carry?
bool distinct_fits(std::uint64_t size, int t, bool forbid_all_ones) {
  if (t >= 63) return true;
  std::uint64_t cap = (std::uint64_t{1} << t) - (forbid_all_ones ? 1 : 0);
  return size <= cap;
}

// Antichain requirements. Extensions over the t fresh columns must be
// pairwise incomparable within each group. A variable still outside every
// chosen set may take a weight-1 extension, but that column then becomes
// private: every other variable's partial signature is a superset of the
// empty one, so sharing the column would create a comparable pair. Choosing
// `a` such variables removes a columns from play entirely; the rest of the
// untouched group needs weight >= 2 each, and any other group of size g
// needs total weight >= max(g, 2g - rcols) inside the shared columns.
bool opc_fits(const std::vector<SignatureGroup>& groups, int t, int limit) {
  int zero_size = 0;
  for (const auto& g : groups)
    if (g.all_zeros) zero_size = g.size;
  const bool split_zero = zero_size >= 2;
  const int a_max = split_zero ? std::min(zero_size, t) : 0;
  for (int a = 0; a <= a_max; ++a) {
    const int rcols = t - a;
    const auto rbudget =
        static_cast<std::uint64_t>(rcols) * static_cast<std::uint64_t>(limit);
    const std::uint64_t cap = binomial(rcols, rcols / 2);
    std::uint64_t weight = 0;
    bool ok = true;
    for (const auto& g : groups) {
      const int size = (split_zero && g.all_zeros) ? g.size - a : g.size;
      if (cap < static_cast<std::uint64_t>(size)) {
        ok = false;
        break;
      }
      if (split_zero && g.all_zeros)
        weight += static_cast<std::uint64_t>(2) * static_cast<std::uint64_t>(size);
      else if (size >= 2)
        weight += static_cast<std::uint64_t>(std::max(size, 2 * size - rcols));
      else if (size == 1 && g.dominated)
        // A variable whose partial signature sits inside another variable's
        // must extend, or the pair stays comparable forever.
        weight += 1;
      if (weight > rbudget) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

bool signature_t_feasible(ConditionKind kind, const std::vector<SignatureGroup>& groups, int t,
                          int limit) {
  const auto budget = static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(limit);
  switch (kind) {
    case ConditionKind::CC:
      return true;
    case ConditionKind::UPC:
    case ConditionKind::Identifiability: {
      std::uint64_t weight = 0;
      for (const auto& g : groups) {
        bool forbid = kind == ConditionKind::Identifiability && g.all_ones;
        if (!distinct_fits(g.size, t, forbid)) return false;
        weight += min_weight_of_distinct(g.size, t);
        if (weight > budget) return false;
      }
      return true;
    }
    case ConditionKind::OPC:
      return opc_fits(groups, t, limit);
  }
  return true;
}

int signature_min_columns(ConditionKind kind, const std::vector<SignatureGroup>& groups,
                          int limit) {
  if (kind == ConditionKind::CC) return 0;
  for (int t = 0; t <= kMaxColumns; ++t)
    if (signature_t_feasible(kind, groups, t, limit)) return t;
  return kColumnsInfeasible;
}

int remaining_pair_units(ConditionKind kind, bool f, bool b, bool nl) {
  switch (kind) {
    case ConditionKind::CC: return nl ? 0 : 1;
    case ConditionKind::UPC: return f || b ? 0 : 1;
    case ConditionKind::OPC: return (f ? 0 : 1) + (b ? 0 : 1);
    case ConditionKind::Identifiability:
      return std::max(0, 2 - (int(f) + int(b) + int(nl)));
  }
  return 0;
}

CoverageState coverage_from(const CoverModel& model, const std::vector<int>& included) {
  const int pc = model.pair_count();
  CoverageState st;
  st.forward.assign(pc, 0);
  st.backward.assign(pc, 0);
  st.null_seen.assign(pc, 0);
  for (int k : included) {
    const Intervention s = model.pool().sets.at(k);
    for (int p = 0; p < pc; ++p) {
      auto [i, j] = model.pair_vars(p);
      switch (classify(i, j, s)) {
        case PairClass::Forward: st.forward[p] = 1; break;
        case PairClass::Backward: st.backward[p] = 1; break;
        case PairClass::Null: st.null_seen[p] = 1; break;
        case PairClass::BothIn: break;
      }
    }
  }
  st.remaining_units = 0;
  for (int p = 0; p < pc; ++p)
    st.remaining_units +=
        remaining_pair_units(model.kind(), st.forward[p], st.backward[p], st.null_seen[p]);
  return st;
}

int max_new_units(const CoverModel& model, const CoverageState& state,
                  const std::vector<char>& decided) {
  std::vector<int> units(model.candidate_count(), 0);
  for (const CoverRow& row : model.rows()) {
    const int p = row.pair;
    const bool f = state.forward[p], b = state.backward[p], nl = state.null_seen[p];
    if (remaining_pair_units(model.kind(), f, b, nl) == 0) continue;
    bool class_covered = false;
    switch (row.kind) {
      case RowKind::Forward: class_covered = f; break;
      case RowKind::Backward: class_covered = b; break;
      case RowKind::Null: class_covered = nl; break;
      case RowKind::Separation: class_covered = f || b; break;
    }
    if (class_covered) continue;
    for (int k : row.covering)
      if (!decided[k]) ++units[k];
  }
  int best = 0;
  for (int k = 0; k < model.candidate_count(); ++k) best = std::max(best, units[k]);
  return best;
}

}  // namespace ivd::detail

namespace ivd {

int counting_bound(const CoverModel& model, const Fixing& fixing) {
  std::vector<char> decided(model.candidate_count(), 0);
  for (int k : fixing.include) decided.at(k) = 1;
  for (int k : fixing.exclude) decided.at(k) = 1;

  const auto state = detail::coverage_from(model, fixing.include);
  std::vector<Intervention> cols;
  cols.reserve(fixing.include.size());
  for (int k : fixing.include) cols.push_back(model.pool().sets[k]);
  const auto groups = detail::group_by_partial_signature(model.n(), cols);
  const int limit = model.pool().spec.effective_limit();

  int sig = detail::signature_min_columns(model.kind(), groups, limit);
  if (state.remaining_units == 0) return std::max(0, sig);

  const int max_units = detail::max_new_units(model, state, decided);
  if (max_units == 0) return detail::kColumnsInfeasible;
  const int ratio = (state.remaining_units + max_units - 1) / max_units;
  return std::max(ratio, sig);
}

}  // namespace ivd
