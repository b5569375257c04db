#include "ivd/solver.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>

#include "bounds_internal.hpp"
#include "ivd/approx.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ivd {

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::NoCandidates: return "no-candidates";
  }
  return "?";
}

namespace {

constexpr double kEps = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Immutable per-solve tables shared by every worker.
struct Tables {
  const CoverModel* model = nullptr;
  int m = 0;
  int pairs = 0;
  int limit = 0;
  ConditionKind kind = ConditionKind::CC;
  std::vector<std::vector<std::uint8_t>> cls;  // [pair][candidate] -> PairClass
  std::vector<double> cost;
  bool unit_cost = true;
  std::vector<int> by_cost;  // candidate indices ordered by (cost, index)
  int root_max_units = 0;    // most units any one candidate covers from scratch
  int total_units = 0;

  explicit Tables(const CoverModel& mo) : model(&mo) {
    m = mo.candidate_count();
    pairs = mo.pair_count();
    limit = mo.pool().spec.effective_limit();
    kind = mo.kind();
    cost = mo.costs();
    unit_cost = mo.unit_costs();
    total_units = mo.total_requirement_units();
    cls.assign(pairs, std::vector<std::uint8_t>(m, 0));
    for (int p = 0; p < pairs; ++p) {
      auto [i, j] = mo.pair_vars(p);
      for (int k = 0; k < m; ++k)
        cls[p][k] = static_cast<std::uint8_t>(classify(i, j, mo.pool().sets[k]));
    }
    by_cost.resize(m);
    for (int k = 0; k < m; ++k) by_cost[k] = k;
    std::stable_sort(by_cost.begin(), by_cost.end(),
                     [&](int a, int b) { return cost[a] < cost[b]; });
  }
};

// Mutable coverage state with an undo trail of one candidate at a time.
struct SearchState {
  const Tables* T = nullptr;
  std::vector<std::array<std::uint16_t, 3>> cnt;  // per pair: forward/backward/null counts
  int U = 0;
  double cost = 0.0;
  std::vector<int> included;
  std::vector<Intervention> cols;

  explicit SearchState(const Tables& t) : T(&t) {
    cnt.assign(T->pairs, {0, 0, 0});
    U = T->total_units;
  }

  int pair_rem(int p) const {
    return detail::remaining_pair_units(T->kind, cnt[p][0] > 0, cnt[p][1] > 0, cnt[p][2] > 0);
  }

  int new_units_of(int k) const {
    int u = 0;
    for (int p = 0; p < T->pairs; ++p) {
      auto c = T->cls[p][k];
      if (c == static_cast<std::uint8_t>(PairClass::BothIn)) continue;
      if (cnt[p][c] > 0) continue;
      if (pair_rem(p) > 0) ++u;
    }
    return u;
  }

  void apply(int k) {
    for (int p = 0; p < T->pairs; ++p) {
      auto c = T->cls[p][k];
      if (c == static_cast<std::uint8_t>(PairClass::BothIn)) continue;
      int before = pair_rem(p);
      ++cnt[p][c];
      U += pair_rem(p) - before;
    }
    cost += T->cost[k];
    included.push_back(k);
    cols.push_back(T->model->pool().sets[k]);
  }

  void undo(int k) {
    for (int p = 0; p < T->pairs; ++p) {
      auto c = T->cls[p][k];
      if (c == static_cast<std::uint8_t>(PairClass::BothIn)) continue;
      int before = pair_rem(p);
      --cnt[p][c];
      U += pair_rem(p) - before;
    }
    cost -= T->cost[k];
    included.pop_back();
    cols.pop_back();
  }
};

int completion_count_lb(const SearchState& st, int exact_max_units) {
  const auto groups = detail::group_by_partial_signature(st.T->model->n(), st.cols);
  const int sig = detail::signature_min_columns(st.T->kind, groups, st.T->limit);
  if (sig >= detail::kColumnsInfeasible) return detail::kColumnsInfeasible;
  int ratio = 0;
  if (st.U > 0) {
    const int mu = exact_max_units > 0 ? exact_max_units : st.T->root_max_units;
    if (mu == 0) return detail::kColumnsInfeasible;
    ratio = (st.U + mu - 1) / mu;
  }
  return std::max(sig, ratio);
}

// Cost of the cheapest `count` candidates passing `usable`.
template <typename Pred>
double cheapest_completion(const Tables& T, int count, Pred usable) {
  if (count >= detail::kColumnsInfeasible) return kInf;
  if (count <= 0) return 0.0;
  double s = 0.0;
  int got = 0;
  for (int k : T.by_cost) {
    if (!usable(k)) continue;
    s += T.cost[k];
    if (++got == count) return s;
  }
  return kInf;  // fewer usable candidates than the bound demands
}

// ---------------------------------------------------------------------------
// Constructive warm starts: realize a set of minimum-count membership
// patterns directly as columns. Self-checked; callers fall back to plain
// search when construction does not pan out.

// Greedy pairing over columns: each new element occupies the two least
// loaded columns that still accept it (ties to the lower column index).
// Returns one column pair per element, or nothing when stuck.
std::optional<std::vector<std::pair<int, int>>> pair_columns(int count, int cols, int cap,
                                                             std::vector<int>& load) {
  std::set<std::pair<int, int>> used;
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < count; ++e) {
    int u = -1;
    for (int c = 0; c < cols; ++c)
      if (load[c] < cap && (u < 0 || load[c] < load[u])) u = c;
    if (u < 0) return std::nullopt;
    int w = -1;
    for (int c = 0; c < cols; ++c) {
      if (c == u || load[c] >= cap) continue;
      if (used.count({std::min(u, c), std::max(u, c)})) continue;
      if (w < 0 || load[c] < load[w]) w = c;
    }
    if (w < 0) return std::nullopt;
    used.insert({std::min(u, w), std::max(u, w)});
    ++load[u];
    ++load[w];
    out.push_back({u, w});
  }
  return out;
}

std::optional<std::vector<int>> finish_columns(const CoverModel& model,
                                               const std::vector<VarSet>& columns) {
  std::vector<int> sel;
  sel.reserve(columns.size());
  for (VarSet c : columns) {
    int idx = model.pool().index_of(c);
    if (idx < 0) return std::nullopt;
    sel.push_back(idx);
  }
  std::sort(sel.begin(), sel.end());
  if (std::adjacent_find(sel.begin(), sel.end()) != sel.end()) return std::nullopt;
  if (!model.check(Selection::from_indices(sel)).feasible) return std::nullopt;
  return sel;
}

std::optional<std::vector<int>> construct_design(const CoverModel& model) {
  const auto& pool = model.pool();
  const int n = model.n();
  const int L = pool.spec.effective_limit();
  const ConditionKind kind = model.kind();

  if (kind == ConditionKind::CC) {
    int idx = pool.index_of(Intervention{});
    if (idx >= 0) return std::vector<int>{idx};
    return std::nullopt;
  }

  const std::vector<detail::SignatureGroup> root{{n, true}};
  const int t = detail::signature_min_columns(kind, root, L);
  if (t <= 0 || t > 40) return std::nullopt;

  if (kind == ConditionKind::UPC || kind == ConditionKind::Identifiability) {
    // One variable keeps the empty pattern, the next t get singletons, the
    // rest take weight-two patterns under the per-column load cap.
    const int singles = std::min(n - 1, t);
    const int doubles = n - 1 - singles;
    std::vector<int> load(t, 0);
    std::vector<VarSet> columns(t);
    for (int v = 1; v <= singles; ++v) {
      columns[v - 1] = columns[v - 1].with(v);
      load[v - 1] = 1;
    }
    if (doubles > 0) {
      auto pairs = pair_columns(doubles, t, L, load);
      if (!pairs) return std::nullopt;
      for (int e = 0; e < doubles; ++e) {
        int v = singles + 1 + e;
        columns[(*pairs)[e].first] = columns[(*pairs)[e].first].with(v);
        columns[(*pairs)[e].second] = columns[(*pairs)[e].second].with(v);
      }
    }
    return finish_columns(model, columns);
  }

  // OPC: a variables on private singleton columns, the rest as weight-two
  // patterns over the remaining columns.
  for (int a = 0; a <= std::min(n, t); ++a) {
    const int rest = n - a;
    const int rcols = t - a;
    if (binomial(rcols, rcols / 2) < static_cast<std::uint64_t>(rest)) continue;
    if (static_cast<std::uint64_t>(2) * rest >
        static_cast<std::uint64_t>(rcols) * static_cast<std::uint64_t>(L))
      continue;
    std::vector<VarSet> columns(t);
    for (int v = 0; v < a; ++v) columns[v] = columns[v].with(v);
    std::vector<int> load(rcols, 0);
    auto pairs = pair_columns(rest, rcols, L, load);
    if (!pairs) continue;
    for (int e = 0; e < rest; ++e) {
      int v = a + e;
      columns[a + (*pairs)[e].first] = columns[a + (*pairs)[e].first].with(v);
      columns[a + (*pairs)[e].second] = columns[a + (*pairs)[e].second].with(v);
    }
    if (auto sel = finish_columns(model, columns)) return sel;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Shared incumbent and limits.

struct Shared {
  const Tables* T = nullptr;
  SolveParams params;
  Clock::time_point t0 = Clock::now();
  double root_bound = 0.0;

  std::atomic<long long> nodes{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  double best_cost = kInf;
  std::vector<int> best_sel;
  double frontier_min = kInf;  // least bound among abandoned subtrees

  bool over_limit() {
    if (params.node_limit > 0 && nodes.load(std::memory_order_relaxed) >= params.node_limit)
      return true;
    if (params.time_limit_s > 0 && seconds_since(t0) >= params.time_limit_s) return true;
    return false;
  }

  double best_now() {
    std::lock_guard<std::mutex> g(mu);
    return best_cost;
  }

  void offer(const std::vector<int>& sel, double cost) {
    std::lock_guard<std::mutex> g(mu);
    if (cost >= best_cost - kEps) return;
    best_cost = cost;
    best_sel = sel;
    std::sort(best_sel.begin(), best_sel.end());
    if (params.on_incumbent) {
      Incumbent inc;
      inc.selection = Selection::from_indices(best_sel);
      inc.objective = cost;
      inc.dual_bound = root_bound;
      inc.nodes = nodes.load(std::memory_order_relaxed);
      inc.wall_s = seconds_since(t0);
      params.on_incumbent(inc);
    }
  }

  void abandoned(double bound) {
    std::lock_guard<std::mutex> g(mu);
    frontier_min = std::min(frontier_min, bound);
  }
};

double node_lower_bound(Shared& sh, SearchState& st, int exact_max_units,
                        const std::vector<char>& decided) {
  const int clb = completion_count_lb(st, exact_max_units);
  double lb = st.cost + cheapest_completion(*sh.T, clb, [&](int k) { return !decided[k]; });
  if (sh.params.bounding == BoundingMode::LpRelaxation && lb < kInf) {
    Fixing fx;
    fx.include = st.included;
    for (int k = 0; k < sh.T->m; ++k)
      if (decided[k] && std::find(st.included.begin(), st.included.end(), k) == st.included.end())
        fx.exclude.push_back(k);
    LpResult lr = lp_bound(*sh.T->model, fx);
    lb = lr.feasible ? std::max(lb, st.cost + lr.value) : kInf;
  }
  return lb;
}

// Exact best coverage over undecided candidates; also reports the argmax for
// branching (ties to the lower index).
std::pair<int, int> best_branch(const Tables& T, const SearchState& st,
                                const std::vector<char>& decided) {
  std::vector<int> units(T.m, 0);
  for (const CoverRow& row : T.model->rows()) {
    const int p = row.pair;
    if (st.pair_rem(p) == 0) continue;
    bool covered = false;
    switch (row.kind) {
      case RowKind::Forward: covered = st.cnt[p][0] > 0; break;
      case RowKind::Backward: covered = st.cnt[p][1] > 0; break;
      case RowKind::Null: covered = st.cnt[p][2] > 0; break;
      case RowKind::Separation: covered = st.cnt[p][0] > 0 || st.cnt[p][1] > 0; break;
    }
    if (covered) continue;
    for (int k : row.covering)
      if (!decided[k]) ++units[k];
  }
  int bk = -1, bu = 0;
  for (int k = 0; k < T.m; ++k)
    if (units[k] > bu) {
      bu = units[k];
      bk = k;
    }
  return {bk, bu};
}

// Depth-first improvement search (phase one): establishes the optimal value.
void dfs_improve(Shared& sh, SearchState& st, std::vector<char>& decided) {
  sh.nodes.fetch_add(1, std::memory_order_relaxed);
  if (sh.stop.load(std::memory_order_relaxed) || sh.over_limit()) {
    sh.stop.store(true, std::memory_order_relaxed);
    sh.abandoned(st.cost + cheapest_completion(*sh.T, completion_count_lb(st, 0),
                                               [&](int k) { return !decided[k]; }));
    return;
  }
  double best = sh.best_now();
  double lb = node_lower_bound(sh, st, 0, decided);
  if (lb >= best - kEps) return;
  if (st.U == 0) {
    sh.offer(st.included, st.cost);
    return;
  }
  auto [bk, bu] = best_branch(*sh.T, st, decided);
  if (bk < 0) return;  // no candidate can add a unit: dead branch
  const int clb = std::max(completion_count_lb(st, bu), 0);
  lb = st.cost + cheapest_completion(*sh.T, clb, [&](int k) { return !decided[k]; });
  if (lb >= sh.best_now() - kEps) return;

  decided[bk] = 1;
  st.apply(bk);
  dfs_improve(sh, st, decided);
  st.undo(bk);
  dfs_improve(sh, st, decided);
  decided[bk] = 0;
}

struct FrontierNode {
  std::vector<int> include, exclude;
};

// Expand the root breadth-first until there is enough independent work to
// hand one subtree per worker slot.
std::deque<FrontierNode> build_frontier(Shared& sh, int want) {
  std::deque<FrontierNode> queue;
  queue.push_back({});
  int expansions = 0;
  while (static_cast<int>(queue.size()) < want && expansions < 8 * want && !queue.empty()) {
    FrontierNode node = queue.front();
    queue.pop_front();
    ++expansions;
    SearchState st(*sh.T);
    std::vector<char> decided(sh.T->m, 0);
    for (int k : node.include) {
      decided[k] = 1;
      st.apply(k);
    }
    for (int k : node.exclude) decided[k] = 1;
    sh.nodes.fetch_add(1, std::memory_order_relaxed);
    if (node_lower_bound(sh, st, 0, decided) >= sh.best_now() - kEps) continue;
    if (st.U == 0) {
      sh.offer(st.included, st.cost);
      continue;
    }
    auto [bk, bu] = best_branch(*sh.T, st, decided);
    if (bk < 0) continue;
    FrontierNode inc = node, exc = node;
    inc.include.push_back(bk);
    exc.exclude.push_back(bk);
    queue.push_back(std::move(inc));
    queue.push_back(std::move(exc));
  }
  return queue;
}

void run_phase_one(Shared& sh, int threads) {
#ifdef _OPENMP
  if (threads != 1) {
    const int want = 4 * (threads == 0 ? omp_get_max_threads() : threads);
    std::deque<FrontierNode> frontier = build_frontier(sh, want);
    std::vector<FrontierNode> work(frontier.begin(), frontier.end());
#pragma omp parallel for schedule(dynamic, 1) \
    num_threads(threads == 0 ? omp_get_max_threads() : threads)
    for (int i = 0; i < static_cast<int>(work.size()); ++i) {
      SearchState st(*sh.T);
      std::vector<char> decided(sh.T->m, 0);
      for (int k : work[i].include) {
        decided[k] = 1;
        st.apply(k);
      }
      for (int k : work[i].exclude) decided[k] = 1;
      dfs_improve(sh, st, decided);
    }
    return;
  }
#else
  (void)threads;
#endif
  SearchState st(*sh.T);
  std::vector<char> decided(sh.T->m, 0);
  dfs_improve(sh, st, decided);
}

// Phase two: canonically-first optimum of the proven value V. Walks
// candidates in index order, include-first, accepting the first prefix
// whose cost matches V exactly. Throws on limit overrun.
struct RetrievalCutoff {};

bool retrieve_first(Shared& sh, SearchState& st, int from, double V, std::vector<int>& out) {
  sh.nodes.fetch_add(1, std::memory_order_relaxed);
  if (sh.over_limit()) throw RetrievalCutoff{};
  if (st.U == 0 && std::fabs(st.cost - V) <= kEps) {
    out = st.included;
    return true;
  }
  for (int j = from; j < sh.T->m; ++j) {
    if (st.cost + sh.T->cost[j] > V + kEps) continue;
    if (sh.T->cost[j] > kEps && st.U > 0 && st.new_units_of(j) == 0) continue;
    st.apply(j);
    const int clb = completion_count_lb(st, 0);
    double lb = st.cost + cheapest_completion(*sh.T, clb, [&](int k) { return k > j; });
    if (lb <= V + kEps && retrieve_first(sh, st, j + 1, V, out)) return true;
    st.undo(j);
  }
  return false;
}

void enumerate_all(Shared& sh, SearchState& st, int from, double V, std::vector<Selection>& out) {
  sh.nodes.fetch_add(1, std::memory_order_relaxed);
  if (sh.over_limit()) throw RetrievalCutoff{};
  if (st.U == 0 && std::fabs(st.cost - V) <= kEps)
    out.push_back(Selection::from_indices(st.included));
  for (int j = from; j < sh.T->m; ++j) {
    if (st.cost + sh.T->cost[j] > V + kEps) continue;
    if (sh.T->cost[j] > kEps && st.U > 0 && st.new_units_of(j) == 0) continue;
    st.apply(j);
    const int clb = completion_count_lb(st, 0);
    double lb = st.cost + cheapest_completion(*sh.T, clb, [&](int k) { return k > j; });
    if (lb <= V + kEps) enumerate_all(sh, st, j + 1, V, out);
    st.undo(j);
  }
}

SolveOutcome solve_impl(const CoverModel& model, const SolveParams& params,
                        std::vector<Selection>* all_optima) {
  SolveOutcome out;
  if (model.candidate_count() == 0) {
    out.status = SolveStatus::NoCandidates;
    out.dual_bound = kInf;
    return out;
  }

  Tables T(model);
  Shared sh;
  sh.T = &T;
  sh.params = params;
  sh.t0 = Clock::now();

  // Root bound first so incumbent callbacks can carry it.
  {
    SearchState root(T);
    std::vector<char> none(T.m, 0);
    T.root_max_units = best_branch(T, root, none).second;
    sh.root_bound = node_lower_bound(sh, root, T.root_max_units, none);
    sh.nodes.fetch_add(1, std::memory_order_relaxed);
  }

  // Greedy doubles as the infeasibility oracle: coverage is monotone, so a
  // stalled greedy proves no selection satisfies the model.
  ApproxResult g = greedy(model);
  if (!g.feasible) {
    out.status = SolveStatus::Infeasible;
    out.dual_bound = kInf;
    out.nodes = sh.nodes.load();
    out.wall_s = seconds_since(sh.t0);
    return out;
  }
  sh.offer(g.selection.chosen, model.objective_value(g.selection));

  if (auto built = construct_design(model)) {
    Selection sel = Selection::from_indices(*built);
    sh.offer(sel.chosen, model.objective_value(sel));
  }

  bool proven = sh.best_now() <= sh.root_bound + kEps;
  if (!proven) {
    run_phase_one(sh, params.threads);
    proven = !sh.stop.load();
  }

  out.nodes = sh.nodes.load();
  out.wall_s = seconds_since(sh.t0);
  {
    std::lock_guard<std::mutex> g2(sh.mu);
    out.best = Selection::from_indices(sh.best_sel);
    out.objective = sh.best_cost;
  }

  if (!proven) {
    out.status = SolveStatus::Feasible;
    std::lock_guard<std::mutex> g2(sh.mu);
    out.dual_bound = std::max(sh.root_bound, std::min(sh.frontier_min, sh.best_cost));
    return out;
  }

  const double V = out.objective;
  out.dual_bound = V;
  out.status = SolveStatus::Optimal;

  try {
    SearchState st(T);
    if (all_optima) {
      enumerate_all(sh, st, 0, V, *all_optima);
      if (!all_optima->empty()) out.best = (*all_optima)[0];
    } else {
      std::vector<int> first;
      if (retrieve_first(sh, st, 0, V, first)) out.best = Selection::from_indices(first);
    }
  } catch (const RetrievalCutoff&) {
    // Value is proven but the canonical representative was not retrieved in
    // budget; report the incumbent without the optimality claim.
    out.status = SolveStatus::Feasible;
    if (all_optima) all_optima->clear();
  }
  out.nodes = sh.nodes.load();
  out.wall_s = seconds_since(sh.t0);
  return out;
}

}  // namespace

SolveOutcome solve(const CoverModel& model, const SolveParams& params) {
  return solve_impl(model, params, nullptr);
}

std::vector<Selection> enumerate_optima(const CoverModel& model, const SolveParams& params) {
  std::vector<Selection> optima;
  SolveOutcome out = solve_impl(model, params, &optima);
  if (out.status != SolveStatus::Optimal)
    throw std::logic_error(std::string("cannot enumerate optima: solve finished ") +
                           to_string(out.status));
  return optima;
}

SolveOutcome solve_lexicographic(const CoverModel& model, LexObjective objective,
                                 const SolveParams& params) {
  std::vector<Selection> optima;
  SolveOutcome out = solve_impl(model, params, &optima);
  if (out.status != SolveStatus::Optimal) return out;

  auto score = [&](const Selection& s) {
    long long total = 0, biggest = 0;
    for (int k : s.chosen) {
      const int sz = model.pool().sets[k].size();
      total += sz;
      biggest = std::max<long long>(biggest, sz);
    }
    return objective == LexObjective::MinTotalSize ? total : biggest;
  };
  const Selection* best = nullptr;
  long long best_score = 0;
  for (const Selection& s : optima) {
    long long sc = score(s);
    if (!best || sc < best_score) {
      best = &s;
      best_score = sc;
    }
  }
  if (best) out.best = *best;
  return out;
}

std::vector<std::vector<int>> size_configurations(const CoverModel& model,
                                                  const SolveParams& params) {
  std::vector<Selection> optima = enumerate_optima(model, params);
  std::set<std::vector<int>> profiles;
  for (const Selection& s : optima) {
    std::vector<int> sizes;
    sizes.reserve(s.chosen.size());
    for (int k : s.chosen) sizes.push_back(model.pool().sets[k].size());
    std::sort(sizes.begin(), sizes.end());
    profiles.insert(std::move(sizes));
  }
  return {profiles.begin(), profiles.end()};
}

}  // namespace ivd
