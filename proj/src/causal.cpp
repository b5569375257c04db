#include "ivd/causal.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ivd {

namespace {

void check_node_count(int n) {
  if (n < 1 || n > kMaxVariables)
    throw std::invalid_argument("node count must be in [1, " + std::to_string(kMaxVariables) +
                                "], got " + std::to_string(n));
}

// Kahn's algorithm over parent masks.
bool acyclic(int n, const std::vector<std::uint32_t>& parents) {
  std::vector<std::uint32_t> pa = parents;
  std::uint32_t removed = 0;
  for (int round = 0; round < n; ++round) {
    int next = -1;
    for (int v = 0; v < n; ++v)
      if (!(removed >> v & 1u) && pa[v] == 0) {
        next = v;
        break;
      }
    if (next < 0) return false;  // every remaining node has a parent: a cycle
    removed |= 1u << next;
    for (int v = 0; v < n; ++v) pa[v] &= ~(1u << next);
  }
  return true;
}

int pair_rank(int n, int a, int b) {  // a < b, lexicographic over pairs
  return a * (2 * n - a - 1) / 2 + (b - a - 1);
}

}  // namespace

Dag::Dag(int n, const std::vector<std::pair<int, int>>& edges) : n_(n), parents_(n, 0) {
  check_node_count(n);
  for (auto [p, c] : edges) {
    if (p < 0 || p >= n || c < 0 || c >= n)
      throw std::invalid_argument("edge (" + std::to_string(p) + ", " + std::to_string(c) +
                                  ") out of range for " + std::to_string(n) + " nodes");
    if (p == c) throw std::invalid_argument("self-loop on node " + std::to_string(p));
    parents_[c] |= 1u << p;
  }
  if (!acyclic(n_, parents_)) throw std::invalid_argument("edge set contains a directed cycle");
}

Dag Dag::from_parent_masks(int n, std::vector<std::uint32_t> parents) {
  check_node_count(n);
  if (static_cast<int>(parents.size()) != n)
    throw std::invalid_argument("parent mask count does not match node count");
  const std::uint32_t range = n < 32 ? (1u << n) - 1 : ~0u;
  for (int v = 0; v < n; ++v) {
    if (parents[v] & ~range) throw std::invalid_argument("parent mask references missing nodes");
    if (parents[v] >> v & 1u) throw std::invalid_argument("self-loop on node " + std::to_string(v));
  }
  if (!acyclic(n, parents)) throw std::invalid_argument("edge set contains a directed cycle");
  Dag g;
  g.n_ = n;
  g.parents_ = std::move(parents);
  return g;
}

bool Dag::has_edge(int parent, int child) const {
  return parent >= 0 && parent < n_ && child >= 0 && child < n_ &&
         (parents_[child] >> parent & 1u);
}

std::vector<std::pair<int, int>> Dag::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int p = 0; p < n_; ++p)
    for (int c = 0; c < n_; ++c)
      if (parents_[c] >> p & 1u) out.emplace_back(p, c);
  return out;
}

int Dag::edge_count() const {
  int total = 0;
  for (std::uint32_t m : parents_) total += std::popcount(m);
  return total;
}

Dag manipulate(const Dag& g, const Intervention& s) {
  std::vector<std::uint32_t> parents(g.n());
  for (int v = 0; v < g.n(); ++v) parents[v] = s.contains(v) ? 0 : g.parents_of(v);
  return Dag::from_parent_masks(g.n(), std::move(parents));
}

bool d_separated(const Dag& g, int i, int j, VarSet z) {
  const int n = g.n();
  if (i < 0 || i >= n || j < 0 || j >= n || i == j)
    throw std::invalid_argument("d-separation needs two distinct nodes in range");
  if (z.contains(i) || z.contains(j))
    throw std::invalid_argument("conditioning set overlaps the queried pair");

  // Ancestor closure of z (z included).
  std::uint32_t anc = z.mask();
  for (bool grew = true; grew;) {
    grew = false;
    for (int v = 0; v < n; ++v)
      if (anc >> v & 1u) {
        const std::uint32_t add = g.parents_of(v) & ~anc;
        if (add) {
          anc |= add;
          grew = true;
        }
      }
  }

  // Reachability along active trails; state = node x arrival direction.
  // Arriving "up" means the last step went child -> parent, "down" the
  // opposite. From a non-conditioned node trails continue anywhere when
  // arriving up, and only downward when arriving down -- unless the node is
  // an ancestor of z, which re-opens the collider upward.
  std::vector<std::uint32_t> children(n, 0);
  for (int v = 0; v < n; ++v)
    for (int p = 0; p < n; ++p)
      if (g.parents_of(v) >> p & 1u) children[p] |= 1u << v;

  std::vector<std::pair<int, bool>> stack{{i, true}};  // true = arrived up
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) * 2, 0);
  while (!stack.empty()) {
    auto [v, up] = stack.back();
    stack.pop_back();
    auto& mark = seen[static_cast<std::size_t>(v) * 2 + (up ? 1 : 0)];
    if (mark) continue;
    mark = 1;
    const bool conditioned = z.contains(v);
    if (!conditioned && v == j) return false;
    if (up && !conditioned) {
      for (int p = 0; p < n; ++p)
        if (g.parents_of(v) >> p & 1u) stack.push_back({p, true});
      for (int c = 0; c < n; ++c)
        if (children[v] >> c & 1u) stack.push_back({c, false});
    } else if (!up) {
      if (!conditioned)
        for (int c = 0; c < n; ++c)
          if (children[v] >> c & 1u) stack.push_back({c, false});
      if (anc >> v & 1u)
        for (int p = 0; p < n; ++p)
          if (g.parents_of(v) >> p & 1u) stack.push_back({p, true});
    }
  }
  return true;
}

CiPattern ci_pattern_of(const Dag& g) {
  const int n = g.n();
  if (n > kMaxCiNodes)
    throw std::invalid_argument("independence patterns are tabulated for up to " +
                                std::to_string(kMaxCiNodes) + " nodes");
  CiPattern pat;
  pat.n = n;
  pat.separated.assign(static_cast<std::size_t>(n) * (n - 1) / 2, 0);
  const std::uint32_t full = (1u << n) - 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const int p = pair_rank(n, i, j);
      const std::uint32_t forbidden = (1u << i) | (1u << j);
      for (std::uint32_t m = 0; m <= full; ++m) {
        if (m & forbidden) continue;
        if (d_separated(g, i, j, VarSet(m))) pat.separated[p] |= 1u << m;
      }
    }
  return pat;
}

ExperimentRecord run_experiment(const Dag& true_dag, const Intervention& s) {
  return {s, ci_pattern_of(manipulate(true_dag, s))};
}

Pdag::Pdag(int n) : n_(n) {
  check_node_count(n);
  links_.assign(static_cast<std::size_t>(n) * (n - 1) / 2, Link::None);
}

int Pdag::pair_index(int a, int b) const {
  if (a < 0 || b < 0 || a >= n_ || b >= n_ || a == b)
    throw std::invalid_argument("pair indices must be two distinct nodes in range");
  return pair_rank(n_, std::min(a, b), std::max(a, b));
}

Pdag::Link Pdag::link(int a, int b) const {
  Link l = links_[pair_index(a, b)];
  if (a > b) {  // stored from min(a,b)'s viewpoint
    if (l == Link::Forward) return Link::Backward;
    if (l == Link::Backward) return Link::Forward;
  }
  return l;
}

void Pdag::set_link(int a, int b, Link l) {
  if (a > b) {
    if (l == Link::Forward)
      l = Link::Backward;
    else if (l == Link::Backward)
      l = Link::Forward;
  }
  links_[pair_index(a, b)] = l;
}

bool Pdag::fully_directed() const {
  return std::none_of(links_.begin(), links_.end(),
                      [](Link l) { return l == Link::Undirected; });
}

int Pdag::undirected_count() const {
  return static_cast<int>(
      std::count(links_.begin(), links_.end(), Link::Undirected));
}

std::vector<std::pair<int, int>> Pdag::directed_edges() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b) {
      const Link l = links_[pair_rank(n_, a, b)];
      if (l == Link::Forward) out.emplace_back(a, b);
      if (l == Link::Backward) out.emplace_back(b, a);
    }
  return out;
}

std::vector<std::pair<int, int>> Pdag::undirected_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b)
      if (links_[pair_rank(n_, a, b)] == Link::Undirected) out.emplace_back(a, b);
  return out;
}

bool Pdag::equals_dag(const Dag& g) const {
  if (g.n() != n_) return false;
  for (int a = 0; a < n_; ++a)
    for (int b = a + 1; b < n_; ++b) {
      const Link l = links_[pair_rank(n_, a, b)];
      const bool ab = g.has_edge(a, b), ba = g.has_edge(b, a);
      if (l == Link::Undirected) return false;
      if (l == Link::None ? (ab || ba) : (l == Link::Forward ? !ab : !ba)) return false;
    }
  return true;
}

std::vector<Pdag> infer(const Dag& true_dag, const std::vector<Intervention>& family,
                        bool orient_v_structures) {
  const int n = true_dag.n();
  std::vector<Pdag> states;
  states.reserve(family.size() + 1);

  // Observational state. A perfect oracle reports (i, j) dependent given
  // every conditioning set exactly when the pair is adjacent in the true
  // graph, so adjacency can be read off directly.
  Pdag base(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (true_dag.adjacent(a, b)) base.set_link(a, b, Pdag::Link::Undirected);
  if (orient_v_structures) {
    // a -> c <- b with a, b non-adjacent is observationally recognizable.
    for (int c = 0; c < n; ++c)
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
          if (a == c || b == c) continue;
          if (true_dag.has_edge(a, c) && true_dag.has_edge(b, c) && !true_dag.adjacent(a, b)) {
            base.set_link(a, c, Pdag::Link::Forward);
            base.set_link(b, c, Pdag::Link::Forward);
          }
        }
  }
  states.push_back(base);

  for (const Intervention& s : family) {
    Pdag st = states.back();
    const Dag cut = manipulate(true_dag, s);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) {
        if (st.link(a, b) != Pdag::Link::Undirected) continue;
        const bool a_in = s.contains(a), b_in = s.contains(b);
        if (a_in == b_in) continue;  // both manipulated or both untouched
        const int in = a_in ? a : b, out = a_in ? b : a;
        // Under the intervention the pair stays dependent (given anything)
        // exactly when the edge in -> out survived the cut; a vanished
        // dependence means the true edge pointed into the intervened node.
        if (cut.has_edge(in, out))
          st.set_link(in, out, Pdag::Link::Forward);
        else
          st.set_link(out, in, Pdag::Link::Forward);
      }
    states.push_back(std::move(st));
  }
  return states;
}

std::vector<Dag> enumerate_dags(int n) {
  if (n < 1 || n > 5)
    throw std::invalid_argument("labeled-DAG enumeration supports 1 to 5 nodes, got " +
                                std::to_string(n));
  // Ordered pairs (p, c), p != c, in lexicographic order; an edge-set mask
  // over that list enumerated ascending gives the canonical DAG order.
  std::vector<std::pair<int, int>> slots;
  for (int p = 0; p < n; ++p)
    for (int c = 0; c < n; ++c)
      if (p != c) slots.emplace_back(p, c);

  std::vector<Dag> out;
  const std::uint32_t top = 1u << slots.size();
  std::vector<std::uint32_t> parents(n);
  for (std::uint32_t mask = 0; mask < top; ++mask) {
    std::fill(parents.begin(), parents.end(), 0);
    for (std::size_t b = 0; b < slots.size(); ++b)
      if (mask >> b & 1u) parents[slots[b].second] |= 1u << slots[b].first;
    if (!acyclic(n, parents)) continue;
    out.push_back(Dag::from_parent_masks(n, parents));
  }
  return out;
}

namespace {

// Flattened independence patterns of one DAG across the whole family; two
// DAGs are distinguishable exactly when their keys differ.
std::vector<std::uint32_t> pattern_key(const Dag& g, const std::vector<Intervention>& family) {
  std::vector<std::uint32_t> key;
  for (const Intervention& s : family) {
    const CiPattern pat = ci_pattern_of(manipulate(g, s));
    key.insert(key.end(), pat.separated.begin(), pat.separated.end());
  }
  return key;
}

void check_identification_size(int n) {
  if (n < 1 || n > 4)
    throw std::invalid_argument("exhaustive identification check supports 1 to 4 nodes, got " +
                                std::to_string(n));
}

}  // namespace

IdentificationCheck uniquely_identifies_serial(const std::vector<Intervention>& family, int n) {
  check_identification_size(n);
  const std::vector<Dag> dags = enumerate_dags(n);
  const int d = static_cast<int>(dags.size());
  std::vector<std::vector<std::uint32_t>> keys(d);
  for (int a = 0; a < d; ++a) keys[a] = pattern_key(dags[a], family);
  for (int a = 0; a < d; ++a)
    for (int b = a + 1; b < d; ++b)
      if (keys[a] == keys[b]) return {false, std::make_pair(dags[a], dags[b])};
  return {true, std::nullopt};
}

IdentificationCheck uniquely_identifies(const std::vector<Intervention>& family, int n,
                                        int threads) {
#ifdef _OPENMP
  if (threads == 1) return uniquely_identifies_serial(family, n);
  check_identification_size(n);
  const std::vector<Dag> dags = enumerate_dags(n);
  const int d = static_cast<int>(dags.size());
  const int nt = threads == 0 ? omp_get_max_threads() : threads;

  std::vector<std::vector<std::uint32_t>> keys(d);
#pragma omp parallel for schedule(dynamic, 16) num_threads(nt)
  for (int a = 0; a < d; ++a) keys[a] = pattern_key(dags[a], family);

  // Scan pairs in rank order; workers skip anything at or past the best
  // collision already found, so the reduced minimum is the canonical first.
  const long long none = std::numeric_limits<long long>::max();
  long long best = none;
#pragma omp parallel for schedule(dynamic, 8) num_threads(nt) reduction(min : best)
  for (int a = 0; a < d; ++a) {
    const long long base =
        static_cast<long long>(a) * (2ll * d - a - 1) / 2;
    if (base >= best) continue;
    for (int b = a + 1; b < d; ++b) {
      const long long rank = base + (b - a - 1);
      if (rank >= best) break;
      if (keys[a] == keys[b]) {
        best = rank;
        break;
      }
    }
  }
  if (best == none) return {true, std::nullopt};
  // Invert the rank back into the pair.
  for (int a = 0; a < d; ++a) {
    const long long base = static_cast<long long>(a) * (2ll * d - a - 1) / 2;
    const long long width = d - a - 1;
    if (best < base + width)
      return {false, std::make_pair(dags[a], dags[static_cast<int>(best - base) + a + 1])};
  }
  return {false, std::nullopt};  // unreachable
#else
  (void)threads;
  return uniquely_identifies_serial(family, n);
#endif
}

std::string to_dot(const Dag& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (int v = 0; v < g.n(); ++v) os << "  " << v << ";\n";
  for (auto [p, c] : g.edges()) os << "  " << p << " -> " << c << ";\n";
  os << "}\n";
  return os.str();
}

std::string to_dot(const Pdag& g, const std::string& name) {
  std::ostringstream os;
  os << "digraph " << name << " {\n";
  for (int v = 0; v < g.n(); ++v) os << "  " << v << ";\n";
  for (auto [p, c] : g.directed_edges()) os << "  " << p << " -> " << c << ";\n";
  for (auto [a, b] : g.undirected_pairs()) os << "  " << a << " -> " << b << " [dir=none];\n";
  os << "}\n";
  return os.str();
}

}  // namespace ivd
