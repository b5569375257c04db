#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ivd/combinatorics.hpp"

namespace ivd {

// Ground-truth causal graph: nodes 0..n-1, edge (p, c) meaning p is a direct
// cause of c. Construction validates range and acyclicity.
class Dag {
public:
  Dag() = default;
  Dag(int n, const std::vector<std::pair<int, int>>& edges);
  static Dag from_parent_masks(int n, std::vector<std::uint32_t> parents);

  int n() const { return n_; }
  bool has_edge(int parent, int child) const;
  bool adjacent(int a, int b) const { return has_edge(a, b) || has_edge(b, a); }
  std::uint32_t parents_of(int v) const { return parents_.at(v); }
  std::vector<std::pair<int, int>> edges() const;  // sorted (parent, child)
  int edge_count() const;

  friend bool operator==(const Dag&, const Dag&) = default;

private:
  int n_ = 0;
  std::vector<std::uint32_t> parents_;
};

// Structural intervention: every edge into an intervened variable is removed.
Dag manipulate(const Dag& g, const Intervention& s);

// Standard d-separation of i and j given the conditioning set z: true when
// every path is blocked (a non-collider in z, or a collider with no
// descendant in z). Throws std::invalid_argument when i == j or either
// endpoint lies in z.
bool d_separated(const Dag& g, int i, int j, VarSet z);

// Every conditional-independence fact a perfect oracle reports for one graph:
// for the pair (i, j) at lexicographic index p, bit m of separated[p] is set
// when i and j are d-separated given the conditioning set with member mask m.
// Only masks disjoint from {i, j} are meaningful; others stay zero.
struct CiPattern {
  int n = 0;
  std::vector<std::uint32_t> separated;

  friend bool operator==(const CiPattern&, const CiPattern&) = default;
};

// Requires n <= kMaxCiNodes (the pattern stores one bit per conditioning set).
inline constexpr int kMaxCiNodes = 5;
CiPattern ci_pattern_of(const Dag& g);

struct ExperimentRecord {
  Intervention intervention;
  CiPattern ci_pattern;
};

// Simulate intervening on s in the world described by true_dag: the record
// holds every independence fact observable in the manipulated graph.
ExperimentRecord run_experiment(const Dag& true_dag, const Intervention& s);

// Partially directed graph over unordered pairs: each pair is absent,
// undirected, or directed one way.
class Pdag {
public:
  enum class Link : std::uint8_t { None, Undirected, Forward, Backward };

  Pdag() = default;
  explicit Pdag(int n);

  int n() const { return n_; }
  // Link status of the unordered pair {a, b}, reported from a's viewpoint:
  // Forward means a -> b.
  Link link(int a, int b) const;
  void set_link(int a, int b, Link l);

  bool fully_directed() const;  // no Undirected pair left
  int undirected_count() const;
  std::vector<std::pair<int, int>> directed_edges() const;
  std::vector<std::pair<int, int>> undirected_pairs() const;

  // True when every pair matches the dag: directed pairs with the same
  // orientation, absent pairs non-adjacent, and no undirected pair left.
  bool equals_dag(const Dag& g) const;

  friend bool operator==(const Pdag&, const Pdag&) = default;

private:
  int pair_index(int a, int b) const;
  int n_ = 0;
  std::vector<Link> links_;
};

// Stepwise orientation inference. State 0 is the observational graph:
// adjacency as a perfect oracle reports it, all edges undirected (pass
// orient_v_structures to start from the standard CPDAG baseline instead).
// State t updates state t-1 with experiment t of the family: an undirected
// pair with i intervened and j not is oriented i -> j when the two stay
// dependent under the intervention, and j -> i when the intervention broke
// their dependence. Pairs with both or neither endpoint intervened are
// untouched.
std::vector<Pdag> infer(const Dag& true_dag, const std::vector<Intervention>& family,
                        bool orient_v_structures = false);

// Every labeled DAG on n nodes in canonical order (ascending edge-set masks
// over lexicographically sorted ordered pairs). Throws std::invalid_argument
// for n outside [1, 5]: the count grows super-exponentially.
std::vector<Dag> enumerate_dags(int n);

struct IdentificationCheck {
  bool identifies = false;
  // First (in canonical enumeration order) pair of distinct DAGs no
  // experiment of the family tells apart; empty when identifies is true.
  std::optional<std::pair<Dag, Dag>> witness;
};

// Exhaustive check that the family distinguishes every pair of DAGs on n
// nodes by some experiment's independence pattern. n is limited to 4 (543
// DAGs; n = 5 already means ~429M pairs). threads = 1 forces the serial
// path, 0 uses all hardware threads.
IdentificationCheck uniquely_identifies(const std::vector<Intervention>& family, int n,
                                        int threads = 0);
// Plain single-threaded reference of the same check; kept as the behavioral
// baseline the parallel version is tested and benchmarked against.
IdentificationCheck uniquely_identifies_serial(const std::vector<Intervention>& family, int n);

// Graphviz exports. Pdag renders undirected pairs as edges with dir=none.
std::string to_dot(const Dag& g, const std::string& name = "dag");
std::string to_dot(const Pdag& g, const std::string& name = "state");

}  // namespace ivd
