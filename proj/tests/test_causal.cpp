#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "frozen.hpp"
#include "oracles.hpp"
#include "ivd/causal.hpp"
#include "ivd/model.hpp"

using namespace ivd;

namespace {

// The running 4-node example: a complete DAG ordered 0 -> 1 -> 2 -> 3.
Dag complete4() {
  return Dag(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

}  // namespace

TEST_CASE("graph construction validates and normalizes") {
  const Dag g(3, {{0, 1}, {1, 2}});
  CHECK(g.n() == 3);
  CHECK(g.has_edge(0, 1));
  CHECK(!g.has_edge(1, 0));
  CHECK(g.adjacent(1, 0));
  CHECK(g.edge_count() == 2);
  CHECK(g.edges() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  CHECK(Dag::from_parent_masks(3, {0u, 1u, 2u}) == g);

  CHECK_THROWS_AS(Dag(2, {{0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Dag(2, {{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Dag(2, {{0, 1}, {1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(Dag(3, {{0, 1}, {1, 2}, {2, 0}}), std::invalid_argument);
}

TEST_CASE("interventions cut exactly the incoming edges of their targets") {
  const Dag g = complete4();
  const Dag cut = manipulate(g, VarSet::of({0, 1}));
  CHECK(!cut.has_edge(0, 1));  // edge into 1 removed
  CHECK(cut.has_edge(0, 2));
  CHECK(cut.has_edge(0, 3));
  CHECK(cut.has_edge(1, 2));
  CHECK(cut.has_edge(1, 3));
  CHECK(cut.has_edge(2, 3));
  CHECK(manipulate(g, VarSet{}) == g);
}

TEST_CASE("d-separation on the textbook motifs") {
  const Dag chain(3, {{0, 1}, {1, 2}});
  CHECK(!d_separated(chain, 0, 2, VarSet{}));
  CHECK(d_separated(chain, 0, 2, VarSet::of({1})));

  const Dag fork(3, {{1, 0}, {1, 2}});
  CHECK(!d_separated(fork, 0, 2, VarSet{}));
  CHECK(d_separated(fork, 0, 2, VarSet::of({1})));

  const Dag collider(3, {{0, 2}, {1, 2}});
  CHECK(d_separated(collider, 0, 1, VarSet{}));
  CHECK(!d_separated(collider, 0, 1, VarSet::of({2})));

  // Conditioning on a descendant of the collider also opens it.
  const Dag desc(4, {{0, 2}, {1, 2}, {2, 3}});
  CHECK(d_separated(desc, 0, 1, VarSet{}));
  CHECK(!d_separated(desc, 0, 1, VarSet::of({3})));

  CHECK_THROWS_AS(d_separated(chain, 1, 1, VarSet{}), std::invalid_argument);
  CHECK_THROWS_AS(d_separated(chain, 0, 2, VarSet::of({0})), std::invalid_argument);
}

TEST_CASE("d-separation agrees with path enumeration on every small graph") {
  for (int n : {3, 4}) {
    for (const Dag& g : enumerate_dags(n)) {
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const std::uint32_t exclude = (1u << i) | (1u << j);
          for (std::uint32_t m = 0; m < (1u << n); ++m) {
            if (m & exclude) continue;
            const VarSet z{m};
            CAPTURE(n);
            CAPTURE(i);
            CAPTURE(j);
            CAPTURE(m);
            CHECK(d_separated(g, i, j, z) == oracle::d_separated_paths(g, i, j, z));
          }
        }
      }
    }
  }
}

TEST_CASE("DAG census sizes") {
  for (std::size_t n = 1; n <= frozen::kDagCounts.size(); ++n) {
    CHECK(enumerate_dags(static_cast<int>(n)).size() ==
          static_cast<std::size_t>(frozen::kDagCounts[n - 1]));
  }
  CHECK_THROWS_AS(enumerate_dags(0), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_dags(6), std::invalid_argument);

  // No duplicates in the census.
  const std::vector<Dag> dags = enumerate_dags(3);
  for (std::size_t a = 0; a < dags.size(); ++a)
    for (std::size_t b = a + 1; b < dags.size(); ++b) CHECK(!(dags[a] == dags[b]));
}

TEST_CASE("independence patterns separate graphs exactly as the oracle does") {
  const Dag chain(3, {{0, 1}, {1, 2}});
  const Dag rev(3, {{2, 1}, {1, 0}});
  const Dag fork(3, {{1, 0}, {1, 2}});
  const Dag collider(3, {{0, 2}, {1, 2}});
  // The three Markov-equivalent orientations share one pattern; the collider
  // does not.
  CHECK(ci_pattern_of(chain) == ci_pattern_of(rev));
  CHECK(ci_pattern_of(chain) == ci_pattern_of(fork));
  CHECK(!(ci_pattern_of(chain) == ci_pattern_of(collider)));

  // Each stored bit is exactly a d-separation verdict.
  const CiPattern p = ci_pattern_of(chain);
  int pair = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j, ++pair)
      for (std::uint32_t m = 0; m < 8; ++m) {
        if (m & ((1u << i) | (1u << j))) continue;
        CHECK(bool(p.separated[pair] >> m & 1u) == d_separated(chain, i, j, VarSet{m}));
      }
}

TEST_CASE("experiment records reflect the manipulated graph") {
  const Dag g = complete4();
  const Intervention s = VarSet::of({0, 1});
  const ExperimentRecord rec = run_experiment(g, s);
  CHECK(rec.intervention == s);
  CHECK(rec.ci_pattern == ci_pattern_of(manipulate(g, s)));
}

TEST_CASE("orientation inference walks the worked example") {
  const Dag g = complete4();
  const std::vector<Intervention> family = {VarSet{}, VarSet::of({0, 1}), VarSet::of({0, 2})};
  const std::vector<Pdag> states = infer(g, family);
  REQUIRE(states.size() == 4);

  // Observationally everything is adjacent and nothing is oriented.
  CHECK(states[0].undirected_count() == 6);
  CHECK(states[1].undirected_count() == 6);  // the null experiment orients nothing

  // Intervening on {0,1} orients every edge across the cut.
  CHECK(states[2].undirected_count() == 2);
  CHECK(states[2].undirected_pairs() ==
        std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  CHECK(states[2].link(0, 2) == Pdag::Link::Forward);
  CHECK(states[2].link(2, 0) == Pdag::Link::Backward);

  // The second cut resolves the rest; the result is the true graph.
  CHECK(states[3].undirected_count() == 0);
  CHECK(states[3].fully_directed());
  CHECK(states[3].equals_dag(g));
  CHECK(states[3].directed_edges() == g.edges());
}

TEST_CASE("v-structure baseline orients colliders before any experiment") {
  const Dag collider(3, {{0, 2}, {1, 2}});
  const std::vector<Pdag> plain = infer(collider, {});
  REQUIRE(plain.size() == 1);
  CHECK(plain[0].undirected_count() == 2);
  CHECK(plain[0].link(0, 1) == Pdag::Link::None);  // non-adjacent stays absent

  const std::vector<Pdag> cpdag = infer(collider, {}, true);
  CHECK(cpdag[0].undirected_count() == 0);
  CHECK(cpdag[0].equals_dag(collider));
}

TEST_CASE("identification check: known families, serial equals parallel") {
  const std::vector<Intervention> good = {VarSet{}, VarSet::of({0, 1}), VarSet::of({0, 2})};
  CHECK(uniquely_identifies(good, 4).identifies);
  CHECK(!uniquely_identifies(good, 4).witness.has_value());

  const std::vector<Intervention> bad = {VarSet::of({0})};
  const IdentificationCheck miss = uniquely_identifies(bad, 4);
  REQUIRE(!miss.identifies);
  REQUIRE(miss.witness.has_value());
  // The witness really is indistinguishable under every experiment.
  for (const Intervention& s : bad)
    CHECK(ci_pattern_of(manipulate(miss.witness->first, s)) ==
          ci_pattern_of(manipulate(miss.witness->second, s)));

  for (const auto& family :
       {good, bad, std::vector<Intervention>{}, std::vector<Intervention>{VarSet{}},
        std::vector<Intervention>{VarSet::of({1}), VarSet::of({2})}}) {
    const IdentificationCheck serial = uniquely_identifies_serial(family, 4);
    const IdentificationCheck parallel = uniquely_identifies(family, 4, 0);
    CHECK(serial.identifies == parallel.identifies);
    CHECK(serial.witness == parallel.witness);
  }

  // Two singleton experiments identify both orders of a 2-variable world.
  CHECK(uniquely_identifies({VarSet{}, VarSet::of({0})}, 2).identifies);
  CHECK(!uniquely_identifies({VarSet::of({0})}, 2).identifies);
}

TEST_CASE("pairwise condition is exactly unique identifiability (full census)") {
  const CandidatePool pool = generate_candidates({4, 2, true, true});
  const CoverModel model = CoverModel::build(pool, ConditionKind::Identifiability);
  REQUIRE(pool.size() == 11);

  int triples = 0, feasible_count = 0;
  for (int a = 0; a < pool.size(); ++a) {
    for (int b = a + 1; b < pool.size(); ++b) {
      for (int c = b + 1; c < pool.size(); ++c) {
        ++triples;
        const bool syntactic = model.check(Selection::of({a, b, c})).feasible;
        const bool semantic =
            uniquely_identifies({pool.sets[a], pool.sets[b], pool.sets[c]}, 4, 1).identifies;
        CHECK(syntactic == semantic);
        feasible_count += syntactic;
      }
    }
  }
  CHECK(triples == 165);
  CHECK(feasible_count == 92);
}

TEST_CASE("DOT rendering is valid and complete") {
  const Dag g(3, {{0, 1}, {1, 2}});
  const std::string dot = to_dot(g, "truth");
  CHECK(dot.find("digraph truth {") == 0);
  CHECK(dot.find("0 -> 1;") != std::string::npos);
  CHECK(dot.find("1 -> 2;") != std::string::npos);

  Pdag p(3);
  p.set_link(0, 1, Pdag::Link::Forward);
  p.set_link(1, 2, Pdag::Link::Undirected);
  const std::string pdot = to_dot(p, "state");
  CHECK(pdot.find("0 -> 1;") != std::string::npos);
  CHECK(pdot.find("1 -> 2 [dir=none];") != std::string::npos);
}
