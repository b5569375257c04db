#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "frozen.hpp"
#include "ivd/combinatorics.hpp"

using namespace ivd;

TEST_CASE("variable sets: construction, membership, rendering") {
  const VarSet s = VarSet::of({0, 2, 5});
  CHECK(s.size() == 3);
  CHECK(s.contains(0));
  CHECK(!s.contains(1));
  CHECK(s.members() == std::vector<int>{0, 2, 5});
  CHECK(s.to_string() == "{0,2,5}");
  CHECK(VarSet{}.to_string() == "{}");
  CHECK(VarSet{}.empty());
  CHECK(s.with(1).size() == 4);
  CHECK(s.without(2) == VarSet::of({0, 5}));
  CHECK(s.without(3) == s);
  CHECK_THROWS_AS(VarSet::of({-1}), std::invalid_argument);
  CHECK_THROWS_AS(VarSet::of({32}), std::invalid_argument);
}

TEST_CASE("canonical order: size first, then lexicographic members") {
  CHECK(canonical_less(VarSet{}, VarSet::of({0})));
  CHECK(canonical_less(VarSet::of({3}), VarSet::of({0, 1})));
  CHECK(canonical_less(VarSet::of({0, 3}), VarSet::of({1, 2})));
  CHECK(canonical_less(VarSet::of({0, 1}), VarSet::of({0, 2})));
  CHECK(!canonical_less(VarSet::of({1, 2}), VarSet::of({1, 2})));
  CHECK(!canonical_less(VarSet::of({1, 2}), VarSet::of({0, 3})));
}

TEST_CASE("candidate pools: counts, order, lookup") {
  const CandidatePool pool = generate_candidates({4, 2, true, true});
  REQUIRE(pool.size() == 11);  // null + 4 singletons + 6 doubletons
  CHECK(pool.sets.front() == VarSet{});
  CHECK(std::is_sorted(pool.sets.begin(), pool.sets.end(), canonical_less));
  for (int i = 0; i < pool.size(); ++i) CHECK(pool.index_of(pool.sets[i]) == i);
  CHECK(pool.index_of(VarSet::of({0, 1, 2})) == -1);

  // The half cap binds: k_max = 9 admits nothing above size 2.
  const CandidatePool capped = generate_candidates({4, 9, true, true});
  CHECK(capped.size() == 11);
  CHECK(capped.spec.effective_limit() == 2);

  // Without the cap the full subset lattice up to k_max appears.
  const CandidatePool wide = generate_candidates({4, 4, false, true});
  CHECK(wide.size() == 16);

  const CandidatePool no_null = generate_candidates({4, 1, true, false});
  CHECK(no_null.size() == 4);
  CHECK(no_null.index_of(VarSet{}) == -1);

  const CandidatePool empty = generate_candidates({3, 0, true, false});
  CHECK(empty.size() == 0);

  // n = 9, sizes 0..3: 1 + 9 + 36 + 84.
  CHECK(generate_candidates({9, 3, true, true}).size() == 130);

  CHECK_THROWS_AS(generate_candidates({0, 1, true, true}), std::invalid_argument);
  CHECK_THROWS_AS(generate_candidates({27, 1, true, true}), std::invalid_argument);
  CHECK_THROWS_AS(generate_candidates({4, -1, true, true}), std::invalid_argument);
}

TEST_CASE("pair classification covers all four cases") {
  const Intervention s = VarSet::of({0, 2});
  CHECK(classify(0, 1, s) == PairClass::Forward);
  CHECK(classify(1, 0, s) == PairClass::Backward);
  CHECK(classify(1, 3, s) == PairClass::Null);
  CHECK(classify(0, 2, s) == PairClass::BothIn);
  CHECK_THROWS_AS(classify(1, 1, s), std::invalid_argument);
}

TEST_CASE("binomial coefficients with saturation") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(5, 0) == 1);
  CHECK(binomial(5, 5) == 1);
  CHECK(binomial(5, 6) == 0);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(64, 32) == 1832624140942590534ull);
  const std::uint64_t cap = 1ull << 62;
  CHECK(binomial(70, 35) == cap);
  CHECK(binomial(200, 100) == cap);
}

TEST_CASE("lower bound: exact at the extremes, valid everywhere") {
  CHECK(theoretical_lower_bound(4, 1) == 3);
  CHECK(theoretical_lower_bound(9, 1) == 8);
  CHECK(theoretical_lower_bound(16, 1) == 15);
  CHECK(theoretical_lower_bound(4, 2) == 3);
  CHECK(theoretical_lower_bound(8, 4) == 4);
  CHECK(theoretical_lower_bound(16, 8) == 5);
  CHECK_THROWS_AS(theoretical_lower_bound(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(theoretical_lower_bound(4, 0), std::invalid_argument);

  // Never exceeds the known optimum on any reference cell.
  for (const frozen::Cell& c : frozen::kIdentifiability)
    CHECK(theoretical_lower_bound(c.n, c.k) <= c.value);
}
