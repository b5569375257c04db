#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "ivd/approx.hpp"
#include "ivd/solver.hpp"

using namespace ivd;

namespace {

const std::vector<ConditionKind> kKinds = {ConditionKind::CC, ConditionKind::UPC,
                                           ConditionKind::OPC, ConditionKind::Identifiability};

}  // namespace

TEST_CASE("heuristics stay feasible and inside their guarantees") {
  for (ConditionKind kind : kKinds) {
    for (int n = 2; n <= 9; ++n) {
      for (int k = 1; k <= std::max(1, std::min(4, n / 2)); ++k) {
        CAPTURE(to_string(kind));
        CAPTURE(n);
        CAPTURE(k);
        const CandidatePool pool = generate_candidates({n, k, true, true});
        const CoverModel model = CoverModel::build(pool, kind);
        const SolveOutcome exact = solve(model);
        REQUIRE(exact.status == SolveStatus::Optimal);
        const double opt = exact.objective;

        const ApproxResult g = greedy(model);
        REQUIRE(g.feasible);
        CHECK(model.check(g.selection).feasible);
        CHECK(g.objective >= opt - 1e-9);
        CHECK(g.objective <= g.factor * opt + 1e-9);
        CHECK(g.lower_bound <= opt + 1e-9);

        const ApproxResult r = lp_round(model);
        REQUIRE(r.feasible);
        CHECK(model.check(r.selection).feasible);
        CHECK(r.objective >= opt - 1e-9);
        CHECK(r.objective <= r.factor * opt + 1e-9);
        CHECK(r.lower_bound <= opt + 1e-9);  // the LP value itself
      }
    }
  }
}

TEST_CASE("greedy is deterministic: ties go to the lower candidate index") {
  const CandidatePool pool = generate_candidates({4, 2, true, true});
  CostVector costs(pool.size(), 1.0);
  costs[0] = 0.0;  // free null experiment
  const CoverModel model = CoverModel::build(pool, ConditionKind::Identifiability, costs);
  const ApproxResult g = greedy(model);
  REQUIRE(g.feasible);
  CHECK(g.selection.chosen == std::vector<int>{0, 5, 6});
  CHECK(g.objective == doctest::Approx(2.0));
  // H_6: the null experiment covers one unit for each of the 6 pairs.
  CHECK(g.factor == doctest::Approx(1.0 + 1.0 / 2 + 1.0 / 3 + 1.0 / 4 + 1.0 / 5 + 1.0 / 6));
}

TEST_CASE("an infeasible model is reported as such") {
  const CandidatePool pool = generate_candidates({2, 1, true, false});
  const CoverModel model = CoverModel::build(pool, ConditionKind::CC);
  CHECK(!greedy(model).feasible);
  CHECK(!lp_round(model).feasible);
}

TEST_CASE("weighted instances keep the sandwich ordering") {
  const CandidatePool pool = generate_candidates({6, 3, true, true});
  CostVector costs(pool.size());
  for (int i = 0; i < pool.size(); ++i) costs[i] = 0.5 + (i * 11 % 7);
  for (ConditionKind kind : kKinds) {
    CAPTURE(to_string(kind));
    const CoverModel model = CoverModel::build(pool, kind, costs);
    const SolveOutcome exact = solve(model);
    REQUIRE(exact.status == SolveStatus::Optimal);
    const ApproxResult g = greedy(model);
    const ApproxResult r = lp_round(model);
    REQUIRE(g.feasible);
    REQUIRE(r.feasible);
    CHECK(g.lower_bound <= exact.objective + 1e-9);
    CHECK(r.lower_bound <= exact.objective + 1e-9);
    CHECK(g.objective <= g.factor * exact.objective + 1e-9);
    CHECK(r.objective <= r.factor * exact.objective + 1e-6);
  }
}
