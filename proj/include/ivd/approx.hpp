#pragma once

#include "ivd/model.hpp"

namespace ivd {

struct ApproxResult {
  Selection selection;
  double objective = 0.0;
  bool feasible = false;
  // Proven worst-case ratio against the optimum for this instance, together
  // with a certified lower bound on that optimum, so callers can sandwich
  // the result without re-solving.
  double factor = 1.0;
  double lower_bound = 0.0;
};

// Unit-greedy covering: repeatedly take the candidate covering the most
// still-needed units per unit cost, ties to the lower candidate index. A
// candidate contributes at most one unit per pair and step. Factor is the
// harmonic number of the largest per-candidate unit coverage. An infeasible
// result (never completing the cover) proves the model itself infeasible.
ApproxResult greedy(const CoverModel& model);

// LP rounding: solve the relaxation, then keep every candidate whose value
// reaches 1/f (single-row kinds) or 1/(2f) after keeping the two strongest
// class variables per pair (identifiability), where f is the largest number
// of candidates any active row offers. Factor f, respectively 2f.
ApproxResult lp_round(const CoverModel& model);

}  // namespace ivd
