#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace ivd {

// Variables are indices in [0, n). Sets of them fit in a 32-bit mask; pools
// get impractically large long before that limit matters.
inline constexpr int kMaxVariables = 26;

class VarSet {
public:
  VarSet() = default;
  explicit VarSet(std::uint32_t mask) : mask_(mask) {}
  static VarSet of(std::initializer_list<int> vars);
  static VarSet from_members(const std::vector<int>& vars);

  bool contains(int v) const { return v >= 0 && v < 32 && (mask_ >> v & 1u); }
  int size() const;
  bool empty() const { return mask_ == 0; }
  std::uint32_t mask() const { return mask_; }
  VarSet with(int v) const;
  VarSet without(int v) const;
  std::vector<int> members() const;
  std::string to_string() const;  // "{}", "{3}", "{0,2}"

  friend bool operator==(VarSet, VarSet) = default;

private:
  std::uint32_t mask_ = 0;
};

using Intervention = VarSet;

// Canonical order used everywhere: smaller sets first, ties by lexicographic
// comparison of the sorted member lists ({0,3} before {1,2}).
bool canonical_less(VarSet a, VarSet b);

struct ProblemSpec {
  int n = 0;
  int k_max = 0;
  bool cap_to_half = true;
  bool include_null = true;

  // Largest candidate size actually admitted to the pool.
  int effective_limit() const;
  void validate() const;  // throws std::invalid_argument
};

struct CandidatePool {
  ProblemSpec spec;
  std::vector<Intervention> sets;  // canonical order; position = candidate index

  int size() const { return static_cast<int>(sets.size()); }
  int index_of(Intervention s) const;  // -1 when absent
};

// All subsets of {0..n-1} up to the effective size limit, in canonical order,
// the empty intervention first when include_null is set.
CandidatePool generate_candidates(const ProblemSpec& spec);

enum class PairClass { Forward, Backward, Null, BothIn };

// Class of the ordered pair (i, j) under intervention s.
// Forward: i in s, j not; Backward: j in s, i not; Null: neither; BothIn: both.
PairClass classify(int i, int j, Intervention s);

const char* to_string(PairClass c);

// Known lower bound on the number of experiments needed for full
// identifiability of a causal structure over n variables with interventions
// of size at most k_max. Tight for k_max = 1 and k_max >= floor(n/2); the
// intermediate regime returns floor(log2 n) + 1, which is weak (the true
// optimum can be much larger).
int theoretical_lower_bound(int n, int k_max);

// C(n, k) saturated at 2^62 to stay overflow-safe for bound arithmetic.
std::uint64_t binomial(int n, int k);

}  // namespace ivd
