#include "ivd/combinatorics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace ivd {

VarSet VarSet::of(std::initializer_list<int> vars) {
  return from_members(std::vector<int>(vars));
}

VarSet VarSet::from_members(const std::vector<int>& vars) {
  std::uint32_t m = 0;
  for (int v : vars) {
    if (v < 0 || v >= 32) throw std::invalid_argument("variable index out of range: " + std::to_string(v));
    m |= 1u << v;
  }
  return VarSet(m);
}

int VarSet::size() const { return std::popcount(mask_); }

VarSet VarSet::with(int v) const {
  if (v < 0 || v >= 32) throw std::invalid_argument("variable index out of range");
  return VarSet(mask_ | (1u << v));
}

VarSet VarSet::without(int v) const {
  if (v < 0 || v >= 32) throw std::invalid_argument("variable index out of range");
  return VarSet(mask_ & ~(1u << v));
}

std::vector<int> VarSet::members() const {
  std::vector<int> out;
  out.reserve(size());
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string VarSet::to_string() const {
  std::string s = "{";
  bool first = true;
  for (int v : members()) {
    if (!first) s += ",";
    s += std::to_string(v);
    first = false;
  }
  return s + "}";
}

bool canonical_less(VarSet a, VarSet b) {
  if (a.size() != b.size()) return a.size() < b.size();
  // Equal sizes: lexicographic on ascending member lists. Comparing from the
  // lowest element, the first position where they differ decides.
  std::uint32_t ma = a.mask(), mb = b.mask();
  while (ma != 0 && mb != 0) {
    int la = std::countr_zero(ma), lb = std::countr_zero(mb);
    if (la != lb) return la < lb;
    ma &= ma - 1;
    mb &= mb - 1;
  }
  return false;  // equal
}

int ProblemSpec::effective_limit() const {
  int hard = cap_to_half ? n / 2 : n;
  return std::min(k_max, hard);
}

void ProblemSpec::validate() const {
  if (n < 1 || n > kMaxVariables)
    throw std::invalid_argument("n must be in [1, " + std::to_string(kMaxVariables) + "]");
  if (k_max < 0) throw std::invalid_argument("k_max must be non-negative");
}

int CandidatePool::index_of(Intervention s) const {
  auto it = std::lower_bound(sets.begin(), sets.end(), s, canonical_less);
  if (it != sets.end() && *it == s) return static_cast<int>(it - sets.begin());
  return -1;
}

namespace {

void emit_combinations(int n, int size, std::vector<Intervention>& out) {
  if (size == 0) {
    out.push_back(VarSet{});
    return;
  }
  std::vector<int> idx(size);
  for (int i = 0; i < size; ++i) idx[i] = i;
  while (true) {
    out.push_back(VarSet::from_members(idx));
    int pos = size - 1;
    while (pos >= 0 && idx[pos] == n - size + pos) --pos;
    if (pos < 0) break;
    ++idx[pos];
    for (int i = pos + 1; i < size; ++i) idx[i] = idx[i - 1] + 1;
  }
}

}  // namespace

CandidatePool generate_candidates(const ProblemSpec& spec) {
  spec.validate();
  CandidatePool pool;
  pool.spec = spec;
  int limit = spec.effective_limit();
  if (spec.include_null) pool.sets.push_back(VarSet{});
  for (int size = 1; size <= limit; ++size) emit_combinations(spec.n, size, pool.sets);
  return pool;
}

PairClass classify(int i, int j, Intervention s) {
  if (i == j) throw std::invalid_argument("pair requires two distinct variables");
  if (i < 0 || j < 0) throw std::invalid_argument("variable indices must be non-negative");
  bool in_i = s.contains(i), in_j = s.contains(j);
  if (in_i && in_j) return PairClass::BothIn;
  if (in_i) return PairClass::Forward;
  if (in_j) return PairClass::Backward;
  return PairClass::Null;
}

const char* to_string(PairClass c) {
  switch (c) {
    case PairClass::Forward: return "forward";
    case PairClass::Backward: return "backward";
    case PairClass::Null: return "null";
    case PairClass::BothIn: return "both-in";
  }
  return "?";
}

int theoretical_lower_bound(int n, int k_max) {
  if (n < 2) throw std::invalid_argument("bound requires n >= 2");
  if (k_max < 1) throw std::invalid_argument("bound requires k_max >= 1");
  int log_bound = std::bit_width(static_cast<unsigned>(n)) - 1 + 1;  // floor(log2 n) + 1
  if (k_max == 1) return std::max(n - 1, log_bound);
  return log_bound;  // tight for k_max >= floor(n/2), weak in between
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  constexpr std::uint64_t cap = 1ull << 62;
  // 128-bit intermediates: the running product can briefly exceed 64 bits
  // even when the result fits. Prefix products stay integral, so dividing
  // right after each multiply keeps the value exact.
  unsigned __int128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r >= cap) return cap;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace ivd
