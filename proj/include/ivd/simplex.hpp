#pragma once

#include <utility>
#include <vector>

namespace ivd {

// Dense two-phase primal simplex, deterministic: most-negative-cost pivoting
// that falls back to strict Bland's rule (anti-cycling) after a degenerate
// stretch. Minimizes c'x over {x >= 0, constraints below}. Sized for the
// modest LPs these covering models produce; no sparsity, no warm starts.
class LinearProgram {
public:
  enum class Status { Optimal, Infeasible, Unbounded };

  struct Result {
    Status status = Status::Infeasible;
    double value = 0.0;
    std::vector<double> x;
  };

  explicit LinearProgram(int num_vars);

  void set_objective(int var, double coeff);
  // terms: (variable, coefficient) pairs; one variable may appear once.
  void add_ge(std::vector<std::pair<int, double>> terms, double rhs);
  void add_le(std::vector<std::pair<int, double>> terms, double rhs);

  Result solve() const;

  static constexpr double kEps = 1e-9;

private:
  struct Constraint {
    std::vector<std::pair<int, double>> terms;
    double rhs = 0.0;
    bool ge = true;
  };

  int num_vars_;
  std::vector<double> objective_;
  std::vector<Constraint> constraints_;
};

}  // namespace ivd
