#include "ivd/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace ivd {

LinearProgram::LinearProgram(int num_vars) : num_vars_(num_vars), objective_(num_vars, 0.0) {
  if (num_vars < 1) throw std::invalid_argument("LP needs at least one variable");
}

void LinearProgram::set_objective(int var, double coeff) { objective_.at(var) = coeff; }

void LinearProgram::add_ge(std::vector<std::pair<int, double>> terms, double rhs) {
  for (auto& [v, c] : terms)
    if (v < 0 || v >= num_vars_) throw std::out_of_range("LP term variable out of range");
  constraints_.push_back({std::move(terms), rhs, true});
}

void LinearProgram::add_le(std::vector<std::pair<int, double>> terms, double rhs) {
  for (auto& [v, c] : terms)
    if (v < 0 || v >= num_vars_) throw std::out_of_range("LP term variable out of range");
  constraints_.push_back({std::move(terms), rhs, false});
}

LinearProgram::Result LinearProgram::solve() const {
  const int m = static_cast<int>(constraints_.size());
  const int n = num_vars_;

  // Normalize every row to b >= 0, give each a slack (<=) or surplus (>=)
  // column, and an artificial where the surplus cannot start basic.
  std::vector<bool> row_ge(m);
  std::vector<double> b(m);
  int num_art = 0;
  for (int r = 0; r < m; ++r) {
    bool ge = constraints_[r].ge;
    double rhs = constraints_[r].rhs;
    if (rhs < 0) ge = !ge;
    row_ge[r] = ge;
    if (ge) ++num_art;
  }

  const int slack0 = n;
  const int art0 = n + m;
  const int ncols = art0 + num_art;

  std::vector<std::vector<double>> a(m, std::vector<double>(ncols, 0.0));
  std::vector<int> basis(m, -1);
  int next_art = art0;
  for (int r = 0; r < m; ++r) {
    const auto& con = constraints_[r];
    double sign = con.rhs < 0 ? -1.0 : 1.0;
    for (auto [v, c] : con.terms) a[r][v] += sign * c;
    b[r] = sign * con.rhs;
    a[r][slack0 + r] = row_ge[r] ? -1.0 : 1.0;
    if (row_ge[r]) {
      a[r][next_art] = 1.0;
      basis[r] = next_art++;
    } else {
      basis[r] = slack0 + r;
    }
  }

  // z-row carries phase-2 reduced costs, w-row phase-1; both store the
  // negated objective value in their last slot.
  std::vector<double> z(ncols + 1, 0.0), w(ncols + 1, 0.0);
  for (int v = 0; v < n; ++v) z[v] = objective_[v];
  for (int r = 0; r < m; ++r) {
    if (basis[r] >= art0) {
      for (int col = 0; col < ncols; ++col) w[col] -= a[r][col];
      w[ncols] -= b[r];
      w[basis[r]] += 1.0;  // keep the basic artificial's reduced cost at zero
    }
  }

  auto pivot = [&](int prow, int pcol) {
    double piv = a[prow][pcol];
    for (int col = 0; col < ncols; ++col) a[prow][col] /= piv;
    b[prow] /= piv;
    for (int r = 0; r < m; ++r) {
      if (r == prow) continue;
      double f = a[r][pcol];
      if (f == 0.0) continue;
      for (int col = 0; col < ncols; ++col) a[r][col] -= f * a[prow][col];
      a[r][pcol] = 0.0;
      b[r] -= f * b[prow];
    }
    for (auto* obj : {&z, &w}) {
      double f = (*obj)[pcol];
      if (f == 0.0) continue;
      for (int col = 0; col < ncols; ++col) (*obj)[col] -= f * a[prow][col];
      (*obj)[pcol] = 0.0;
      (*obj)[ncols] -= f * b[prow];
    }
    basis[prow] = pcol;
  };

  // Steepest-descent (most negative reduced cost) pivoting for speed. A long
  // run of degenerate pivots switches to strict Bland's rule — lowest
  // entering index, exact min-ratio with ties to the lowest basic index —
  // which cannot cycle. Tolerant tie windows in the ratio test would void
  // that guarantee, so the comparisons there are exact.
  auto iterate = [&](std::vector<double>& obj, int col_limit) -> bool {
    const long long bland_after = 4LL * (m + ncols);
    constexpr long long hard_cap = 1LL << 22;  // loud tripwire, never a hang
    long long degenerate_run = 0, iterations = 0;
    bool bland = false;
    while (true) {
      if (++iterations > hard_cap) throw std::runtime_error("simplex failed to converge");
      int pcol = -1;
      if (bland) {
        for (int col = 0; col < col_limit; ++col)
          if (obj[col] < -kEps) {
            pcol = col;
            break;
          }
      } else {
        double most = -kEps;
        for (int col = 0; col < col_limit; ++col)
          if (obj[col] < most) {
            most = obj[col];
            pcol = col;
          }
      }
      if (pcol < 0) return true;
      int prow = -1;
      double best = 0.0;
      for (int r = 0; r < m; ++r) {
        if (a[r][pcol] > kEps) {
          const double ratio = b[r] / a[r][pcol];
          if (prow < 0 || ratio < best || (ratio == best && basis[r] < basis[prow])) {
            prow = r;
            best = ratio;
          }
        }
      }
      if (prow < 0) return false;  // unbounded
      degenerate_run = best <= kEps ? degenerate_run + 1 : 0;
      if (degenerate_run > bland_after) bland = true;
      pivot(prow, pcol);
    }
  };

  Result res;
  if (num_art > 0) {
    iterate(w, ncols);
    if (-w[ncols] > 1e-7) {
      res.status = Status::Infeasible;
      return res;
    }
    // Drive artificials still basic at level zero out of the basis; rows
    // where that is impossible are redundant and keep them basic at zero.
    for (int r = 0; r < m; ++r) {
      if (basis[r] >= art0) {
        for (int col = 0; col < art0; ++col)
          if (std::fabs(a[r][col]) > kEps) {
            pivot(r, col);
            break;
          }
      }
    }
  }

  if (!iterate(z, art0)) {
    res.status = Status::Unbounded;
    return res;
  }

  res.status = Status::Optimal;
  res.x.assign(n, 0.0);
  for (int r = 0; r < m; ++r)
    if (basis[r] < n) res.x[basis[r]] = b[r];
  double val = 0.0;
  for (int v = 0; v < n; ++v) val += objective_[v] * res.x[v];
  res.value = val;
  return res;
}

}  // namespace ivd
