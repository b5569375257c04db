#include "ivd/tables.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ivd/solver.hpp"

namespace ivd {

namespace {

std::string format_tuple(const std::vector<int>& sizes) {
  std::string s = "(";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(sizes[i]);
  }
  return s + ")";
}

std::string format_number(double v) {
  std::ostringstream os;
  if (std::fabs(v - std::round(v)) < 1e-9)
    os << static_cast<long long>(std::llround(v));
  else
    os << v;
  return os.str();
}

struct Grid {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string render(const Grid& grid, bool markdown) {
  std::ostringstream os;
  auto quote_csv = [](const std::string& cell) {
    if (cell.find(',') == std::string::npos) return cell;
    return "\"" + cell + "\"";
  };
  if (markdown) {
    os << "|";
    for (const auto& h : grid.header) os << " " << h << " |";
    os << "\n|";
    for (std::size_t i = 0; i < grid.header.size(); ++i) os << "---|";
    os << "\n";
    for (const auto& row : grid.rows) {
      os << "|";
      for (const auto& cell : row) os << " " << cell << " |";
      os << "\n";
    }
  } else {
    for (std::size_t i = 0; i < grid.header.size(); ++i)
      os << (i ? "," : "") << quote_csv(grid.header[i]);
    os << "\n";
    for (const auto& row : grid.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << quote_csv(row[i]);
      os << "\n";
    }
  }
  return os.str();
}

Grid make_grid(const TableOptions& opt) {
  Grid grid;
  grid.header.push_back("N");
  for (int k : opt.ks) grid.header.push_back("k_max=" + std::to_string(k));
  return grid;
}

SolveParams params_of(const TableOptions& opt) {
  SolveParams p;
  p.time_limit_s = opt.time_limit_s;
  p.threads = opt.threads;
  return p;
}

CoverModel cell_model(int n, int k, ConditionKind kind) {
  return CoverModel::build(generate_candidates(ProblemSpec{n, k}), kind, {});
}

std::string with_time(std::string cell, double wall_s, bool enabled) {
  if (!enabled) return cell;
  std::ostringstream os;
  os << cell << " (" << (wall_s < 0.005 ? "<0.01" : format_number(std::round(wall_s * 100) / 100))
     << ")";
  return os.str();
}

}  // namespace

std::string objective_table(ConditionKind kind, const TableOptions& opt) {
  Grid grid = make_grid(opt);
  for (int n : opt.ns) {
    std::vector<std::string> row{std::to_string(n)};
    for (int k : opt.ks) {
      if (kind == ConditionKind::Identifiability && k > n / 2) {
        row.push_back("-");
        continue;
      }
      const SolveOutcome out = solve(cell_model(n, k, kind), params_of(opt));
      std::string cell;
      switch (out.status) {
        case SolveStatus::Optimal:
          cell = format_number(out.objective);
          break;
        case SolveStatus::Feasible:
          cell = format_number(out.objective) + " (>=" + format_number(out.dual_bound) + ")";
          break;
        case SolveStatus::Infeasible:
        case SolveStatus::NoCandidates:
          cell = "inf";
          break;
      }
      row.push_back(with_time(cell, out.wall_s, opt.with_times));
    }
    grid.rows.push_back(std::move(row));
  }
  return render(grid, opt.markdown);
}

std::string size_configuration_table(const TableOptions& opt) {
  Grid grid = make_grid(opt);
  for (int n : opt.ns) {
    std::vector<std::string> row{std::to_string(n)};
    for (int k : opt.ks) {
      if (k > n / 2) {
        row.push_back("-");
        continue;
      }
      const auto configs = size_configurations(
          cell_model(n, k, ConditionKind::Identifiability), params_of(opt));
      std::string cell;
      for (std::size_t i = 0; i < configs.size(); ++i) {
        if (i) cell += " ";
        cell += format_tuple(configs[i]);
      }
      row.push_back(cell.empty() ? "inf" : cell);
    }
    grid.rows.push_back(std::move(row));
  }
  return render(grid, opt.markdown);
}

std::string preferred_configuration_table(const TableOptions& opt) {
  Grid grid = make_grid(opt);
  for (int n : opt.ns) {
    std::vector<std::string> row{std::to_string(n)};
    for (int k : opt.ks) {
      if (k > n / 2) {
        row.push_back("-");
        continue;
      }
      const CoverModel model = cell_model(n, k, ConditionKind::Identifiability);
      const SolveOutcome out =
          solve_lexicographic(model, LexObjective::MinTotalSize, params_of(opt));
      if (out.status != SolveStatus::Optimal || !out.best) {
        row.push_back("inf");
        continue;
      }
      std::vector<int> sizes;
      for (int idx : out.best->chosen) sizes.push_back(model.pool().sets[idx].size());
      std::sort(sizes.begin(), sizes.end());
      row.push_back(format_tuple(sizes));
    }
    grid.rows.push_back(std::move(row));
  }
  return render(grid, opt.markdown);
}

}  // namespace ivd
