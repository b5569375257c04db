#include "ivd/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace ivd {

namespace {

std::string trim(const std::string& s) {
  auto a = s.find_first_not_of(" \t\r");
  auto b = s.find_last_not_of(" \t\r");
  return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool parse_bool(const std::string& source, int line, const std::string& key,
                const std::string& value) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ParseError(source, line, key + " expects a boolean, got '" + value + "'");
}

long long parse_int(const std::string& source, int line, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line, key + " expects an integer, got '" + value + "'");
  }
}

double parse_double(const std::string& source, int line, const std::string& key,
                    const std::string& value) {
  try {
    std::size_t used = 0;
    double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(source, line, key + " expects a number, got '" + value + "'");
  }
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

}  // namespace

RunConfig parse_run_config(std::istream& in, const std::string& source) {
  RunConfig cfg;
  std::set<std::string> seen;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(source, lineno, "expected 'key = value', got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(source, lineno, "missing key before '='");
    if (value.empty()) throw ParseError(source, lineno, "missing value for '" + key + "'");
    if (!seen.insert(key).second)
      throw ParseError(source, lineno, "duplicate key '" + key + "'");

    if (key == "n") {
      cfg.n = static_cast<int>(parse_int(source, lineno, key, value));
    } else if (key == "k_max") {
      cfg.k_max = static_cast<int>(parse_int(source, lineno, key, value));
    } else if (key == "kind") {
      try {
        cfg.kind = condition_kind_from_string(value);
      } catch (const std::invalid_argument& e) {
        throw ParseError(source, lineno, e.what());
      }
    } else if (key == "cost") {
      if (value == "uniform")
        cfg.cost = CostSpec::Uniform;
      else if (value == "null-free")
        cfg.cost = CostSpec::NullFree;
      else if (value == "file")
        cfg.cost = CostSpec::File;
      else
        throw ParseError(source, lineno,
                         "cost must be uniform, null-free, or file; got '" + value + "'");
    } else if (key == "cost_file") {
      cfg.cost_file = value;
    } else if (key == "secondary") {
      if (value == "none")
        cfg.secondary = SecondaryObjective::None;
      else if (value == "min-total-size")
        cfg.secondary = SecondaryObjective::MinTotalSize;
      else if (value == "min-max-size")
        cfg.secondary = SecondaryObjective::MinMaxSize;
      else
        throw ParseError(source, lineno,
                         "secondary must be none, min-total-size, or min-max-size; got '" +
                             value + "'");
    } else if (key == "enumerate_all") {
      cfg.enumerate_all = parse_bool(source, lineno, key, value);
    } else if (key == "time_limit_s") {
      cfg.time_limit_s = parse_double(source, lineno, key, value);
    } else if (key == "node_limit") {
      cfg.node_limit = parse_int(source, lineno, key, value);
    } else if (key == "threads") {
      cfg.threads = static_cast<int>(parse_int(source, lineno, key, value));
    } else if (key == "format") {
      if (value == "human")
        cfg.format = OutputFormat::Human;
      else if (value == "csv")
        cfg.format = OutputFormat::Csv;
      else if (value == "markdown")
        cfg.format = OutputFormat::Markdown;
      else if (value == "records")
        cfg.format = OutputFormat::Records;
      else
        throw ParseError(source, lineno,
                         "format must be human, csv, markdown, or records; got '" + value + "'");
    } else if (key == "include_null") {
      cfg.include_null = parse_bool(source, lineno, key, value);
    } else if (key == "cap_to_half") {
      cfg.cap_to_half = parse_bool(source, lineno, key, value);
    } else {
      throw ParseError(source, lineno, "unknown key '" + key + "'");
    }
  }
  if (cfg.cost == CostSpec::File && cfg.cost_file.empty())
    throw ParseError(source, lineno, "cost = file requires cost_file");
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_run_config(in, path);
}

CostVector build_costs(const RunConfig& config, const CandidatePool& pool) {
  CostVector costs(pool.size(), 1.0);
  switch (config.cost) {
    case CostSpec::Uniform:
      break;
    case CostSpec::NullFree: {
      const int idx = pool.index_of(VarSet{});
      if (idx >= 0) costs[idx] = 0.0;
      break;
    }
    case CostSpec::File: {
      auto in = open_or_throw(config.cost_file);
      std::string raw;
      int lineno = 0;
      while (std::getline(in, raw)) {
        ++lineno;
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;
        std::istringstream is(line);
        long long idx;
        double value;
        if (!(is >> idx >> value) || !(is >> std::ws).eof())
          throw ParseError(config.cost_file, lineno,
                           "expected '<candidate-index> <cost>', got '" + line + "'");
        if (idx < 0 || idx >= pool.size())
          throw ParseError(config.cost_file, lineno,
                           "candidate index " + std::to_string(idx) + " outside pool of " +
                               std::to_string(pool.size()));
        if (!(value >= 0.0) || !std::isfinite(value))
          throw ParseError(config.cost_file, lineno, "costs must be finite and non-negative");
        costs[static_cast<std::size_t>(idx)] = value;
      }
      break;
    }
  }
  return costs;
}

std::vector<Intervention> parse_selection_file(std::istream& in, const std::string& source) {
  std::vector<Intervention> sets;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    if (line == "-") {
      sets.push_back(VarSet{});
      continue;
    }
    std::istringstream is(line);
    std::vector<int> members;
    long long v;
    while (is >> v) {
      if (v < 0 || v >= kMaxVariables)
        throw ParseError(source, lineno, "variable index " + std::to_string(v) + " out of range");
      members.push_back(static_cast<int>(v));
    }
    if (!is.eof())
      throw ParseError(source, lineno, "expected space-separated variable indices, got '" +
                                           line + "'");
    sets.push_back(VarSet::from_members(members));
  }
  return sets;
}

std::vector<Intervention> load_selection_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_selection_file(in, path);
}

void write_selection_file(std::ostream& out, const std::vector<Intervention>& sets) {
  for (const Intervention& s : sets) {
    if (s.empty()) {
      out << "-\n";
      continue;
    }
    bool first = true;
    for (int v : s.members()) {
      if (!first) out << ' ';
      out << v;
      first = false;
    }
    out << '\n';
  }
}

Dag parse_dag_file(std::istream& in, const std::string& source) {
  std::string raw;
  int lineno = 0;
  int n = -1;
  std::vector<std::pair<int, int>> edges;
  while (std::getline(in, raw)) {
    ++lineno;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    std::istringstream is(line);
    if (n < 0) {
      std::string word;
      long long count;
      if (!(is >> word >> count) || word != "nodes" || !(is >> std::ws).eof())
        throw ParseError(source, lineno, "first line must be 'nodes N', got '" + line + "'");
      n = static_cast<int>(count);
      continue;
    }
    long long p, c;
    if (!(is >> p >> c) || !(is >> std::ws).eof())
      throw ParseError(source, lineno, "expected 'parent child', got '" + line + "'");
    edges.emplace_back(static_cast<int>(p), static_cast<int>(c));
  }
  if (n < 0) throw ParseError(source, lineno, "missing 'nodes N' header");
  try {
    return Dag(n, edges);
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, lineno, e.what());
  }
}

Dag load_dag_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_dag_file(in, path);
}

}  // namespace ivd
