#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ivd/causal.hpp"
#include "ivd/model.hpp"
#include "ivd/solver.hpp"

namespace ivd {

// Error in a structured input file, carrying the 1-based line it came from.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& source, int line, const std::string& what)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

private:
  int line_;
};

enum class CostSpec {
  Uniform,   // every candidate costs 1
  NullFree,  // the empty intervention costs 0, everything else 1
  File,      // per-candidate costs from a separate file
};

enum class SecondaryObjective { None, MinTotalSize, MinMaxSize };

enum class OutputFormat { Human, Csv, Markdown, Records };

// One solve's worth of settings, parseable from a `key = value` file.
// Unknown or repeated keys are rejected with line diagnostics.
struct RunConfig {
  int n = 0;
  int k_max = 0;
  ConditionKind kind = ConditionKind::Identifiability;
  CostSpec cost = CostSpec::Uniform;
  std::string cost_file;
  SecondaryObjective secondary = SecondaryObjective::None;
  bool enumerate_all = false;
  double time_limit_s = 0.0;
  long long node_limit = 0;
  int threads = 1;
  OutputFormat format = OutputFormat::Human;
  bool include_null = true;
  bool cap_to_half = true;

  ProblemSpec problem() const { return {n, k_max, cap_to_half, include_null}; }
};

// Accepted keys: n, k_max, kind, cost, cost_file, secondary, enumerate_all,
// time_limit_s, node_limit, threads, format, include_null, cap_to_half.
// `source` names the stream in diagnostics.
RunConfig parse_run_config(std::istream& in, const std::string& source = "config");
RunConfig load_run_config(const std::string& path);

// Cost vector a config describes, resolved against a concrete pool.
CostVector build_costs(const RunConfig& config, const CandidatePool& pool);

// Selection files: one intervention per line, members space-separated,
// a lone '-' for the empty intervention, '#' comments allowed.
std::vector<Intervention> parse_selection_file(std::istream& in,
                                               const std::string& source = "selection");
std::vector<Intervention> load_selection_file(const std::string& path);
void write_selection_file(std::ostream& out, const std::vector<Intervention>& sets);

// DAG files: a `nodes N` header line, then one `parent child` edge per line.
Dag parse_dag_file(std::istream& in, const std::string& source = "dag");
Dag load_dag_file(const std::string& path);

}  // namespace ivd
