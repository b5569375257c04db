// Command-line front end: design solves one covering instance, tables
// regenerates the result grids, verify checks a selection file against the
// pairwise conditions (and exhaustively against all small DAGs), simulate
// replays an intervention family on a known graph and renders each inference
// state to DOT.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ivd/approx.hpp"
#include "ivd/causal.hpp"
#include "ivd/config.hpp"
#include "ivd/solver.hpp"
#include "ivd/tables.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOptimal = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitLimitHit = 3;
constexpr int kExitUsage = 4;

int exit_code_of(ivd::SolveStatus status) {
  switch (status) {
    case ivd::SolveStatus::Optimal: return kExitOptimal;
    case ivd::SolveStatus::Feasible: return kExitLimitHit;
    case ivd::SolveStatus::Infeasible:
    case ivd::SolveStatus::NoCandidates: return kExitInfeasible;
  }
  return kExitUsage;
}

std::string sets_text(const ivd::CandidatePool& pool, const ivd::Selection& sel) {
  std::string out;
  for (int idx : sel.chosen) {
    if (!out.empty()) out += ' ';
    out += pool.sets[idx].to_string();
  }
  return out.empty() ? "(none)" : out;
}

std::string indices_text(const ivd::Selection& sel) {
  std::string out;
  for (int idx : sel.chosen) {
    if (!out.empty()) out += ' ';
    out += std::to_string(idx);
  }
  return out.empty() ? "-" : out;
}

std::string sizes_text(const ivd::CandidatePool& pool, const ivd::Selection& sel) {
  std::vector<int> sizes;
  for (int idx : sel.chosen) sizes.push_back(pool.sets[idx].size());
  std::sort(sizes.begin(), sizes.end());
  std::string out = "(";
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(sizes[i]);
  }
  return out + ")";
}

std::string number_text(double v) {
  std::ostringstream os;
  if (std::fabs(v - std::round(v)) < 1e-9)
    os << static_cast<long long>(std::llround(v));
  else
    os << v;
  return os.str();
}

// "2,5,8-10" -> {2,5,8,9,10}
std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    const auto dash = token.find('-', 1);
    try {
      if (dash == std::string::npos) {
        out.push_back(std::stoi(token));
      } else {
        int lo = std::stoi(token.substr(0, dash));
        int hi = std::stoi(token.substr(dash + 1));
        if (hi < lo) throw std::invalid_argument("descending range");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      throw CLI::ValidationError("list", "cannot parse '" + token + "' in '" + text + "'");
    }
  }
  if (out.empty()) throw CLI::ValidationError("list", "empty list '" + text + "'");
  return out;
}

json selection_json(const ivd::Selection& sel) {
  return json(sel.chosen);
}

struct DesignArgs {
  std::string config_path;
  ivd::RunConfig cfg;
  bool lp_bounding = false;
  std::string selection_out;
  std::string greedy_mode;  // "", "greedy", "lp-round"
};

int run_design(DesignArgs& a, CLI::App* cmd) {
  ivd::RunConfig& cfg = a.cfg;
  if (!a.config_path.empty()) {
    ivd::RunConfig file_cfg = ivd::load_run_config(a.config_path);
    // Flags the user passed override the file.
    if (!cmd->count("--n")) cfg.n = file_cfg.n;
    if (!cmd->count("--k")) cfg.k_max = file_cfg.k_max;
    if (!cmd->count("--kind")) cfg.kind = file_cfg.kind;
    if (!cmd->count("--cost")) cfg.cost = file_cfg.cost;
    if (!cmd->count("--cost-file")) cfg.cost_file = file_cfg.cost_file;
    if (!cmd->count("--secondary")) cfg.secondary = file_cfg.secondary;
    if (!cmd->count("--all")) cfg.enumerate_all = file_cfg.enumerate_all;
    if (!cmd->count("--time-limit")) cfg.time_limit_s = file_cfg.time_limit_s;
    if (!cmd->count("--node-limit")) cfg.node_limit = file_cfg.node_limit;
    if (!cmd->count("--threads")) cfg.threads = file_cfg.threads;
    if (!cmd->count("--format")) cfg.format = file_cfg.format;
    if (!cmd->count("--no-null")) cfg.include_null = file_cfg.include_null;
    if (!cmd->count("--no-cap")) cfg.cap_to_half = file_cfg.cap_to_half;
  }

  const ivd::CandidatePool pool = ivd::generate_candidates(cfg.problem());
  const ivd::CoverModel model =
      ivd::CoverModel::build(pool, cfg.kind, ivd::build_costs(cfg, pool));

  ivd::SolveParams params;
  params.time_limit_s = cfg.time_limit_s;
  params.node_limit = cfg.node_limit;
  params.threads = cfg.threads;
  params.bounding = a.lp_bounding ? ivd::BoundingMode::LpRelaxation : ivd::BoundingMode::Combinatorial;

  const bool records = cfg.format == ivd::OutputFormat::Records;
  if (records)
    params.on_incumbent = [](const ivd::Incumbent& inc) {
      json rec{{"event", "incumbent"},
               {"objective", inc.objective},
               {"dual_bound", inc.dual_bound},
               {"nodes", inc.nodes},
               {"wall_s", inc.wall_s},
               {"selection", selection_json(inc.selection)}};
      std::cout << rec.dump() << "\n";
    };

  // Approximation-only modes report the heuristic selection and its
  // certificates instead of running the exact search.
  if (!a.greedy_mode.empty()) {
    const ivd::ApproxResult res =
        a.greedy_mode == "greedy" ? ivd::greedy(model) : ivd::lp_round(model);
    if (records) {
      json rec{{"event", "result"},
               {"method", a.greedy_mode},
               {"feasible", res.feasible},
               {"objective", res.objective},
               {"factor", res.factor},
               {"lower_bound", res.lower_bound},
               {"selection", selection_json(res.selection)}};
      std::cout << rec.dump() << "\n";
    } else {
      std::cout << "method: " << a.greedy_mode << "\n"
                << "feasible: " << (res.feasible ? "yes" : "no") << "\n"
                << "objective: " << number_text(res.objective) << "\n"
                << "guarantee factor: " << res.factor << "\n"
                << "certified lower bound: " << number_text(res.lower_bound) << "\n"
                << "selection: " << sets_text(pool, res.selection) << "\n"
                << "indices: " << indices_text(res.selection) << "\n";
    }
    return res.feasible ? kExitOptimal : kExitInfeasible;
  }

  std::vector<ivd::Selection> optima;
  ivd::SolveOutcome out;
  if (cfg.enumerate_all) {
    try {
      optima = ivd::enumerate_optima(model, params);
      out = ivd::solve(model, params);  // deterministic; reuses the same search
    } catch (const std::logic_error&) {
      out = ivd::solve(model, params);
    }
  } else if (cfg.secondary != ivd::SecondaryObjective::None) {
    out = ivd::solve_lexicographic(model,
                                   cfg.secondary == ivd::SecondaryObjective::MinTotalSize
                                       ? ivd::LexObjective::MinTotalSize
                                       : ivd::LexObjective::MinMaxSize,
                                   params);
  } else {
    out = ivd::solve(model, params);
  }

  if (records) {
    json rec{{"event", "result"},
             {"status", ivd::to_string(out.status)},
             {"objective", out.objective},
             {"dual_bound", out.dual_bound},
             {"gap", out.objective - out.dual_bound},
             {"nodes", out.nodes},
             {"wall_s", out.wall_s}};
    if (out.best) {
      rec["selection"] = selection_json(*out.best);
      std::vector<std::string> sets;
      for (int idx : out.best->chosen) sets.push_back(pool.sets[idx].to_string());
      rec["sets"] = sets;
    }
    if (!optima.empty()) {
      json all = json::array();
      for (const auto& sel : optima) all.push_back(selection_json(sel));
      rec["optima"] = all;
    }
    std::cout << rec.dump() << "\n";
  } else {
    std::cout << "condition: " << ivd::to_string(model.kind()) << "\n"
              << "variables: " << model.n() << "  size cap: " << pool.spec.effective_limit()
              << "  candidates: " << pool.size() << "\n"
              << "status: " << ivd::to_string(out.status) << "\n";
    if (out.status == ivd::SolveStatus::Optimal || out.status == ivd::SolveStatus::Feasible) {
      std::cout << "objective: " << number_text(out.objective) << "\n"
                << "dual bound: " << number_text(out.dual_bound) << "\n"
                << "gap: " << number_text(out.objective - out.dual_bound) << "\n";
      if (out.best) {
        std::cout << "selection: " << sets_text(pool, *out.best) << "\n"
                  << "indices: " << indices_text(*out.best) << "\n"
                  << "sizes: " << sizes_text(pool, *out.best) << "\n";
      }
    }
    std::cout << "nodes: " << out.nodes << "\n";
    std::printf("wall: %.3fs\n", out.wall_s);
    if (!optima.empty()) {
      std::cout << "optima: " << optima.size() << "\n";
      for (std::size_t i = 0; i < optima.size(); ++i)
        std::cout << "  " << (i + 1) << ": " << sets_text(pool, optima[i]) << "  ["
                  << indices_text(optima[i]) << "]\n";
    }
  }

  if (!a.selection_out.empty() && out.best) {
    std::ofstream sf(a.selection_out);
    if (!sf) throw std::runtime_error("cannot write " + a.selection_out);
    std::vector<ivd::Intervention> sets;
    for (int idx : out.best->chosen) sets.push_back(pool.sets[idx]);
    ivd::write_selection_file(sf, sets);
  }
  return exit_code_of(out.status);
}

struct TablesArgs {
  std::string which;
  std::string ns_text, ks_text;
  std::string format = "markdown";
  std::string out_path;
  bool with_times = false;
  double time_limit_s = 0.0;
  int threads = 1;
};

int run_tables(const TablesArgs& a) {
  ivd::TableOptions opt;
  const bool config_table = a.which == "config" || a.which == "config2nd";
  opt.ns = a.ns_text.empty()
               ? (config_table ? std::vector<int>{2, 3, 4, 5, 6}
                               : std::vector<int>{2, 3, 4, 5, 8, 9, 16, 17})
               : parse_int_list(a.ns_text);
  opt.ks = a.ks_text.empty()
               ? (config_table ? std::vector<int>{1, 2, 3} : std::vector<int>{1, 2, 3, 4})
               : parse_int_list(a.ks_text);
  opt.markdown = a.format != "csv";
  opt.with_times = a.with_times;
  opt.time_limit_s = a.time_limit_s;
  opt.threads = a.threads;

  std::string table;
  if (a.which == "id")
    table = ivd::objective_table(ivd::ConditionKind::Identifiability, opt);
  else if (a.which == "cc")
    table = ivd::objective_table(ivd::ConditionKind::CC, opt);
  else if (a.which == "upc")
    table = ivd::objective_table(ivd::ConditionKind::UPC, opt);
  else if (a.which == "opc")
    table = ivd::objective_table(ivd::ConditionKind::OPC, opt);
  else if (a.which == "config")
    table = ivd::size_configuration_table(opt);
  else
    table = ivd::preferred_configuration_table(opt);

  if (a.out_path.empty()) {
    std::cout << table;
  } else {
    std::ofstream f(a.out_path);
    if (!f) throw std::runtime_error("cannot write " + a.out_path);
    f << table;
  }
  return kExitOptimal;
}

struct VerifyArgs {
  std::string config_path;
  ivd::RunConfig cfg;
  std::string selection_path;
};

int run_verify(VerifyArgs& a, CLI::App* cmd) {
  ivd::RunConfig& cfg = a.cfg;
  if (!a.config_path.empty()) {
    ivd::RunConfig file_cfg = ivd::load_run_config(a.config_path);
    if (!cmd->count("--n")) cfg.n = file_cfg.n;
    if (!cmd->count("--k")) cfg.k_max = file_cfg.k_max;
    if (!cmd->count("--kind")) cfg.kind = file_cfg.kind;
  }
  const ivd::CandidatePool pool = ivd::generate_candidates(cfg.problem());
  const ivd::CoverModel model = ivd::CoverModel::build(pool, cfg.kind, {});
  const std::vector<ivd::Intervention> sets = ivd::load_selection_file(a.selection_path);

  std::cout << "condition: " << ivd::to_string(cfg.kind) << "  variables: " << cfg.n
            << "  experiments: " << sets.size() << "\n";

  bool ok = true;
  std::vector<int> indices;
  for (const ivd::Intervention& s : sets) {
    const int idx = pool.index_of(s);
    if (idx < 0) {
      std::cout << "set " << s.to_string() << " is not in the candidate pool (size cap "
                << pool.spec.effective_limit() << ")\n";
      ok = false;
    } else {
      indices.push_back(idx);
    }
  }

  if (ok) {
    const ivd::FeasibilityReport rep = model.check(ivd::Selection::from_indices(indices));
    std::cout << "pair constraints: " << (model.pair_count() - rep.violated) << "/"
              << model.pair_count() << " satisfied\n";
    for (const ivd::PairConditions& pc : rep.pairs) {
      if (pc.satisfied) continue;
      std::cout << "  pair {" << pc.i << "," << pc.j << "} violated: forward="
                << (pc.forward ? "yes" : "no") << " backward=" << (pc.backward ? "yes" : "no")
                << " null=" << (pc.null_covered ? "yes" : "no") << "\n";
    }
    ok = rep.feasible;
  }

  if (cfg.kind == ivd::ConditionKind::Identifiability && cfg.n >= 1 && cfg.n <= 4) {
    const auto check = ivd::uniquely_identifies(sets, cfg.n);
    std::cout << "semantic check (" << ivd::enumerate_dags(cfg.n).size()
              << " DAGs): " << (check.identifies ? "PASS" : "FAIL") << "\n";
    if (!check.identifies) {
      ok = false;
      if (check.witness) {
        auto edge_text = [](const ivd::Dag& g) {
          std::string t;
          for (auto [p, c] : g.edges()) t += " " + std::to_string(p) + "->" + std::to_string(c);
          return t.empty() ? " (no edges)" : t;
        };
        std::cout << "  indistinguishable pair:" << edge_text(check.witness->first) << "  vs "
                  << edge_text(check.witness->second) << "\n";
      }
    }
  } else {
    std::cout << "semantic check: skipped ("
              << (cfg.kind == ivd::ConditionKind::Identifiability
                      ? "exhaustive route supports up to 4 variables"
                      : "only the identifiability condition maps to it")
              << ")\n";
  }

  std::cout << (ok ? "VERIFY PASS" : "VERIFY FAIL") << "\n";
  return ok ? kExitOptimal : kExitVerifyFailed;
}

struct SimulateArgs {
  std::string dag_path;
  std::string selection_path;
  std::string out_dir = ".";
  bool v_structures = false;
};

int run_simulate(const SimulateArgs& a) {
  const ivd::Dag dag = ivd::load_dag_file(a.dag_path);
  const std::vector<ivd::Intervention> family = ivd::load_selection_file(a.selection_path);
  const std::vector<ivd::Pdag> states = ivd::infer(dag, family, a.v_structures);

  std::filesystem::create_directories(a.out_dir);
  std::cout << "true graph: " << dag.n() << " nodes, " << dag.edge_count() << " edges\n"
            << "experiments: " << family.size() << "\n";
  for (std::size_t t = 0; t < states.size(); ++t) {
    std::ostringstream name;
    name << "state_" << (t < 10 ? "0" : "") << t << ".dot";
    const std::filesystem::path path = std::filesystem::path(a.out_dir) / name.str();
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write " + path.string());
    f << ivd::to_dot(states[t], "state_" + std::to_string(t));
    std::cout << "state " << t
              << (t == 0 ? " (observational)" : " after " + family[t - 1].to_string()) << ": "
              << states[t].undirected_count() << " undirected pairs -> " << path.string() << "\n";
  }
  const ivd::Pdag& last = states.back();
  std::cout << "final state fully directed: " << (last.fully_directed() ? "yes" : "no") << "\n"
            << "final state equals the true graph: " << (last.equals_dag(dag) ? "yes" : "no")
            << "\n";
  return kExitOptimal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum intervention-design toolkit: exact and approximate covering designs "
               "for causal-structure experiments, with verification and simulation."};
  app.require_subcommand(1);

  DesignArgs design;
  CLI::App* d = app.add_subcommand("design", "Solve one design instance");
  d->add_option("--config", design.config_path, "Run configuration file (key = value lines)");
  d->add_option("--n", design.cfg.n, "Variable count");
  d->add_option("--k", design.cfg.k_max, "Largest intervention size");
  d->add_option_function<std::string>(
       "--kind", [&](const std::string& v) { design.cfg.kind = ivd::condition_kind_from_string(v); },
       "cc | upc | opc | identifiability")
      ->default_str("identifiability");
  d->add_option_function<std::string>(
      "--cost",
      [&](const std::string& v) {
        if (v == "uniform")
          design.cfg.cost = ivd::CostSpec::Uniform;
        else if (v == "null-free")
          design.cfg.cost = ivd::CostSpec::NullFree;
        else if (v == "file")
          design.cfg.cost = ivd::CostSpec::File;
        else
          throw CLI::ValidationError("--cost", "must be uniform, null-free, or file");
      },
      "uniform | null-free | file");
  d->add_option("--cost-file", design.cfg.cost_file, "Per-candidate costs: '<index> <cost>' lines");
  d->add_option_function<std::string>(
      "--secondary",
      [&](const std::string& v) {
        if (v == "none")
          design.cfg.secondary = ivd::SecondaryObjective::None;
        else if (v == "min-total-size")
          design.cfg.secondary = ivd::SecondaryObjective::MinTotalSize;
        else if (v == "min-max-size")
          design.cfg.secondary = ivd::SecondaryObjective::MinMaxSize;
        else
          throw CLI::ValidationError("--secondary", "must be none, min-total-size, or min-max-size");
      },
      "none | min-total-size | min-max-size");
  d->add_flag("--all", design.cfg.enumerate_all, "Enumerate every optimal selection");
  d->add_option("--time-limit", design.cfg.time_limit_s, "Wall-clock limit in seconds (0 = off)");
  d->add_option("--node-limit", design.cfg.node_limit, "Search-node limit (0 = off)");
  d->add_option("--threads", design.cfg.threads, "1 = serial, 0 = hardware, >1 = root split");
  d->add_option_function<std::string>(
      "--format",
      [&](const std::string& v) {
        if (v == "human")
          design.cfg.format = ivd::OutputFormat::Human;
        else if (v == "records")
          design.cfg.format = ivd::OutputFormat::Records;
        else
          throw CLI::ValidationError("--format", "must be human or records");
      },
      "human | records (line-delimited JSON)");
  d->add_flag_function(
      "--no-null", [&](std::int64_t) { design.cfg.include_null = false; },
      "Exclude the empty intervention from the pool");
  d->add_flag_function(
      "--no-cap", [&](std::int64_t) { design.cfg.cap_to_half = false; },
      "Allow interventions larger than half the variables");
  d->add_flag("--lp-bounding", design.lp_bounding, "Tighten search bounds with the LP relaxation");
  d->add_option("--selection-out", design.selection_out, "Write the chosen sets to this file");
  d->add_option("--approx", design.greedy_mode, "greedy | lp-round: report the heuristic instead")
      ->check(CLI::IsMember({"greedy", "lp-round"}));

  TablesArgs tables;
  CLI::App* t = app.add_subcommand("tables", "Regenerate a result grid");
  t->add_option("--which", tables.which, "id | cc | upc | opc | config | config2nd")
      ->required()
      ->check(CLI::IsMember({"id", "cc", "upc", "opc", "config", "config2nd"}));
  t->add_option("--n", tables.ns_text, "Rows, e.g. 2,3,4,5,8,9,16,17 or 2-6");
  t->add_option("--k", tables.ks_text, "Columns, e.g. 1-4");
  t->add_option("--format", tables.format, "markdown | csv")
      ->check(CLI::IsMember({"markdown", "csv"}));
  t->add_option("--out", tables.out_path, "Write the table here instead of stdout");
  t->add_flag("--times", tables.with_times, "Append per-cell wall seconds (non-deterministic)");
  t->add_option("--time-limit", tables.time_limit_s, "Per-cell wall-clock limit in seconds");
  t->add_option("--threads", tables.threads, "Solver threads per cell");

  VerifyArgs verify;
  CLI::App* v = app.add_subcommand("verify", "Check a selection file against the conditions");
  v->add_option("--config", verify.config_path, "Run configuration file");
  v->add_option("--n", verify.cfg.n, "Variable count");
  v->add_option("--k", verify.cfg.k_max, "Largest intervention size");
  v->add_option_function<std::string>(
      "--kind", [&](const std::string& s) { verify.cfg.kind = ivd::condition_kind_from_string(s); },
      "cc | upc | opc | identifiability");
  v->add_option("--selection", verify.selection_path, "Selection file to verify")->required();

  SimulateArgs simulate;
  CLI::App* s = app.add_subcommand("simulate", "Replay an intervention family on a known graph");
  s->add_option("--dag", simulate.dag_path, "True-graph file ('nodes N' header, 'parent child' lines)")
      ->required();
  s->add_option("--selection", simulate.selection_path, "Intervention family file")->required();
  s->add_option("--out-dir", simulate.out_dir, "Directory for the DOT states (default .)");
  s->add_flag("--v-structures", simulate.v_structures,
              "Start from the observational CPDAG instead of the fully undirected skeleton");

  try {
    app.parse(argc, argv);
    if (d->parsed()) return run_design(design, d);
    if (t->parsed()) return run_tables(tables);
    if (v->parsed()) return run_verify(verify, v);
    if (s->parsed()) return run_simulate(simulate);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const ivd::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
