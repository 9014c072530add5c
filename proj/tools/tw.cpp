// Command-line front end: solve, bounds, oracle, gen, bench.
//
// Exit status: 0 optimal (or success), 2 best-so-far only, 1 error.

#include <atomic>
#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twbb/twbb.hpp"

namespace {

using json = nlohmann::json;

std::atomic<bool> g_cancel{false};

extern "C" void on_signal(int) { g_cancel.store(true); }

struct SolveOptions {
  double time_limit = 0;
  std::uint64_t seed = 0;
  bool no_reduce = false;
  bool no_edge_add = false;
  bool no_prune_612 = false;
  bool no_prune_63 = false;
  bool no_prune_64 = false;
  bool no_successor = false;
  std::string lb = "mmw";
  int lb_restarts = 1;
  std::string ub = "minfill";
  int runs = 100;
};

void add_solver_flags(CLI::App* app, SolveOptions& o) {
  app->add_option("--time-limit", o.time_limit, "Seconds before returning the best order so far (0 = none)")
      ->check(CLI::NonNegativeNumber);
  app->add_option("--seed", o.seed, "Seed for randomized upper-bound runs");
  app->add_flag("--no-reduce", o.no_reduce, "Disable simplicial / almost-simplicial reductions");
  app->add_flag("--no-edge-add", o.no_edge_add, "Disable the common-neighbour edge-addition rule");
  app->add_flag("--no-prune-612", o.no_prune_612, "Disable explored-sibling pruning");
  app->add_flag("--no-prune-63", o.no_prune_63, "Disable mutual simplicial pair pruning");
  app->add_flag("--no-prune-64", o.no_prune_64, "Disable fill-subset dominance pruning");
  app->add_flag("--no-successor-restriction", o.no_successor,
                "Branch on every vertex, not only non-neighbours of the last one");
  app->add_option("--lb", o.lb, "Lower bound used during search")->check(CLI::IsMember({"mmw", "mcslb", "mw"}));
  app->add_option("--lb-restarts", o.lb_restarts, "Start vertices tried by mcslb")->check(CLI::PositiveNumber);
  app->add_option("--ub", o.ub, "Upper-bound heuristic")->check(CLI::IsMember({"minfill", "minwidth", "mcs"}));
  app->add_option("--runs", o.runs, "Heuristic runs for the initial upper bound")->check(CLI::PositiveNumber);
}

twbb::LowerBoundKind lb_kind(const std::string& s) {
  if (s == "mw") return twbb::LowerBoundKind::MinWidth;
  if (s == "mcslb") return twbb::LowerBoundKind::Mcs;
  return twbb::LowerBoundKind::MinorMinWidth;
}

twbb::HeuristicKind ub_kind(const std::string& s) {
  if (s == "minwidth") return twbb::HeuristicKind::MinWidth;
  if (s == "mcs") return twbb::HeuristicKind::MaxCardinality;
  return twbb::HeuristicKind::MinFill;
}

twbb::RuleToggles rules_of(const SolveOptions& o) {
  twbb::RuleToggles r;
  r.reductions = !o.no_reduce;
  r.edge_addition = !o.no_edge_add;
  r.prune_sibling = !o.no_prune_612;
  r.prune_mutual = !o.no_prune_63;
  r.prune_fill_subset = !o.no_prune_64;
  r.successor_restriction = !o.no_successor;
  return r;
}

twbb::SolverConfig solver_config(const SolveOptions& o) {
  twbb::SolverConfig c;
  if (o.time_limit > 0) c.time_limit = o.time_limit;
  c.seed = o.seed;
  c.rules = rules_of(o);
  c.ub_heuristic.kind = ub_kind(o.ub);
  c.ub_heuristic.runs = o.runs;
  c.lb_kind = lb_kind(o.lb);
  c.lb_restarts = o.lb_restarts;
  return c;
}

twbb::Graph load_graph(const std::string& path) {
  std::vector<std::string> warnings;
  twbb::Graph g = twbb::parse_graph(twbb::detail::read_file(path), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << path << ": " << w << '\n';
  return g;
}

// Orders are printed 1-based, like the file formats.
std::vector<twbb::Vertex> one_based(const twbb::EliminationOrder& o) {
  std::vector<twbb::Vertex> out;
  out.reserve(o.size());
  for (twbb::Vertex v : o.vertices) out.push_back(v + 1);
  return out;
}

std::string join(const std::vector<twbb::Vertex>& vs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < vs.size(); ++i) os << (i ? " " : "") << vs[i];
  return os.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

int cmd_solve(const std::string& file, const SolveOptions& o, const std::string& td_path, bool as_json) {
  const twbb::Graph g = load_graph(file);
  twbb::SolverConfig cfg = solver_config(o);
  cfg.cancel = &g_cancel;
  if (!as_json) {
    cfg.on_improvement = [](const twbb::TraceEntry& t) {
      std::cerr << "c improved width " << t.width << " at " << t.elapsed << "s\n";
    };
  }
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const twbb::RunReport r = twbb::solve(g, cfg);

  if (!td_path.empty()) {
    const twbb::TreeDecomposition td = twbb::build_decomposition(g, r.best_order);
    write_text(td_path, twbb::write_pace_td(td, g.capacity()));
  }

  if (as_json) {
    json j;
    j["file"] = file;
    j["n"] = g.num_vertices();
    j["m"] = g.num_edges();
    j["width"] = r.best_width;
    j["optimal"] = r.optimal;
    j["lower_bound"] = r.proven_lb;
    j["root_lower_bound"] = r.root_lb;
    j["heuristic_width"] = r.heuristic_width;
    j["nodes"] = r.nodes_expanded;
    j["elapsed"] = r.elapsed;
    j["order"] = one_based(r.best_order);
    json trace = json::array();
    for (const auto& t : r.anytime_trace)
      trace.push_back({{"elapsed", t.elapsed}, {"width", t.width}, {"order", one_based(t.order)}});
    j["trace"] = trace;
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "width " << r.best_width << '\n'
              << "optimal " << (r.optimal ? "yes" : "no") << '\n'
              << "lower_bound " << r.proven_lb << '\n'
              << "root_lower_bound " << r.root_lb << '\n'
              << "heuristic_width " << r.heuristic_width << '\n'
              << "nodes " << r.nodes_expanded << '\n'
              << "elapsed " << r.elapsed << '\n'
              << "order " << join(one_based(r.best_order)) << '\n';
  }
  return twbb::exit_code(r);
}

int cmd_bounds(const std::string& file, bool as_json) {
  const twbb::Graph g = load_graph(file);
  const int n = static_cast<int>(g.num_vertices());
  const int mw = twbb::lower_bound(g, twbb::LowerBoundKind::MinWidth);
  const int mcs = twbb::lower_bound(g, twbb::LowerBoundKind::Mcs, n);
  const int mmw = twbb::lower_bound(g, twbb::LowerBoundKind::MinorMinWidth);
  auto ub = [&](twbb::HeuristicKind k) { return twbb::best_upper_bound(g, {k, 1, 0}).width; };
  const int mf = ub(twbb::HeuristicKind::MinFill);
  const int mwh = ub(twbb::HeuristicKind::MinWidth);
  const int mcsh = ub(twbb::HeuristicKind::MaxCardinality);
  if (as_json) {
    json j{{"file", file}, {"n", n}, {"m", g.num_edges()},
           {"lb", {{"mw", mw}, {"mcslb", mcs}, {"mmw", mmw}}},
           {"ub", {{"minfill", mf}, {"minwidth", mwh}, {"mcs", mcsh}}}};
    std::cout << j.dump() << '\n';
  } else {
    std::cout << "n " << n << "\nm " << g.num_edges() << "\nlb_mw " << mw << "\nlb_mcslb " << mcs << "\nlb_mmw "
              << mmw << "\nub_minfill " << mf << "\nub_minwidth " << mwh << "\nub_mcs " << mcsh << '\n';
  }
  return 0;
}

int cmd_oracle(const std::string& file, std::size_t limit, bool as_json) {
  const twbb::Graph g = load_graph(file);
  const twbb::OracleResult r = twbb::exact_treewidth(g, limit);
  if (as_json) {
    std::cout << json{{"file", file}, {"treewidth", r.treewidth}, {"order", one_based(r.witness_order)}}.dump()
              << '\n';
  } else {
    std::cout << "treewidth " << r.treewidth << "\norder " << join(one_based(r.witness_order)) << '\n';
  }
  return 0;
}

int emit_graph(const twbb::Graph& g, const std::string& format, const std::string& out) {
  const std::string text = format == "col" ? twbb::write_dimacs_col(g) : twbb::write_pace_gr(g);
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text(out, text);
  }
  return 0;
}

json record_json(const twbb::BenchRecord& r, const std::string& hash) {
  json j{{"config_hash", hash}, {"kind", "instance"}, {"id", r.id}, {"instance", r.instance}};
  if (r.error) {
    j["error"] = *r.error;
    return j;
  }
  j.update({{"n", r.n}, {"m", r.m}, {"best_width", r.best_width}, {"proven_lb", r.proven_lb},
            {"mf_width", r.mf_width}, {"optimal", r.optimal}, {"nodes", r.nodes}, {"elapsed", r.elapsed},
            {"lb_mw", r.lb_mw}, {"lb_mcslb", r.lb_mcslb}, {"lb_mmw", r.lb_mmw}});
  return j;
}

json summary_json(const twbb::BenchSummary& s, const std::string& hash, const std::string& config) {
  return json{{"config_hash", hash},
              {"kind", "mean"},
              {"config", config},
              {"instances", s.instances},
              {"errors", s.errors},
              {"optimal", s.optimal},
              {"mean_best_width", s.mean_best_width},
              {"mean_proven_lb", s.mean_proven_lb},
              {"mean_mf_width", s.mean_mf_width},
              {"mean_nodes", s.mean_nodes},
              {"mean_elapsed", s.mean_elapsed},
              {"total_elapsed", s.total_elapsed},
              {"mean_mmw_minus_mcslb", s.mean_mmw_minus_mcslb},
              {"mmw_ge_mcslb_rate", s.mmw_ge_mcslb_rate}};
}

int cmd_bench(const std::string& spec, const SolveOptions& o, std::size_t count, unsigned jobs,
              const std::string& format, const std::string& out_path) {
  twbb::BenchConfig c;
  c.family = twbb::parse_family(spec);
  c.count = count;
  c.seed = o.seed;
  if (o.time_limit > 0) c.time_limit = o.time_limit;
  c.rules = rules_of(o);
  c.ub_heuristic.kind = ub_kind(o.ub);
  c.ub_heuristic.runs = o.runs;
  c.lb_kind = lb_kind(o.lb);
  c.lb_restarts = o.lb_restarts;
  c.jobs = jobs;
  const std::string hash = twbb::config_hash(c);

  std::ofstream file;
  if (!out_path.empty() && out_path != "-") {
    file.open(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write '" + out_path + "'");
  }
  std::ostream& os = file.is_open() ? static_cast<std::ostream&>(file) : std::cout;
  const bool csv = format == "csv";
  if (csv) os << "# config " << hash << ' ' << twbb::config_string(c) << '\n' << twbb::csv_header() << '\n';
  const auto records = twbb::run_bench(c, [&](const twbb::BenchRecord& r) {
    os << (csv ? twbb::to_csv(r, hash) : record_json(r, hash).dump()) << '\n' << std::flush;
  });
  const twbb::BenchSummary s = twbb::summarize(records);
  os << (csv ? twbb::to_csv(s, hash) : summary_json(s, hash, twbb::config_string(c)).dump()) << '\n';
  if (s.errors > 0) return 1;
  return s.optimal == s.instances ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact treewidth by branch and bound over elimination orders"};
  app.require_subcommand(1);

  SolveOptions so;
  std::string file;
  std::string td_path;
  bool as_json = false;

  auto* solve = app.add_subcommand("solve", "Compute treewidth (exact, or best found within the time limit)");
  solve->add_option("file", file, "Graph file (.col or .gr)")->required();
  add_solver_flags(solve, so);
  solve->add_option("--td", td_path, "Write a PACE tree decomposition of the best order");
  solve->add_flag("--json", as_json, "Print a JSON report");

  auto* bounds = app.add_subcommand("bounds", "Print lower and upper bounds");
  bounds->add_option("file", file, "Graph file (.col or .gr)")->required();
  bounds->add_flag("--json", as_json, "Print JSON");

  std::size_t limit = 14;
  auto* oracle = app.add_subcommand("oracle", "Exact treewidth by subset dynamic programming (small graphs)");
  oracle->add_option("file", file, "Graph file (.col or .gr)")->required();
  oracle->add_option("--limit", limit, "Refuse graphs with more vertices")->check(CLI::Range(0, 24));
  oracle->add_flag("--json", as_json, "Print JSON");

  auto* gen = app.add_subcommand("gen", "Generate an instance");
  gen->require_subcommand(1);
  std::string format = "gr";
  std::string out;
  std::uint64_t gseed = 0;
  std::size_t gn = 0, gm = 0, gk = 0, grows = 0, gcols = 0;
  int gp = 0, gmyc = 0;
  auto gen_common = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"gr", "col"}));
    sub->add_option("-o,--output", out, "Output file (default stdout)");
  };
  auto* gen_random = gen->add_subcommand("random", "G(n, m) random graph");
  gen_random->add_option("n", gn)->required();
  gen_random->add_option("m", gm)->required();
  gen_random->add_option("--seed", gseed);
  gen_common(gen_random);
  auto* gen_pk = gen->add_subcommand("pktree", "Random partial k-tree");
  gen_pk->add_option("n", gn)->required();
  gen_pk->add_option("k", gk)->required();
  gen_pk->add_option("p", gp, "Percent of edges removed")->required()->check(CLI::Range(0, 100));
  gen_pk->add_option("--seed", gseed);
  gen_common(gen_pk);
  auto* gen_myc = gen->add_subcommand("myciel", "Mycielski graph (myciel3 has 11 vertices)");
  gen_myc->add_option("k", gmyc)->required()->check(CLI::Range(1, 12));
  gen_common(gen_myc);
  auto* gen_queen = gen->add_subcommand("queen", "Queen graph on a rows x cols board");
  gen_queen->add_option("rows", grows)->required();
  gen_queen->add_option("cols", gcols, "Defaults to rows");
  gen_common(gen_queen);

  std::string spec;
  std::size_t count = 30;
  unsigned jobs = 1;
  std::string bformat = "csv";
  std::string bout;
  SolveOptions bo;
  bo.seed = 1;
  auto* bench = app.add_subcommand("bench", "Run a benchmark family (random:N:M, pktree:N:K:P, or files)");
  bench->add_option("family", spec, "Family spec")->required();
  add_solver_flags(bench, bo);
  bench->add_option("--count", count, "Instances per generated family")->check(CLI::PositiveNumber);
  bench->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--format", bformat, "Report format")->check(CLI::IsMember({"csv", "json"}));
  bench->add_option("-o,--output", bout, "Report file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*solve) return cmd_solve(file, so, td_path, as_json);
    if (*bounds) return cmd_bounds(file, as_json);
    if (*oracle) return cmd_oracle(file, limit, as_json);
    if (*gen) {
      if (*gen_random) return emit_graph(twbb::gen_random({gn, gm, gseed}), format, out);
      if (*gen_pk) return emit_graph(twbb::gen_partial_ktree({gn, gk, gp, gseed}), format, out);
      if (*gen_myc) return emit_graph(twbb::gen_mycielski(gmyc), format, out);
      if (*gen_queen) return emit_graph(twbb::gen_queen(grows, gcols == 0 ? grows : gcols), format, out);
    }
    if (*bench) return cmd_bench(spec, bo, count, jobs, bformat, bout);
  } catch (const twbb::ParseError& e) {
    std::cerr << "error: " << file << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
