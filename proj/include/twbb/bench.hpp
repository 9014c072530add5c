#pragma once

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "twbb/errors.hpp"
#include "twbb/generators.hpp"
#include "twbb/heuristics.hpp"
#include "twbb/io.hpp"
#include "twbb/lower_bounds.hpp"
#include "twbb/search.hpp"

namespace twbb {

/// Instance family of a benchmark run.
///   random:N:M       G(n, m) graphs
///   pktree:N:K:P     partial k-trees
///   anything else    comma-separated graph files (or directories of them)
struct BenchFamily {
  enum class Kind { Random, PartialKTree, Files };
  Kind kind = Kind::Random;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  int p = 0;
  std::vector<std::string> files;
  std::string text;  ///< the spec as given
};

namespace detail {

inline std::vector<std::string> split_on(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = s.find(sep, pos);
    out.emplace_back(s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos));
    if (end == std::string_view::npos) break;
    pos = end + 1;
  }
  return out;
}

inline std::uint64_t spec_number(const std::string& tok, std::string_view spec) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (tok.empty() || ec != std::errc{} || p != tok.data() + tok.size())
    throw ContractViolation("bad family spec '" + std::string(spec) + "': '" + tok + "' is not a number");
  return v;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fmt_double(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

}  // namespace detail

inline BenchFamily parse_family(std::string_view spec) {
  BenchFamily f;
  f.text = std::string(spec);
  const auto parts = detail::split_on(spec, ':');
  if (parts[0] == "random") {
    if (parts.size() != 3) throw ContractViolation("family spec 'random' needs random:N:M");
    f.kind = BenchFamily::Kind::Random;
    f.n = detail::spec_number(parts[1], spec);
    f.m = detail::spec_number(parts[2], spec);
    if (f.n >= 2 && f.m > f.n * (f.n - 1) / 2) throw ContractViolation("family spec: too many edges for n");
    return f;
  }
  if (parts[0] == "pktree") {
    if (parts.size() != 4) throw ContractViolation("family spec 'pktree' needs pktree:N:K:P");
    f.kind = BenchFamily::Kind::PartialKTree;
    f.n = detail::spec_number(parts[1], spec);
    f.k = detail::spec_number(parts[2], spec);
    f.p = static_cast<int>(detail::spec_number(parts[3], spec));
    if (f.n < f.k + 1 || f.p > 100) throw ContractViolation("family spec: need N >= K + 1 and P <= 100");
    return f;
  }
  f.kind = BenchFamily::Kind::Files;
  for (const std::string& item : detail::split_on(spec, ',')) {
    if (item.empty()) continue;
    std::error_code ec;
    if (std::filesystem::is_directory(item, ec)) {
      std::vector<std::string> found;
      for (const auto& entry : std::filesystem::directory_iterator(item)) {
        const auto ext = entry.path().extension();
        if (ext == ".col" || ext == ".gr") found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      f.files.insert(f.files.end(), found.begin(), found.end());
    } else {
      f.files.push_back(item);
    }
  }
  if (f.files.empty()) throw ContractViolation("family spec '" + f.text + "' names no instances");
  return f;
}

struct BenchConfig {
  BenchFamily family;
  std::size_t count = 30;  ///< instances per generated family
  std::uint64_t seed = 1;
  std::optional<double> time_limit;
  RuleToggles rules;
  HeuristicConfig ub_heuristic;
  LowerBoundKind lb_kind = LowerBoundKind::MinorMinWidth;
  int lb_restarts = 1;
  unsigned jobs = 1;
};

struct BenchRecord {
  std::size_t id = 0;
  std::string instance;
  std::size_t n = 0;
  std::size_t m = 0;
  int best_width = 0;
  int proven_lb = 0;
  int mf_width = 0;
  bool optimal = false;
  std::uint64_t nodes = 0;
  double elapsed = 0.0;
  int lb_mw = 0;
  int lb_mcslb = 0;  ///< best over every start vertex
  int lb_mmw = 0;
  std::optional<std::string> error;
};

struct BenchSummary {
  std::size_t instances = 0;
  std::size_t errors = 0;
  std::size_t optimal = 0;
  double mean_best_width = 0;
  double mean_proven_lb = 0;
  double mean_mf_width = 0;
  double mean_nodes = 0;
  double mean_elapsed = 0;
  double total_elapsed = 0;
  double mean_mmw_minus_mcslb = 0;
  double mmw_ge_mcslb_rate = 0;
};

/// Canonical text of everything that affects the results.
inline std::string config_string(const BenchConfig& c) {
  std::ostringstream os;
  os << "family=" << c.family.text << ";count=" << c.count << ";seed=" << c.seed
     << ";time_limit=" << (c.time_limit ? detail::fmt_double(*c.time_limit, 3) : "none")
     << ";reduce=" << c.rules.reductions << ";edge_add=" << c.rules.edge_addition
     << ";prune_sibling=" << c.rules.prune_sibling << ";prune_mutual=" << c.rules.prune_mutual
     << ";prune_fill=" << c.rules.prune_fill_subset << ";succ=" << c.rules.successor_restriction
     << ";ub=" << to_string(c.ub_heuristic.kind) << ";runs=" << c.ub_heuristic.runs
     << ";lb=" << to_string(c.lb_kind) << ";lb_restarts=" << c.lb_restarts;
  return os.str();
}

/// 64-bit FNV-1a of config_string, as 16 hex digits.
inline std::string config_hash(const BenchConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : config_string(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

/// Seed of generated instance `id`.
inline std::uint64_t instance_seed(std::uint64_t base, std::size_t id) { return Rng::stream(base, id).next(); }

inline std::size_t instance_count(const BenchConfig& c) {
  return c.family.kind == BenchFamily::Kind::Files ? c.family.files.size() : c.count;
}

inline Graph make_instance(const BenchConfig& c, std::size_t id, std::string* name) {
  const BenchFamily& f = c.family;
  switch (f.kind) {
    case BenchFamily::Kind::Random: {
      const auto s = instance_seed(c.seed, id);
      if (name) *name = "random-" + std::to_string(f.n) + "-" + std::to_string(f.m) + "-" + std::to_string(id);
      return gen_random({f.n, f.m, s});
    }
    case BenchFamily::Kind::PartialKTree: {
      const auto s = instance_seed(c.seed, id);
      if (name)
        *name = "pktree-" + std::to_string(f.n) + "-" + std::to_string(f.k) + "-" + std::to_string(f.p) + "-" +
                std::to_string(id);
      return gen_partial_ktree({f.n, f.k, f.p, s});
    }
    case BenchFamily::Kind::Files:
      if (name) *name = f.files[id];
      return parse_graph(detail::read_file(f.files[id]));
  }
  return Graph{};
}

inline SolverConfig solver_config(const BenchConfig& c) {
  SolverConfig s;
  s.time_limit = c.time_limit;
  s.seed = c.seed;
  s.rules = c.rules;
  s.ub_heuristic = c.ub_heuristic;
  s.lb_kind = c.lb_kind;
  s.lb_restarts = c.lb_restarts;
  return s;
}

/// Solves one instance; failures become an error record.
inline BenchRecord run_instance(const BenchConfig& c, std::size_t id) {
  BenchRecord r;
  r.id = id;
  try {
    const Graph g = make_instance(c, id, &r.instance);
    r.n = g.num_vertices();
    r.m = g.num_edges();
    r.lb_mw = lower_bound(g, LowerBoundKind::MinWidth);
    r.lb_mcslb = lower_bound(g, LowerBoundKind::Mcs, static_cast<int>(g.num_vertices()));
    r.lb_mmw = lower_bound(g, LowerBoundKind::MinorMinWidth);
    r.mf_width = g.num_vertices() == 0 ? 0 : *min_fill_order(g).width;
    const RunReport rep = solve(g, solver_config(c));
    r.best_width = rep.best_width;
    r.proven_lb = rep.proven_lb;
    r.optimal = rep.optimal;
    r.nodes = rep.nodes_expanded;
    r.elapsed = rep.elapsed;
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  return r;
}

/// Runs every instance (on `jobs` threads) and hands records to `emit` in
/// instance-id order as soon as the prefix is complete.
inline std::vector<BenchRecord> run_bench(const BenchConfig& c,
                                          const std::function<void(const BenchRecord&)>& emit = {}) {
  const std::size_t total = instance_count(c);
  std::vector<BenchRecord> out(total);
  std::vector<char> done(total, 0);
  std::size_t emitted = 0;
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::size_t id = next.fetch_add(1);
      if (id >= total) return;
      BenchRecord r = run_instance(c, id);
      std::lock_guard<std::mutex> lock(mu);
      out[id] = std::move(r);
      done[id] = 1;
      while (emitted < total && done[emitted]) {
        if (emit) emit(out[emitted]);
        ++emitted;
      }
    }
  };
  const unsigned jobs = std::max(1U, c.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

inline BenchSummary summarize(const std::vector<BenchRecord>& recs) {
  BenchSummary s;
  std::size_t ge = 0;
  for (const BenchRecord& r : recs) {
    if (r.error) {
      ++s.errors;
      continue;
    }
    ++s.instances;
    s.optimal += r.optimal ? 1 : 0;
    s.mean_best_width += r.best_width;
    s.mean_proven_lb += r.proven_lb;
    s.mean_mf_width += r.mf_width;
    s.mean_nodes += static_cast<double>(r.nodes);
    s.total_elapsed += r.elapsed;
    s.mean_mmw_minus_mcslb += r.lb_mmw - r.lb_mcslb;
    ge += r.lb_mmw >= r.lb_mcslb ? 1 : 0;
  }
  if (s.instances > 0) {
    const auto k = static_cast<double>(s.instances);
    s.mean_best_width /= k;
    s.mean_proven_lb /= k;
    s.mean_mf_width /= k;
    s.mean_nodes /= k;
    s.mean_elapsed = s.total_elapsed / k;
    s.mean_mmw_minus_mcslb /= k;
    s.mmw_ge_mcslb_rate = static_cast<double>(ge) / k;
  }
  return s;
}

// CSV schema: one header line, one line per instance, one "mean" line. Error
// records leave the numeric columns empty and fill `error`.

inline std::string csv_header() {
  return "config_hash,kind,id,instance,n,m,best_width,proven_lb,mf_width,optimal,nodes,elapsed,"
         "lb_mw,lb_mcslb,lb_mmw,error";
}

namespace detail {

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace detail

inline std::string to_csv(const BenchRecord& r, const std::string& hash) {
  std::ostringstream os;
  os << hash << ",instance," << r.id << ',' << detail::csv_field(r.instance) << ',';
  if (r.error) {
    os << ",,,,,,,,,,," << detail::csv_field(*r.error);
    return os.str();
  }
  os << r.n << ',' << r.m << ',' << r.best_width << ',' << r.proven_lb << ',' << r.mf_width << ','
     << (r.optimal ? 1 : 0) << ',' << r.nodes << ',' << detail::fmt_double(r.elapsed, 4) << ',' << r.lb_mw << ','
     << r.lb_mcslb << ',' << r.lb_mmw << ',';
  return os.str();
}

inline std::string to_csv(const BenchSummary& s, const std::string& hash) {
  std::ostringstream os;
  os << hash << ",mean,," << s.instances << " ok/" << s.errors << " err,,,"
     << detail::fmt_double(s.mean_best_width, 3) << ',' << detail::fmt_double(s.mean_proven_lb, 3) << ','
     << detail::fmt_double(s.mean_mf_width, 3) << ',' << s.optimal << ',' << detail::fmt_double(s.mean_nodes, 1)
     << ',' << detail::fmt_double(s.mean_elapsed, 4) << ",,," << ",";
  return os.str();
}

}  // namespace twbb
