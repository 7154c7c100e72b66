#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "degree.hpp"
#include "generators.hpp"
#include "io.hpp"
#include "strategies.hpp"

namespace lbg {

enum class GraphFormat { dimacs, edgelist, bin };
enum class ReportFormat { csv, json };

inline GraphFormat parse_graph_format(std::string_view s) {
  if (s == "dimacs") return GraphFormat::dimacs;
  if (s == "edgelist") return GraphFormat::edgelist;
  if (s == "bin") return GraphFormat::bin;
  throw ConfigError("unknown graph format '" + std::string(s) + "'");
}

inline ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw ConfigError("unknown report format '" + std::string(s) + "'");
}

/// A file on disk or a generator invocation.
struct GraphSource {
  enum class Kind { file, rmat, er };
  Kind kind = Kind::rmat;
  std::filesystem::path path;
  GraphFormat format = GraphFormat::dimacs;
  bool weighted_edge_list = false;
  unsigned scale = 14;
  std::uint64_t edge_factor = 8;
  RmatParams rmat;

  static GraphSource file(std::filesystem::path p, GraphFormat f) {
    GraphSource s;
    s.kind = Kind::file;
    s.path = std::move(p);
    s.format = f;
    return s;
  }
  static GraphSource generated(Kind k, unsigned scale, std::uint64_t edge_factor) {
    GraphSource s;
    s.kind = k;
    s.scale = scale;
    s.edge_factor = edge_factor;
    return s;
  }

  std::string name() const {
    switch (kind) {
      case Kind::file: return path.stem().string();
      case Kind::rmat: return "rmat" + std::to_string(scale) + "-ef" + std::to_string(edge_factor);
      case Kind::er: return "er" + std::to_string(scale) + "-ef" + std::to_string(edge_factor);
    }
    return "graph";
  }

  CsrGraph load(std::uint64_t seed) const {
    switch (kind) {
      case Kind::file:
        switch (format) {
          case GraphFormat::dimacs: return load_dimacs_gr(path);
          case GraphFormat::edgelist: return load_edge_list(path, weighted_edge_list);
          case GraphFormat::bin: return load_csr_binary(path);
        }
        break;
      case Kind::rmat: return generate_rmat(scale, edge_factor, rmat, seed);
      case Kind::er: {
        if (scale > 31) throw ConfigError("er scale must be <= 31");
        const std::uint64_t n = std::uint64_t{1} << scale;
        return generate_er(n, edge_factor * n, seed);
      }
    }
    throw ConfigError("bad graph source");
  }
};

/// Stand-ins for the reference datasets at desk scale.
inline std::vector<GraphSource> paper_desk_suite() {
  return {GraphSource::generated(GraphSource::Kind::rmat, 14, 8),
          GraphSource::generated(GraphSource::Kind::rmat, 16, 8),
          GraphSource::generated(GraphSource::Kind::er, 14, 4)};
}

struct RunConfig {
  std::vector<GraphSource> graphs;
  Algo algo = Algo::sssp;
  std::vector<Strategy> strategies{kAllStrategies.begin(), kAllStrategies.end()};
  node_t source = 0;
  std::size_t threads = 0;  // 0: sized per launch
  std::size_t workers = 1;
  std::size_t bins = 10;
  std::optional<degree_t> mdt;
  bool chunked = true;
  bool hp_fallback = true;
  MemoryBudget budget;
  std::uint64_t seed = 1;
  bool verify = false;
  bool replay = false;
  std::optional<std::filesystem::path> out;
  ReportFormat report = ReportFormat::csv;

  StrategyOptions strategy_options() const {
    StrategyOptions o;
    o.kernel.virtual_threads = threads;
    o.kernel.workers = workers;
    o.kernel.deterministic_replay = replay;
    o.chunked = chunked;
    o.budget = budget;
    o.bins = bins;
    o.mdt = mdt;
    o.hp_fallback = hp_fallback;
    return o;
  }
};

/// Totals over one strategy run.
struct ImbalanceSummary {
  std::string strategy;
  RunStatus status = RunStatus::ok;
  std::chrono::nanoseconds kernel_time{0};
  std::chrono::nanoseconds overhead_time{0};
  std::size_t iterations = 0;
  std::size_t sub_iterations = 0;
  std::size_t invocations = 0;
  std::uint64_t atomic_relax_ops = 0;
  std::uint64_t atomic_push_ops = 0;
  std::uint64_t active_items = 0;
  std::uint64_t thread_slots = 0;  // sum of threads over invocations
  std::uint64_t total_work = 0;
  std::uint64_t max_work = 0;
  double avg_work = 0.0;
  double stddev_work = 0.0;  // sum of per-invocation stddevs
};

inline ImbalanceSummary summarize(const RunResult& r) {
  ImbalanceSummary s;
  s.strategy = std::string(tag(r.strategy));
  s.status = r.status;
  s.iterations = r.iterations;
  s.invocations = r.records.size();
  for (const auto& rec : r.records) {
    s.kernel_time += rec.kernel_wall_time;
    s.overhead_time += rec.overhead_wall_time;
    if (rec.sub_iteration) ++s.sub_iterations;
    s.atomic_relax_ops += rec.atomic_relax_ops;
    s.atomic_push_ops += rec.atomic_push_ops;
    s.active_items += rec.active_items;
    s.thread_slots += rec.threads();
    s.total_work += rec.total_work();
    s.max_work = std::max(s.max_work, rec.max_work());
    s.stddev_work += rec.stddev_work();
  }
  if (s.thread_slots) s.avg_work = static_cast<double>(s.total_work) / static_cast<double>(s.thread_slots);
  return s;
}

struct StrategyReport {
  RunResult result;
  ImbalanceSummary summary;
  std::optional<VerificationReport> verification;
};

struct GraphReport {
  std::string graph;
  Algo algo = Algo::sssp;
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;
  std::vector<StrategyReport> strategies;

  bool all_infeasible() const {
    return !strategies.empty() &&
           std::all_of(strategies.begin(), strategies.end(), [](const auto& s) { return !s.result.feasible(); });
  }
};

/// Runs every requested strategy on one graph. With cfg.verify, a mismatch
/// against the sequential oracle throws VerificationError.
inline GraphReport run_on_graph(const CsrGraph& g, const std::string& name, const RunConfig& cfg) {
  if (cfg.strategies.empty()) throw ConfigError("no strategy selected");
  require_source(g, cfg.source);
  GraphReport rep;
  rep.graph = name;
  rep.algo = cfg.algo;
  rep.num_nodes = g.num_nodes();
  rep.num_edges = g.num_edges();
  const RelaxOp op{cfg.algo};
  const StrategyOptions opt = cfg.strategy_options();
  std::optional<std::vector<dist_t>> expected;
  for (Strategy s : cfg.strategies) {
    StrategyReport sr;
    sr.result = run_strategy(s, g, cfg.source, op, opt);
    sr.summary = summarize(sr.result);
    if (cfg.verify && sr.result.feasible()) {
      if (!expected) expected = oracle_distances(g, cfg.source, op);
      sr.verification = verify(*expected, sr.result.dist);
      if (!sr.verification->matched) {
        const auto& m = *sr.verification->first_mismatch;
        throw VerificationError(std::string(tag(s)) + " on " + name + ": " +
                                std::to_string(sr.verification->mismatch_count) + " mismatches, first at node " +
                                std::to_string(m.node) + " (expected " + std::to_string(m.expected) +
                                ", got " + std::to_string(m.actual) + ")");
      }
    }
    rep.strategies.push_back(std::move(sr));
  }
  return rep;
}

inline std::vector<GraphReport> run_benchmark(const RunConfig& cfg) {
  if (cfg.graphs.empty()) throw ConfigError("no graph given");
  std::vector<GraphReport> out;
  for (const auto& src : cfg.graphs) out.push_back(run_on_graph(src.load(cfg.seed), src.name(), cfg));
  return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

inline constexpr std::array<std::string_view, 15> kReportColumns{
    "strategy",         "algo",        "graph",         "iteration",       "sub_iteration",
    "active_items",     "threads",     "max_work",      "avg_work",        "stddev_work",
    "atomic_relax_ops", "atomic_push_ops", "kernel_ms", "overhead_ms",     "status"};

/// One report line: a kernel invocation, or a per-strategy summary
/// (iteration == "total").
struct ReportRow {
  std::string strategy;
  std::string algo;
  std::string graph;
  std::string iteration;
  std::string sub_iteration;
  std::uint64_t active_items = 0;
  std::uint64_t threads = 0;
  std::uint64_t max_work = 0;
  double avg_work = 0.0;
  double stddev_work = 0.0;
  std::uint64_t atomic_relax_ops = 0;
  std::uint64_t atomic_push_ops = 0;
  double kernel_ms = 0.0;
  double overhead_ms = 0.0;
  std::string status;

  bool is_summary() const { return iteration == "total"; }
};

inline double to_ms(std::chrono::nanoseconds ns) { return static_cast<double>(ns.count()) / 1e6; }

inline std::vector<ReportRow> report_rows(const std::vector<GraphReport>& reports) {
  std::vector<ReportRow> rows;
  for (const auto& gr : reports)
    for (const auto& sr : gr.strategies) {
      const std::string algo(to_string(gr.algo));
      for (const auto& rec : sr.result.records) {
        ReportRow row;
        row.strategy = rec.strategy;
        row.algo = algo;
        row.graph = gr.graph;
        row.iteration = std::to_string(rec.iteration);
        row.sub_iteration = rec.sub_iteration ? std::to_string(*rec.sub_iteration) : "";
        row.active_items = rec.active_items;
        row.threads = rec.threads();
        row.max_work = rec.max_work();
        row.avg_work = rec.avg_work();
        row.stddev_work = rec.stddev_work();
        row.atomic_relax_ops = rec.atomic_relax_ops;
        row.atomic_push_ops = rec.atomic_push_ops;
        row.kernel_ms = to_ms(rec.kernel_wall_time);
        row.overhead_ms = to_ms(rec.overhead_wall_time);
        row.status = "ok";
        rows.push_back(std::move(row));
      }
      const auto& s = sr.summary;
      ReportRow row;
      row.strategy = s.strategy;
      row.algo = algo;
      row.graph = gr.graph;
      row.iteration = "total";
      row.active_items = s.active_items;
      row.threads = s.thread_slots;
      row.max_work = s.max_work;
      row.avg_work = s.avg_work;
      row.stddev_work = s.stddev_work;
      row.atomic_relax_ops = s.atomic_relax_ops;
      row.atomic_push_ops = s.atomic_push_ops;
      row.kernel_ms = to_ms(s.kernel_time);
      row.overhead_ms = to_ms(s.overhead_time);
      row.status = std::string(to_string(s.status));
      rows.push_back(std::move(row));
    }
  return rows;
}

namespace detail {
inline std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}
}  // namespace detail

inline void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  for (std::size_t i = 0; i < kReportColumns.size(); ++i) out << (i ? "," : "") << kReportColumns[i];
  out << '\n';
  for (const auto& r : rows) {
    out << r.strategy << ',' << r.algo << ',' << r.graph << ',' << r.iteration << ',' << r.sub_iteration << ','
        << r.active_items << ',' << r.threads << ',' << r.max_work << ',' << detail::fmt_real(r.avg_work) << ','
        << detail::fmt_real(r.stddev_work) << ',' << r.atomic_relax_ops << ',' << r.atomic_push_ops << ','
        << detail::fmt_real(r.kernel_ms) << ',' << detail::fmt_real(r.overhead_ms) << ',' << r.status << '\n';
  }
}

inline nlohmann::json report_json(const std::vector<ReportRow>& rows) {
  auto arr = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json j;
    j["strategy"] = r.strategy;
    j["algo"] = r.algo;
    j["graph"] = r.graph;
    if (r.is_summary())
      j["iteration"] = r.iteration;
    else
      j["iteration"] = std::stoull(r.iteration);
    j["sub_iteration"] = r.sub_iteration.empty() ? nlohmann::json(nullptr) : nlohmann::json(std::stoull(r.sub_iteration));
    j["active_items"] = r.active_items;
    j["threads"] = r.threads;
    j["max_work"] = r.max_work;
    j["avg_work"] = r.avg_work;
    j["stddev_work"] = r.stddev_work;
    j["atomic_relax_ops"] = r.atomic_relax_ops;
    j["atomic_push_ops"] = r.atomic_push_ops;
    j["kernel_ms"] = r.kernel_ms;
    j["overhead_ms"] = r.overhead_ms;
    j["status"] = r.status;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline void emit_report(const std::vector<GraphReport>& reports, const std::filesystem::path& path,
                        ReportFormat format) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write report " + path.string());
  const auto rows = report_rows(reports);
  if (format == ReportFormat::csv)
    write_report_csv(out, rows);
  else
    out << report_json(rows).dump(2) << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

/// Parses a CSV written by write_report_csv.
inline std::vector<ReportRow> read_report_csv(std::istream& in) {
  std::vector<ReportRow> rows;
  std::string line;
  std::size_t lineno = 0;
  auto u64 = [&](const std::string& s) { return static_cast<std::uint64_t>(std::stoull(s)); };
  while (std::getline(in, line)) {
    ++lineno;
    if (lineno == 1 || line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    if (f.size() != kReportColumns.size()) throw ParseError(lineno, "expected 15 report columns");
    try {
      ReportRow r;
      r.strategy = f[0];
      r.algo = f[1];
      r.graph = f[2];
      r.iteration = f[3];
      r.sub_iteration = f[4];
      r.active_items = u64(f[5]);
      r.threads = u64(f[6]);
      r.max_work = u64(f[7]);
      r.avg_work = std::stod(f[8]);
      r.stddev_work = std::stod(f[9]);
      r.atomic_relax_ops = u64(f[10]);
      r.atomic_push_ops = u64(f[11]);
      r.kernel_ms = std::stod(f[12]);
      r.overhead_ms = std::stod(f[13]);
      r.status = f[14];
      rows.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw ParseError(lineno, "bad numeric field");
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Degree histograms
// ---------------------------------------------------------------------------

inline void write_degree_histogram(std::ostream& out, const DegreeHistogram& h) {
  out << "degree_bin_low,degree_bin_high,node_count\n";
  for (std::size_t k = 1; k <= h.bin_count(); ++k)
    out << detail::fmt_real(h.bin_low(k)) << ',' << detail::fmt_real(h.bin_high(k)) << ',' << h.counts[k - 1]
        << '\n';
}

inline void emit_degree_histogram(const CsrGraph& g, std::size_t bins, const std::filesystem::path& path) {
  const auto h = build_histogram(g, bins);
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_degree_histogram(out, h);
}

/// Post-split variant: the histogram of the split graph's outdegrees.
inline void emit_degree_histogram(const SplitGraph& sg, std::size_t bins, const std::filesystem::path& path) {
  emit_degree_histogram(sg.graph, bins, path);
}

}  // namespace lbg
