#pragma once

#include <array>
#include <cctype>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "../csr.hpp"
#include "../engine.hpp"
#include "../oracles.hpp"

namespace lbg {

enum class Algo { bfs, sssp };

inline std::string_view to_string(Algo a) { return a == Algo::bfs ? "bfs" : "sssp"; }

inline Algo parse_algo(std::string_view s) {
  if (s == "bfs") return Algo::bfs;
  if (s == "sssp") return Algo::sssp;
  throw ConfigError("unknown algorithm '" + std::string(s) + "'");
}

/// candidate(d, w) = d + 1 for BFS levels, d + w for SSSP.
struct RelaxOp {
  Algo kind = Algo::sssp;

  dist_t candidate(dist_t source_value, weight_t w) const noexcept {
    return source_value + (kind == Algo::bfs ? dist_t{1} : dist_t{w});
  }
};

enum class Strategy { bs, ep, wd, ns, hp };

inline constexpr std::array kAllStrategies{Strategy::bs, Strategy::ep, Strategy::wd, Strategy::ns,
                                           Strategy::hp};

inline std::string_view tag(Strategy s) {
  switch (s) {
    case Strategy::bs: return "BS";
    case Strategy::ep: return "EP";
    case Strategy::wd: return "WD";
    case Strategy::ns: return "NS";
    case Strategy::hp: return "HP";
  }
  return "?";
}

/// Tag of hierarchical-processing invocations handed to workload decomposition.
inline constexpr std::string_view kWdFallbackTag = "WD-fallback";

inline Strategy parse_strategy(std::string_view s) {
  std::string lower(s);
  for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (Strategy st : kAllStrategies) {
    std::string t(tag(st));
    for (auto& ch : t) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (t == lower) return st;
  }
  throw ConfigError("unknown strategy '" + std::string(s) + "'");
}

/// What a kernel is about to process, as seen by the host.
struct KernelInput {
  std::size_t iteration = 0;
  std::optional<std::size_t> sub_iteration;
  std::string_view tag;
  std::size_t threads = 0;
  std::span<const node_t> nodes;  // node worklists
  std::span<const edge_t> edges;  // edge worklists (EP)
  degree_t edge_base = 0;         // edges of each node already processed (HP)
};

struct EdgeVisit {
  std::size_t iteration;
  std::size_t tid;
  edge_t edge;  // index into the processed graph's edge arrays
};

/// Instrumentation callbacks. on_edge runs inside kernels and must be
/// thread-safe unless the engine runs in deterministic replay.
struct RunHooks {
  std::function<void(const KernelInput&)> before_kernel;
  std::function<void(const EdgeVisit&)> on_edge;
  std::function<void(const MetricsRecord&, std::span<const dist_t>)> after_kernel;
};

struct StrategyOptions {
  KernelConfig kernel;
  /// EP: push all out-edges of an updated node with one reservation.
  bool chunked = true;
  MemoryBudget budget;
  std::size_t bins = 10;
  std::optional<degree_t> mdt;
  /// HP: hand lists shorter than a block to workload decomposition.
  bool hp_fallback = true;
  RunHooks hooks;
};

enum class RunStatus { ok, infeasible_memory };

inline std::string_view to_string(RunStatus s) {
  return s == RunStatus::ok ? "ok" : "infeasible: memory";
}

struct RunResult {
  Strategy strategy = Strategy::bs;
  RunStatus status = RunStatus::ok;
  std::string detail;
  std::vector<dist_t> dist;
  std::vector<MetricsRecord> records;
  std::size_t iterations = 0;
  std::optional<degree_t> mdt;
  std::optional<double> split_fraction;

  bool feasible() const noexcept { return status == RunStatus::ok; }
};

namespace detail {

/// Attaches host time spent since the previous kernel to the next record.
class OverheadClock {
 public:
  void attach(MetricsRecord& rec) { rec.overhead_wall_time += sw_.lap() - rec.kernel_wall_time; }
  /// Books the remaining host time onto the last record.
  void finish(std::vector<MetricsRecord>& records) {
    const auto t = sw_.lap();
    if (!records.empty()) records.back().overhead_wall_time += t;
  }

 private:
  Stopwatch sw_;
};

inline DistArray init_dist(std::size_t n, node_t source) {
  DistArray d(n);
  d.store(source, 0);
  return d;
}

/// Upper bound on dedup'd node pushes caused by processing `nodes`.
inline std::size_t node_push_bound(const CsrGraph& g, std::span<const node_t> nodes) {
  std::uint64_t s = 0;
  for (node_t v : nodes) s += g.out_degree(v);
  return static_cast<std::size_t>(std::min<std::uint64_t>(s, g.num_nodes()));
}

/// Records, runs hooks, and appends the kernel's record.
inline void finish_kernel(MetricsRecord&& rec, const KernelInput& in, const DistArray& dist,
                          OverheadClock& clock, const RunHooks& hooks,
                          std::vector<MetricsRecord>& out) {
  rec.iteration = in.iteration;
  rec.sub_iteration = in.sub_iteration;
  rec.strategy = std::string(in.tag);
  rec.active_items = in.nodes.empty() ? in.edges.size() : in.nodes.size();
  clock.attach(rec);
  if (hooks.after_kernel) hooks.after_kernel(rec, dist.values());
  out.push_back(std::move(rec));
}

}  // namespace detail

}  // namespace lbg
