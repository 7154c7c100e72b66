#pragma once

#include <algorithm>

#include "common.hpp"

namespace lbg {

/// Where a thread starts: worklist position and edge within that node.
struct OffsetEntry {
  std::size_t node_offset = 0;
  degree_t edge_offset = 0;
  bool idle = true;

  friend bool operator==(const OffsetEntry&, const OffsetEntry&) = default;
};

struct OffsetTable {
  std::vector<OffsetEntry> entries;
  std::uint64_t edges_per_thread = 1;
  std::uint64_t total_edges = 0;
};

/// ceil(total / threads), at least 1.
inline std::uint64_t edges_per_thread(std::uint64_t total_edges, std::size_t threads) {
  if (threads == 0) throw ConfigError("thread count must be >= 1");
  return std::max<std::uint64_t>(1, (total_edges + threads - 1) / threads);
}

namespace detail {

inline OffsetEntry locate(std::span<const std::uint64_t> prefix, std::uint64_t global) {
  // First worklist node whose inclusive prefix exceeds the global edge index.
  const auto it = std::upper_bound(prefix.begin(), prefix.end(), global);
  const auto k = static_cast<std::size_t>(it - prefix.begin());
  return {k, global - (k ? prefix[k - 1] : 0), false};
}

}  // namespace detail

/**
 * Start offsets for a block distribution of the active edges. `prefix` is
 * the inclusive scan of the worklist nodes' (remaining) outdegrees. Entry t
 * covers global edges [t * ept, (t + 1) * ept); threads past the last edge
 * are idle. Runs as its own kernel on `engine`.
 */
inline OffsetTable find_offsets(std::span<const node_t> wl, std::span<const std::uint64_t> prefix,
                                std::uint64_t ept, std::size_t threads, Engine& engine) {
  if (prefix.size() != wl.size())
    throw PreconditionError("find_offsets: prefix length " + std::to_string(prefix.size()) +
                            " != worklist length " + std::to_string(wl.size()));
  if (ept == 0) throw PreconditionError("find_offsets: edges_per_thread must be >= 1");
  OffsetTable table;
  table.edges_per_thread = ept;
  table.total_edges = prefix.empty() ? 0 : prefix.back();
  table.entries.resize(threads);
  engine.launch(threads, [&](ThreadContext& ctx) {
    const std::uint64_t global = ctx.tid() * ept;
    if (global < table.total_edges) table.entries[ctx.tid()] = detail::locate(prefix, global);
  });
  return table;
}

inline OffsetTable find_offsets(std::span<const node_t> wl, std::span<const std::uint64_t> prefix,
                                std::uint64_t ept, std::size_t threads) {
  KernelConfig cfg;
  cfg.deterministic_replay = true;
  Engine engine(cfg);
  return find_offsets(wl, prefix, ept, threads, engine);
}

/**
 * Walks thread `tid`'s contiguous chunk, moving to the next worklist node
 * whenever the current one runs out of edges. visit(node_offset,
 * edge_offset) is called once per assigned edge.
 */
template <class Visit>
void wd_walk(const OffsetTable& table, std::span<const std::uint64_t> prefix, std::size_t tid, Visit&& visit) {
  const OffsetEntry& start = table.entries[tid];
  if (start.idle) return;
  std::size_t node = start.node_offset;
  degree_t edge = start.edge_offset;
  const std::uint64_t begin = tid * table.edges_per_thread;
  const std::uint64_t end = std::min(table.total_edges, begin + table.edges_per_thread);
  for (std::uint64_t k = begin; k < end; ++k) {
    while (edge >= prefix[node] - (node ? prefix[node - 1] : 0)) {
      ++node;
      edge = 0;
    }
    visit(node, edge);
    ++edge;
  }
}

namespace detail {

/// One workload-decomposition kernel over `nodes`, skipping the first
/// `base` edges of each node. Scan and offset computation count as overhead.
inline void wd_step(Engine& engine, const CsrGraph& g, DistArray& dist, RelaxOp op,
                    std::span<const node_t> nodes, degree_t base, Worklist<node_t>& out,
                    const StrategyOptions& opt, std::size_t iteration,
                    std::optional<std::size_t> sub_iteration, std::string_view tag,
                    OverheadClock& clock, std::vector<MetricsRecord>& records) {
  std::vector<std::uint64_t> remaining(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const degree_t d = g.out_degree(nodes[i]);
    remaining[i] = d > base ? d - base : 0;
  }
  const auto prefix = lbg::inclusive_scan(remaining, engine.pool());
  const std::size_t threads = opt.kernel.threads_for(nodes.size());
  const std::uint64_t total = prefix.empty() ? 0 : prefix.back();
  const auto table = find_offsets(nodes, prefix, edges_per_thread(total, threads), threads, engine);
  out.ensure_capacity(static_cast<std::size_t>(std::min<std::uint64_t>(total, g.num_nodes())));

  const KernelInput input{iteration, sub_iteration, tag, threads, nodes, {}, base};
  const auto& hooks = opt.hooks;
  if (hooks.before_kernel) hooks.before_kernel(input);
  auto rec = engine.launch(threads, [&](ThreadContext& ctx) {
    wd_walk(table, prefix, ctx.tid(), [&](std::size_t node_off, degree_t edge_off) {
      const node_t v = nodes[node_off];
      const edge_t e = g.row_offsets[v] + base + edge_off;
      ctx.add_work();
      if (hooks.on_edge) hooks.on_edge({iteration, ctx.tid(), e});
      const dist_t dv = dist.load(v);
      if (dv == kInfDist) return;
      const node_t dst = g.col_indices[e];
      if (ctx.relax(dist, dst, op.candidate(dv, g.weight(e)))) ctx.push_unique(out, dst);
    });
  });
  finish_kernel(std::move(rec), input, dist, clock, hooks, records);
}

}  // namespace detail

/// Workload decomposition (WD): active nodes' edges are split into
/// contiguous blocks of ceil(total / T) edges per thread.
inline RunResult run_wd(const CsrGraph& g, node_t source, RelaxOp op, const StrategyOptions& opt = {}) {
  require_source(g, source);
  detail::OverheadClock clock;
  Engine engine(opt.kernel);
  RunResult r;
  r.strategy = Strategy::wd;
  DistArray dist = detail::init_dist(g.num_nodes(), source);
  Worklist<node_t> in(1, g.num_nodes()), out(0, g.num_nodes());
  in.push_back(source);
  std::size_t iteration = 0;
  while (!in.empty()) {
    detail::wd_step(engine, g, dist, op, in.items(), 0, out, opt, iteration, std::nullopt, tag(Strategy::wd),
                    clock, r.records);
    in.swap(out);
    out.clear();
    ++iteration;
  }
  r.iterations = iteration;
  clock.finish(r.records);
  r.dist = std::move(dist).release();
  return r;
}

}  // namespace lbg
