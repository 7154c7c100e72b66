#pragma once

#include "common.hpp"

namespace lbg {

namespace detail {

/**
 * Node-based kernel: worklist nodes are dealt to threads round-robin and a
 * thread relaxes every out-edge of each node it holds. Improved
 * destinations are pushed (deduplicated) to `out`; `on_improved(ctx, out, v, d)`
 * runs after each successful relaxation.
 */
template <class OnImproved>
MetricsRecord node_kernel(Engine& engine, const CsrGraph& g, DistArray& dist, RelaxOp op,
                          const Worklist<node_t>& in, Worklist<node_t>& out, std::size_t threads,
                          const RunHooks& hooks, std::size_t iteration, OnImproved&& on_improved) {
  const std::size_t n = in.size();
  return engine.launch(threads, [&](ThreadContext& ctx) {
    for (std::size_t i = ctx.tid(); i < n; i += ctx.num_threads()) {
      const node_t v = in[i];
      const dist_t dv = dist.load(v);
      for (edge_t e = g.row_offsets[v]; e < g.row_offsets[v + 1]; ++e) {
        ctx.add_work();
        if (hooks.on_edge) hooks.on_edge({iteration, ctx.tid(), e});
        if (dv == kInfDist) continue;
        const node_t dst = g.col_indices[e];
        const dist_t cand = op.candidate(dv, g.weight(e));
        if (ctx.relax(dist, dst, cand)) {
          ctx.push_unique(out, dst);
          on_improved(ctx, out, dst, cand);
        }
      }
    }
  });
}

/// Data-driven node-worklist loop shared by BS and NS.
template <class OnImproved>
std::vector<MetricsRecord> run_node_based(Engine& engine, const CsrGraph& g, DistArray& dist,
                                          RelaxOp op, Worklist<node_t>& in, std::string_view tag,
                                          const StrategyOptions& opt, OverheadClock& clock,
                                          std::size_t& iterations, bool reflects,
                                          OnImproved&& on_improved) {
  std::vector<MetricsRecord> records;
  Worklist<node_t> out(0, g.num_nodes());
  std::size_t iteration = 0;
  while (!in.empty()) {
    // Reflection pushes nodes beyond the out-edge targets; size for every node.
    out.ensure_capacity(reflects ? g.num_nodes() : node_push_bound(g, in.items()));
    const std::size_t threads = opt.kernel.threads_for(in.size());
    const KernelInput input{iteration, std::nullopt, tag, threads, in.items(), {}, 0};
    if (opt.hooks.before_kernel) opt.hooks.before_kernel(input);
    auto rec = node_kernel(engine, g, dist, op, in, out, threads, opt.hooks, iteration, on_improved);
    finish_kernel(std::move(rec), input, dist, clock, opt.hooks, records);
    in.swap(out);
    out.clear();
    ++iteration;
  }
  iterations = iteration;
  return records;
}

}  // namespace detail

/// Node-based distribution (BS).
inline RunResult run_bs(const CsrGraph& g, node_t source, RelaxOp op, const StrategyOptions& opt = {}) {
  require_source(g, source);
  detail::OverheadClock clock;
  Engine engine(opt.kernel);
  RunResult r;
  r.strategy = Strategy::bs;
  DistArray dist = detail::init_dist(g.num_nodes(), source);
  Worklist<node_t> in(1, g.num_nodes());
  in.push_back(source);
  r.records = detail::run_node_based(engine, g, dist, op, in, tag(Strategy::bs), opt, clock, r.iterations, false,
                                     [](ThreadContext&, Worklist<node_t>&, node_t, dist_t) {});
  clock.finish(r.records);
  r.dist = std::move(dist).release();
  return r;
}

}  // namespace lbg
