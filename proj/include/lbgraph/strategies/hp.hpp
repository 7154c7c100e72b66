#pragma once

#include "ns.hpp"
#include "wd.hpp"

namespace lbg {

/**
 * Hierarchical processing (HP).
 *
 * Each iteration walks its super-list in sub-iterations: sub-iteration s
 * relaxes edges [s*mdt, (s+1)*mdt) of every node in the current sublist,
 * and nodes with edges left form the next sublist. Progress is implied by
 * s, so no per-node cursor is stored. With fallback enabled, a list shorter
 * than one block is handed to workload decomposition (from the current
 * sub-iteration boundary) and tagged WD-fallback.
 */
inline RunResult run_hp(const CsrGraph& g, node_t source, RelaxOp op, const StrategyOptions& opt = {}) {
  require_source(g, source);
  detail::OverheadClock clock;
  RunResult r;
  r.strategy = Strategy::hp;
  const degree_t mdt = opt.mdt ? *opt.mdt : histogram_mdt(g, opt.bins);
  if (mdt < 1) throw ConfigError("mdt must be >= 1");
  r.mdt = mdt;

  Engine engine(opt.kernel);
  const auto& hooks = opt.hooks;
  DistArray dist = detail::init_dist(g.num_nodes(), source);
  Worklist<node_t> in(1, g.num_nodes()), out(0, g.num_nodes());
  in.push_back(source);
  std::vector<node_t> sub;
  Worklist<node_t> next_sub;

  std::size_t iteration = 0;
  while (!in.empty()) {
    sub.clear();
    for (node_t v : in.items())
      if (g.out_degree(v) > 0) sub.push_back(v);

    for (std::size_t s = 0; !sub.empty(); ++s) {
      const degree_t base = s * mdt;
      if (opt.hp_fallback && sub.size() < opt.kernel.block_size) {
        detail::wd_step(engine, g, dist, op, sub, base, out, opt, iteration, s, kWdFallbackTag, clock, r.records);
        break;
      }
      out.ensure_capacity(detail::node_push_bound(g, sub));
      next_sub.clear();
      next_sub.ensure_capacity(sub.size());
      const std::size_t n = sub.size();
      const std::size_t threads = opt.kernel.threads_for(n);
      const KernelInput input{iteration, s, tag(Strategy::hp), threads, sub, {}, base};
      if (hooks.before_kernel) hooks.before_kernel(input);
      auto rec = engine.launch(threads, [&](ThreadContext& ctx) {
        for (std::size_t i = ctx.tid(); i < n; i += ctx.num_threads()) {
          const node_t v = sub[i];
          const edge_t lo = g.row_offsets[v] + base;
          const edge_t end = g.row_offsets[v + 1];
          const edge_t hi = std::min(end, lo + mdt);
          const dist_t dv = dist.load(v);
          for (edge_t e = lo; e < hi; ++e) {
            ctx.add_work();
            if (hooks.on_edge) hooks.on_edge({iteration, ctx.tid(), e});
            if (dv == kInfDist) continue;
            const node_t dst = g.col_indices[e];
            if (ctx.relax(dist, dst, op.candidate(dv, g.weight(e)))) ctx.push_unique(out, dst);
          }
          if (hi < end) ctx.push_range<node_t>(next_sub, v, 1);
        }
      });
      detail::finish_kernel(std::move(rec), input, dist, clock, hooks, r.records);
      sub.assign(next_sub.items().begin(), next_sub.items().end());
    }
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
