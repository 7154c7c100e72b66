#pragma once

#include "common.hpp"

namespace lbg {

/**
 * Edge-based distribution (EP) over a COO copy of the graph.
 *
 * The worklist holds edge indices dealt to threads round-robin (stride T).
 * A successful relaxation pushes every out-edge of the destination: one
 * reservation for the whole run when chunked, one per edge otherwise. The
 * output worklist is condensed after each kernel. If the COO layout does not
 * fit `opt.budget`, the result is marked infeasible instead of throwing.
 */
inline RunResult run_ep(const CsrGraph& g, node_t source, RelaxOp op, const StrategyOptions& opt = {}) {
  require_source(g, source);
  detail::OverheadClock clock;
  RunResult r;
  r.strategy = Strategy::ep;
  CooGraph coo;
  try {
    coo = csr_to_coo(g, opt.budget);
  } catch (const CapacityError& e) {
    r.status = RunStatus::infeasible_memory;
    r.detail = e.what();
    return r;
  }

  Engine engine(opt.kernel);
  DistArray dist = detail::init_dist(g.num_nodes(), source);
  const auto& hooks = opt.hooks;
  Worklist<edge_t> in, out;
  for (edge_t e = g.row_offsets[source]; e < g.row_offsets[source + 1]; ++e) in.push_back(e);

  std::size_t iteration = 0;
  while (!in.empty()) {
    std::uint64_t bound = 0;
    for (edge_t e : in.items()) bound += g.out_degree(coo.dst[e]);
    out.ensure_capacity(static_cast<std::size_t>(bound));

    const std::size_t n = in.size();
    const std::size_t threads = opt.kernel.threads_for(n);
    const KernelInput input{iteration, std::nullopt, tag(Strategy::ep), threads, {}, in.items(), 0};
    if (hooks.before_kernel) hooks.before_kernel(input);
    auto rec = engine.launch(threads, [&](ThreadContext& ctx) {
      for (std::size_t i = ctx.tid(); i < n; i += ctx.num_threads()) {
        const edge_t e = in[i];
        ctx.add_work();
        if (hooks.on_edge) hooks.on_edge({iteration, ctx.tid(), e});
        const dist_t ds = dist.load(coo.src[e]);
        if (ds == kInfDist) continue;
        const node_t d = coo.dst[e];
        if (!ctx.relax(dist, d, op.candidate(ds, coo.weight(e)))) continue;
        const edge_t first = g.row_offsets[d];
        const std::size_t deg = static_cast<std::size_t>(g.out_degree(d));
        if (opt.chunked) {
          ctx.push_range<edge_t>(out, first, deg);
        } else {
          for (std::size_t k = 0; k < deg; ++k) ctx.push_range<edge_t>(out, first + k, 1);
        }
      }
    });
    detail::finish_kernel(std::move(rec), input, dist, clock, hooks, r.records);
    in.swap(out);
    out.clear();
    wl_condense(in, g.num_edges());
    ++iteration;
  }
  r.iterations = iteration;
  clock.finish(r.records);
  r.dist = std::move(dist).release();
  return r;
}

}  // namespace lbg
