#pragma once

#include "../degree.hpp"
#include "bs.hpp"

namespace lbg {

/**
 * Graph after node splitting. Nodes [0, num_original) keep their ids and
 * all incoming edges; a node of outdegree d > mdt keeps its first mdt edges
 * and hands the rest, mdt at a time, to ceil(d / mdt) - 1 children. Children
 * of node v are num_original + [child_offsets[v], child_offsets[v + 1]).
 */
struct SplitGraph {
  CsrGraph graph;
  std::size_t num_original = 0;
  std::vector<node_t> parent_of;      // indexed by child id - num_original
  std::vector<edge_t> child_offsets;  // num_original + 1 entries
  degree_t mdt = 1;

  std::size_t num_children() const noexcept { return parent_of.size(); }
  bool is_child(node_t v) const noexcept { return v >= num_original; }
  node_t first_child(node_t v) const noexcept { return static_cast<node_t>(num_original + child_offsets[v]); }
  std::size_t child_count(node_t v) const noexcept {
    return static_cast<std::size_t>(child_offsets[v + 1] - child_offsets[v]);
  }
  std::size_t split_nodes() const noexcept {
    std::size_t n = 0;
    for (std::size_t v = 0; v < num_original; ++v) n += child_offsets[v + 1] != child_offsets[v];
    return n;
  }
  double split_fraction() const noexcept {
    return num_original ? static_cast<double>(split_nodes()) / static_cast<double>(num_original) : 0.0;
  }
  /// Original id of any node of the split graph.
  node_t original_of(node_t v) const noexcept { return is_child(v) ? parent_of[v - num_original] : v; }
};

inline SplitGraph split_graph(const CsrGraph& g, degree_t mdt) {
  if (mdt < 1) throw ConfigError("mdt must be >= 1");
  const std::size_t n = g.num_nodes();
  SplitGraph s;
  s.num_original = n;
  s.mdt = mdt;
  s.child_offsets.assign(n + 1, 0);
  for (node_t v = 0; v < n; ++v) {
    const degree_t d = g.out_degree(v);
    s.child_offsets[v + 1] = s.child_offsets[v] + (d > mdt ? (d + mdt - 1) / mdt - 1 : 0);
  }
  const std::size_t children = static_cast<std::size_t>(s.child_offsets[n]);
  if (n + children > std::numeric_limits<node_t>::max()) throw CapacityError(n + children, std::numeric_limits<node_t>::max());
  s.parent_of.resize(children);

  CsrGraph& out = s.graph;
  out.row_offsets.assign(n + children + 1, 0);
  for (node_t v = 0; v < n; ++v) {
    const degree_t d = g.out_degree(v);
    out.row_offsets[v + 1] = std::min(d, mdt);
    for (std::size_t k = 1; k <= s.child_count(v); ++k) {
      const std::size_t c = static_cast<std::size_t>(s.child_offsets[v]) + k - 1;
      s.parent_of[c] = v;
      out.row_offsets[n + c + 1] = std::min(mdt, d - k * mdt);
    }
  }
  for (std::size_t i = 0; i + 1 < out.row_offsets.size(); ++i) out.row_offsets[i + 1] += out.row_offsets[i];

  out.col_indices.resize(g.num_edges());
  if (g.weights) out.weights.emplace(g.num_edges());
  auto copy_chunk = [&](edge_t from, edge_t to_slot, degree_t len) {
    std::copy_n(g.col_indices.begin() + static_cast<std::ptrdiff_t>(from), len,
                out.col_indices.begin() + static_cast<std::ptrdiff_t>(to_slot));
    if (g.weights)
      std::copy_n(g.weights->begin() + static_cast<std::ptrdiff_t>(from), len,
                  out.weights->begin() + static_cast<std::ptrdiff_t>(to_slot));
  };
  for (node_t v = 0; v < n; ++v) {
    const edge_t first = g.row_offsets[v];
    copy_chunk(first, out.row_offsets[v], out.row_offsets[v + 1] - out.row_offsets[v]);
    for (std::size_t k = 1; k <= s.child_count(v); ++k) {
      const std::size_t c = n + static_cast<std::size_t>(s.child_offsets[v]) + k - 1;
      copy_chunk(first + k * mdt, out.row_offsets[c], out.row_offsets[c + 1] - out.row_offsets[c]);
    }
  }
  return s;
}

/// Histogram-derived threshold for `g` with `bins` bins.
inline degree_t histogram_mdt(const CsrGraph& g, std::size_t bins) {
  return compute_mdt(build_histogram(g, bins));
}

/**
 * Node splitting (NS): node-based kernels on the split graph. When a
 * parent's distance drops, the relaxing thread reflects the new value onto
 * the parent's children and pushes them. Distances are reported for the
 * original ids.
 */
inline RunResult run_ns(const CsrGraph& g, node_t source, RelaxOp op, const StrategyOptions& opt = {}) {
  require_source(g, source);
  detail::OverheadClock clock;
  RunResult r;
  r.strategy = Strategy::ns;
  const degree_t mdt = opt.mdt ? *opt.mdt : histogram_mdt(g, opt.bins);
  const SplitGraph sg = split_graph(g, mdt);
  r.mdt = mdt;
  r.split_fraction = sg.split_fraction();

  Engine engine(opt.kernel);
  const std::size_t total = sg.graph.num_nodes();
  DistArray dist = detail::init_dist(total, source);
  Worklist<node_t> in(1 + sg.child_count(source), total);
  in.push_back(source);
  for (std::size_t k = 0; k < sg.child_count(source); ++k) {
    const node_t c = static_cast<node_t>(sg.first_child(source) + k);
    dist.store(c, 0);
    in.push_back(c);
  }
  r.records = detail::run_node_based(
      engine, sg.graph, dist, op, in, tag(Strategy::ns), opt, clock, r.iterations, true,
      [&sg, &dist](ThreadContext& ctx, Worklist<node_t>& out, node_t v, dist_t d) {
        if (sg.is_child(v)) return;
        const node_t first = sg.first_child(v);
        for (std::size_t k = 0, n = sg.child_count(v); k < n; ++k) {
          const node_t c = static_cast<node_t>(first + k);
          if (ctx.relax(dist, c, d)) ctx.push_unique(out, c);
        }
      });
  clock.finish(r.records);
  auto all = std::move(dist).release();
  all.resize(sg.num_original);
  r.dist = std::move(all);
  return r;
}

}  // namespace lbg
