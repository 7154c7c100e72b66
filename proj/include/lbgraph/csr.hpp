#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "types.hpp"

namespace lbg {

/**
 * Compressed sparse-row graph.
 *
 * The out-edges of node v occupy [row_offsets[v], row_offsets[v+1]) of
 * col_indices (and weights, when present). Unweighted graphs report weight 1
 * for every edge.
 */
struct CsrGraph {
  std::vector<edge_t> row_offsets{0};
  std::vector<node_t> col_indices;
  std::optional<std::vector<weight_t>> weights;

  std::size_t num_nodes() const noexcept { return row_offsets.size() - 1; }
  std::size_t num_edges() const noexcept { return col_indices.size(); }
  bool weighted() const noexcept { return weights.has_value(); }

  degree_t out_degree(node_t v) const noexcept {
    return row_offsets[v + 1] - row_offsets[v];
  }
  edge_t first_edge(node_t v) const noexcept { return row_offsets[v]; }
  weight_t weight(edge_t e) const noexcept { return weights ? (*weights)[e] : 1; }

  std::span<const node_t> neighbors(node_t v) const noexcept {
    return {col_indices.data() + row_offsets[v],
            static_cast<std::size_t>(out_degree(v))};
  }

  /// Builds a CSR from an edge list. Edges are grouped by source with a
  /// stable counting sort, so per-source order follows input order.
  static CsrGraph from_edges(std::size_t num_nodes,
                             std::span<const node_t> src,
                             std::span<const node_t> dst,
                             std::optional<std::span<const weight_t>> wt = {}) {
    if (src.size() != dst.size() || (wt && wt->size() != src.size()))
      throw PreconditionError("edge arrays differ in length");
    CsrGraph g;
    g.row_offsets.assign(num_nodes + 1, 0);
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (src[i] >= num_nodes || dst[i] >= num_nodes)
        throw PreconditionError("edge endpoint out of range");
      ++g.row_offsets[src[i] + 1];
    }
    for (std::size_t v = 0; v < num_nodes; ++v)
      g.row_offsets[v + 1] += g.row_offsets[v];

    g.col_indices.resize(src.size());
    if (wt) g.weights.emplace(src.size());
    std::vector<edge_t> cursor(g.row_offsets.begin(), g.row_offsets.end() - 1);
    for (std::size_t i = 0; i < src.size(); ++i) {
      const edge_t slot = cursor[src[i]]++;
      g.col_indices[slot] = dst[i];
      if (wt) (*g.weights)[slot] = (*wt)[i];
    }
    return g;
  }

  /// Checks the structural invariants; returns a description of the first
  /// violation, or nullopt when the graph is well formed.
  std::optional<std::string> validate() const {
    if (row_offsets.empty() || row_offsets.front() != 0)
      return "row_offsets[0] != 0";
    if (row_offsets.back() != col_indices.size())
      return "row_offsets[num_nodes] != num_edges";
    for (std::size_t v = 0; v + 1 < row_offsets.size(); ++v)
      if (row_offsets[v] > row_offsets[v + 1])
        return "row_offsets decreases at node " + std::to_string(v);
    for (node_t c : col_indices)
      if (c >= num_nodes()) return "column index out of range";
    if (weights && weights->size() != col_indices.size())
      return "weight array length mismatch";
    return std::nullopt;
  }

  friend bool operator==(const CsrGraph&, const CsrGraph&) = default;
};

/// Coordinate-list graph, sorted by source.
struct CooGraph {
  std::size_t num_nodes = 0;
  std::vector<node_t> src;
  std::vector<node_t> dst;
  std::optional<std::vector<weight_t>> wt;

  std::size_t num_edges() const noexcept { return src.size(); }
  weight_t weight(edge_t e) const noexcept { return wt ? (*wt)[e] : 1; }

  /// Node-id cells plus weight cells held by this layout.
  std::uint64_t storage_cells() const noexcept {
    return 2 * src.size() + (wt ? wt->size() : 0);
  }
};

/// Device-memory budget in fixed-size cells (4-byte ids by default).
struct MemoryBudget {
  std::uint64_t bytes = 4'000'000'000ULL;
  std::uint32_t bytes_per_cell = 4;

  std::uint64_t cells() const noexcept { return bytes / bytes_per_cell; }

  static MemoryBudget from_cells(std::uint64_t cells, std::uint32_t cell_bytes = 4) {
    return {cells * cell_bytes, cell_bytes};
  }
};

inline std::uint64_t coo_cells_required(std::uint64_t num_edges, bool weighted) noexcept {
  return 2 * num_edges + (weighted ? num_edges : 0);
}

/// Throws CapacityError when a COO layout of `num_edges` edges does not fit.
inline void check_coo_budget(std::uint64_t num_edges, bool weighted,
                             const MemoryBudget& budget) {
  const auto need = coo_cells_required(num_edges, weighted);
  if (need > budget.cells()) throw CapacityError(need, budget.cells());
}

inline CooGraph csr_to_coo(const CsrGraph& g, const MemoryBudget& budget = {}) {
  check_coo_budget(g.num_edges(), g.weighted(), budget);
  CooGraph coo;
  coo.num_nodes = g.num_nodes();
  coo.src.resize(g.num_edges());
  coo.dst = g.col_indices;
  if (g.weights) coo.wt = *g.weights;
  for (std::size_t v = 0; v < g.num_nodes(); ++v)
    std::fill(coo.src.begin() + static_cast<std::ptrdiff_t>(g.row_offsets[v]),
              coo.src.begin() + static_cast<std::ptrdiff_t>(g.row_offsets[v + 1]),
              static_cast<node_t>(v));
  return coo;
}

inline CsrGraph coo_to_csr(const CooGraph& coo) {
  if (coo.wt)
    return CsrGraph::from_edges(coo.num_nodes, coo.src, coo.dst,
                                std::span<const weight_t>(*coo.wt));
  return CsrGraph::from_edges(coo.num_nodes, coo.src, coo.dst);
}

}  // namespace lbg
