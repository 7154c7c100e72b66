#pragma once

#include <functional>
#include <optional>
#include <queue>
#include <vector>

#include "csr.hpp"

namespace lbg {

inline void require_source(const CsrGraph& g, node_t source) {
  if (source >= g.num_nodes())
    throw PreconditionError("source " + std::to_string(source) + " out of range (" +
                            std::to_string(g.num_nodes()) + " nodes)");
}

/// Queue-based BFS levels; kInfDist for unreachable nodes.
inline std::vector<dist_t> sequential_bfs(const CsrGraph& g, node_t source) {
  require_source(g, source);
  std::vector<dist_t> level(g.num_nodes(), kInfDist);
  std::queue<node_t> q;
  level[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const node_t u = q.front();
    q.pop();
    for (node_t v : g.neighbors(u))
      if (level[v] == kInfDist) {
        level[v] = level[u] + 1;
        q.push(v);
      }
  }
  return level;
}

/// Binary-heap Dijkstra. Unweighted graphs use unit weights.
inline std::vector<dist_t> dijkstra(const CsrGraph& g, node_t source) {
  require_source(g, source);
  std::vector<dist_t> dist(g.num_nodes(), kInfDist);
  using Entry = std::pair<dist_t, node_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[source] = 0;
  heap.emplace(0, source);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d != dist[u]) continue;
    for (edge_t e = g.row_offsets[u]; e < g.row_offsets[u + 1]; ++e) {
      const node_t v = g.col_indices[e];
      const dist_t nd = d + g.weight(e);
      if (nd < dist[v]) {
        dist[v] = nd;
        heap.emplace(nd, v);
      }
    }
  }
  return dist;
}

struct Mismatch {
  node_t node;
  dist_t expected;
  dist_t actual;
};

struct VerificationReport {
  bool matched = true;
  std::size_t mismatch_count = 0;
  std::optional<Mismatch> first_mismatch;
};

/// Exact elementwise comparison.
inline VerificationReport verify(std::span<const dist_t> expected, std::span<const dist_t> actual) {
  if (expected.size() != actual.size())
    throw PreconditionError("verify: length mismatch (" + std::to_string(expected.size()) + " vs " +
                            std::to_string(actual.size()) + ")");
  VerificationReport r;
  for (std::size_t i = 0; i < expected.size(); ++i)
    if (expected[i] != actual[i]) {
      if (!r.first_mismatch) r.first_mismatch = Mismatch{static_cast<node_t>(i), expected[i], actual[i]};
      ++r.mismatch_count;
    }
  r.matched = r.mismatch_count == 0;
  return r;
}

}  // namespace lbg
