#pragma once

#include <random>
#include <vector>

#include <lbgraph/csr.hpp>

namespace lbg::testing {

/// Small weighted graph from an explicit edge list.
inline CsrGraph make_graph(std::size_t n, std::vector<std::tuple<node_t, node_t, weight_t>> edges) {
  std::vector<node_t> s, d;
  std::vector<weight_t> w;
  for (auto [a, b, c] : edges) {
    s.push_back(a);
    d.push_back(b);
    w.push_back(c);
  }
  return CsrGraph::from_edges(n, s, d, std::span<const weight_t>(w));
}

inline CsrGraph path_graph(std::size_t n) {
  std::vector<std::tuple<node_t, node_t, weight_t>> e;
  for (node_t v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1, 1);
  return make_graph(n, e);
}

/// Center 0 with edges to 1..leaves.
inline CsrGraph star_graph(std::size_t leaves, weight_t w = 1) {
  std::vector<std::tuple<node_t, node_t, weight_t>> e;
  for (node_t v = 1; v <= leaves; ++v) e.emplace_back(0, v, w);
  return make_graph(leaves + 1, e);
}

/// Directed ring where every node also points two ahead: all degrees 2.
inline CsrGraph ring_graph(std::size_t n) {
  std::vector<std::tuple<node_t, node_t, weight_t>> e;
  for (node_t v = 0; v < n; ++v) {
    e.emplace_back(v, static_cast<node_t>((v + 1) % n), 1);
    e.emplace_back(v, static_cast<node_t>((v + 2) % n), 3);
  }
  return make_graph(n, e);
}

/// Random multigraph with heavy-tailed degrees; weights in [0, max_w].
inline CsrGraph random_graph(std::mt19937_64& rng, std::size_t n, std::size_t m, weight_t max_w = 20) {
  std::vector<std::tuple<node_t, node_t, weight_t>> e;
  std::uniform_int_distribution<node_t> any(0, static_cast<node_t>(n - 1));
  std::uniform_int_distribution<weight_t> wd(0, max_w);
  // Half the sources concentrate on a few hubs.
  std::uniform_int_distribution<node_t> hub(0, static_cast<node_t>(std::min<std::size_t>(n, 4) - 1));
  for (std::size_t i = 0; i < m; ++i) {
    const node_t s = (i % 2) ? hub(rng) : any(rng);
    e.emplace_back(s, any(rng), wd(rng));
  }
  return make_graph(n, e);
}

}  // namespace lbg::testing
