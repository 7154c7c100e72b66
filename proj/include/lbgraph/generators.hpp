#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "csr.hpp"

namespace lbg {

/// Quadrant probabilities of the recursive-matrix model.
struct RmatParams {
  double a = 0.45;
  double b = 0.15;
  double c = 0.15;
  double d = 0.25;
};

/// Synthetic edge weights are uniform integers in [1, kMaxSyntheticWeight].
inline constexpr weight_t kMaxSyntheticWeight = 100;

namespace detail {

// Distribution helpers written out by hand so that generated graphs do not
// depend on the standard library's distribution implementations.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased integer in [0, bound) by rejection.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t r;
  do r = rng();
  while (r >= limit);
  return r % bound;
}

inline weight_t synthetic_weight(std::mt19937_64& rng) {
  return static_cast<weight_t>(1 + uniform_below(rng, kMaxSyntheticWeight));
}

}  // namespace detail

/**
 * Recursive-matrix graph with 2^scale nodes and edge_factor * 2^scale
 * directed, weighted edges. Each edge descends `scale` levels, picking a
 * quadrant per level with probabilities (a, b, c, d); self-loops and
 * parallel edges are kept.
 */
inline CsrGraph generate_rmat(unsigned scale, std::uint64_t edge_factor,
                              const RmatParams& p, std::uint64_t seed) {
  if (std::abs(p.a + p.b + p.c + p.d - 1.0) > 1e-9)
    throw ConfigError("rmat probabilities must sum to 1");
  if (p.a < 0 || p.b < 0 || p.c < 0 || p.d < 0)
    throw ConfigError("rmat probabilities must be non-negative");
  if (scale < 1 || scale > 31) throw ConfigError("rmat scale must be in [1, 31]");

  const std::uint64_t n = std::uint64_t{1} << scale;
  const std::uint64_t m = edge_factor * n;
  std::mt19937_64 rng(seed);
  std::vector<node_t> src(m), dst(m);
  std::vector<weight_t> wt(m);
  const double ab = p.a + p.b, abc = p.a + p.b + p.c;
  for (std::uint64_t i = 0; i < m; ++i) {
    node_t row = 0, col = 0;
    for (unsigned level = 0; level < scale; ++level) {
      const double r = detail::uniform01(rng);
      const node_t bit = node_t{1} << (scale - 1 - level);
      if (r < p.a) {
      } else if (r < ab) {
        col |= bit;
      } else if (r < abc) {
        row |= bit;
      } else {
        row |= bit;
        col |= bit;
      }
    }
    src[i] = row;
    dst[i] = col;
    wt[i] = detail::synthetic_weight(rng);
  }
  return CsrGraph::from_edges(n, src, dst, std::span<const weight_t>(wt));
}

/// Erdos-Renyi style graph: `num_edges` weighted edges with both endpoints
/// drawn uniformly.
inline CsrGraph generate_er(std::uint64_t num_nodes, std::uint64_t num_edges,
                            std::uint64_t seed) {
  if (num_nodes > std::numeric_limits<node_t>::max())
    throw ConfigError("er node count exceeds id range");
  if (static_cast<unsigned __int128>(num_nodes) * num_nodes < num_edges)
    throw ConfigError("er edge count exceeds num_nodes^2");
  std::mt19937_64 rng(seed);
  std::vector<node_t> src(num_edges), dst(num_edges);
  std::vector<weight_t> wt(num_edges);
  for (std::uint64_t i = 0; i < num_edges; ++i) {
    src[i] = static_cast<node_t>(detail::uniform_below(rng, num_nodes));
    dst[i] = static_cast<node_t>(detail::uniform_below(rng, num_nodes));
    wt[i] = detail::synthetic_weight(rng);
  }
  return CsrGraph::from_edges(num_nodes, src, dst, std::span<const weight_t>(wt));
}

}  // namespace lbg
