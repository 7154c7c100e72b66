#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "csr.hpp"

namespace lbg {

struct DegreeStats {
  degree_t max = 0;
  double avg = 0.0;
  double stddev = 0.0;  // population
};

inline DegreeStats degree_stats(const CsrGraph& g) {
  if (g.num_nodes() == 0) throw PreconditionError("degree_stats on an empty graph");
  DegreeStats s;
  const double n = static_cast<double>(g.num_nodes());
  s.avg = static_cast<double>(g.num_edges()) / n;
  double sq = 0.0;
  for (node_t v = 0; v < g.num_nodes(); ++v) {
    const degree_t d = g.out_degree(v);
    s.max = std::max(s.max, d);
    const double dev = static_cast<double>(d) - s.avg;
    sq += dev * dev;
  }
  s.stddev = std::sqrt(sq / n);
  return s;
}

/**
 * Outdegree histogram over [0, max_degree] split into `bin_count()`
 * equal-width, right-closed bins. Bins are 1-based: bin k holds degrees in
 * ((k-1)*w, k*w] with w = max_degree / bins; degree 0 lands in bin 1.
 */
struct DegreeHistogram {
  std::vector<std::uint64_t> counts;
  degree_t max_degree = 0;
  std::size_t arg_max_bin = 1;
  degree_t mdt = 0;  // 0 until compute_mdt

  std::size_t bin_count() const noexcept { return counts.size(); }
  double bin_width() const noexcept {
    return static_cast<double>(max_degree) / static_cast<double>(counts.size());
  }
  /// 1-based bin holding degree d.
  std::size_t bin_of(degree_t d) const noexcept {
    if (d == 0 || max_degree == 0) return 1;
    const auto b = static_cast<degree_t>(counts.size());
    return static_cast<std::size_t>((d * b + max_degree - 1) / max_degree);
  }
  double bin_low(std::size_t k) const noexcept { return static_cast<double>(k - 1) * bin_width(); }
  double bin_high(std::size_t k) const noexcept { return static_cast<double>(k) * bin_width(); }
};

/// Histogram from a degree multiset.
inline DegreeHistogram histogram_of_degrees(const std::vector<degree_t>& degrees,
                                            std::size_t bins) {
  if (bins == 0) throw ConfigError("histogram needs at least one bin");
  DegreeHistogram h;
  h.counts.assign(bins, 0);
  for (degree_t d : degrees) h.max_degree = std::max(h.max_degree, d);
  for (degree_t d : degrees) ++h.counts[h.bin_of(d) - 1];
  // max_element returns the first maximum: ties go to the lowest bin.
  h.arg_max_bin =
      static_cast<std::size_t>(std::max_element(h.counts.begin(), h.counts.end()) -
                               h.counts.begin()) + 1;
  return h;
}

inline DegreeHistogram build_histogram(const CsrGraph& g, std::size_t bins) {
  std::vector<degree_t> degrees(g.num_nodes());
  for (node_t v = 0; v < g.num_nodes(); ++v) degrees[v] = g.out_degree(v);
  return histogram_of_degrees(degrees, bins);
}

/// Maximum-degree threshold: floor(arg_max_bin / bins * max_degree), at least 1.
inline degree_t compute_mdt(const DegreeHistogram& h) {
  if (h.counts.empty()) throw PreconditionError("histogram not built");
  const degree_t raw = static_cast<degree_t>(h.arg_max_bin) * h.max_degree /
                       static_cast<degree_t>(h.counts.size());
  return std::max<degree_t>(1, raw);
}

inline DegreeHistogram& assign_mdt(DegreeHistogram& h) {
  h.mdt = compute_mdt(h);
  return h;
}

}  // namespace lbg
