#pragma once

#include "strategies/bs.hpp"
#include "strategies/common.hpp"
#include "strategies/ep.hpp"
#include "strategies/hp.hpp"
#include "strategies/ns.hpp"
#include "strategies/wd.hpp"

namespace lbg {

inline RunResult run_strategy(Strategy s, const CsrGraph& g, node_t source, RelaxOp op,
                              const StrategyOptions& opt = {}) {
  switch (s) {
    case Strategy::bs: return run_bs(g, source, op, opt);
    case Strategy::ep: return run_ep(g, source, op, opt);
    case Strategy::wd: return run_wd(g, source, op, opt);
    case Strategy::ns: return run_ns(g, source, op, opt);
    case Strategy::hp: return run_hp(g, source, op, opt);
  }
  throw ConfigError("unknown strategy");
}

/// Sequential reference distances for `op`.
inline std::vector<dist_t> oracle_distances(const CsrGraph& g, node_t source, RelaxOp op) {
  return op.kind == Algo::bfs ? sequential_bfs(g, source) : dijkstra(g, source);
}

}  // namespace lbg
