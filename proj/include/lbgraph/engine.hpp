#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <functional>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "types.hpp"

namespace lbg {

// ---------------------------------------------------------------------------
// Kernel configuration and metrics
// ---------------------------------------------------------------------------

struct KernelConfig {
  /// Virtual threads per launch; 0 sizes each launch from its active items.
  std::size_t virtual_threads = 0;
  std::size_t block_size = 1024;
  /// OS-level execution lanes.
  std::size_t workers = 1;
  /// Run thread ids in ascending order on a single lane.
  bool deterministic_replay = false;
  /// When set (and not replaying), thread ids are dispatched in a seeded
  /// random order that changes from launch to launch.
  std::optional<std::uint64_t> schedule_seed;

  static constexpr std::size_t kMaxAutoThreads = std::size_t{1} << 14;

  void validate() const {
    if (block_size == 0) throw ConfigError("block_size must be >= 1");
    if (workers == 0) throw ConfigError("workers must be >= 1");
  }

  /// min(2^14, active rounded up to a whole block) unless fixed explicitly.
  std::size_t threads_for(std::size_t active_items) const {
    if (virtual_threads) return virtual_threads;
    const std::size_t blocks = (std::max<std::size_t>(active_items, 1) + block_size - 1) / block_size;
    return std::min(kMaxAutoThreads, blocks * block_size);
  }
};

/// One kernel invocation's counters.
struct MetricsRecord {
  std::size_t iteration = 0;
  std::optional<std::size_t> sub_iteration;
  std::string strategy;
  std::size_t active_items = 0;
  std::vector<std::uint64_t> per_thread_work;
  std::uint64_t atomic_relax_ops = 0;
  std::uint64_t atomic_push_ops = 0;
  std::chrono::nanoseconds kernel_wall_time{0};
  std::chrono::nanoseconds overhead_wall_time{0};

  std::size_t threads() const noexcept { return per_thread_work.size(); }
  std::uint64_t total_work() const noexcept {
    return std::accumulate(per_thread_work.begin(), per_thread_work.end(), std::uint64_t{0});
  }
  std::uint64_t max_work() const noexcept {
    return per_thread_work.empty() ? 0 : *std::max_element(per_thread_work.begin(), per_thread_work.end());
  }
  double avg_work() const noexcept {
    return per_thread_work.empty() ? 0.0
                                   : static_cast<double>(total_work()) / static_cast<double>(threads());
  }
  /// Population standard deviation across virtual threads.
  double stddev_work() const noexcept {
    if (per_thread_work.empty()) return 0.0;
    const double mean = avg_work();
    double sq = 0.0;
    for (auto w : per_thread_work) {
      const double d = static_cast<double>(w) - mean;
      sq += d * d;
    }
    return std::sqrt(sq / static_cast<double>(threads()));
  }
};

struct KernelCounters {
  std::atomic<std::uint64_t> relax_ops{0};
  std::atomic<std::uint64_t> push_ops{0};
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::chrono::nanoseconds elapsed() const {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start_);
  }
  std::chrono::nanoseconds lap() {
    const auto now = std::chrono::steady_clock::now();
    const auto d = std::chrono::duration_cast<std::chrono::nanoseconds>(now - start_);
    start_ = now;
    return d;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// Shared state: distances and worklists
// ---------------------------------------------------------------------------

/// Distance cells updated only through atomic min.
class DistArray {
 public:
  DistArray() = default;
  explicit DistArray(std::size_t n, dist_t init = kInfDist) : cells_(n, init) {}

  std::size_t size() const noexcept { return cells_.size(); }

  dist_t load(node_t v) const noexcept {
    return std::atomic_ref<dist_t>(const_cast<dist_t&>(cells_[v])).load(std::memory_order_relaxed);
  }
  /// Host-side store; not for use inside kernels.
  void store(node_t v, dist_t d) noexcept { cells_[v] = d; }

  /// dist[v] = min(dist[v], candidate); true iff the value strictly decreased.
  bool relax_min(node_t v, dist_t candidate) {
    if (v >= cells_.size())
      throw std::out_of_range("node " + std::to_string(v) + " out of range");
    std::atomic_ref<dist_t> cell(cells_[v]);
    dist_t cur = cell.load(std::memory_order_relaxed);
    while (candidate < cur)
      if (cell.compare_exchange_weak(cur, candidate, std::memory_order_relaxed)) return true;
    return false;
  }

  const std::vector<dist_t>& values() const noexcept { return cells_; }
  std::vector<dist_t> release() && { return std::move(cells_); }

 private:
  std::vector<dist_t> cells_;
};

/**
 * Append-only list of work items with atomic slot reservation.
 *
 * Capacity only changes on the host between kernels. With a dedup
 * universe, `claim` admits each node id at most once until `clear`.
 */
template <class Item>
class Worklist {
 public:
  explicit Worklist(std::size_t capacity = 0, std::size_t dedup_universe = 0)
      : items_(capacity), flag_count_(dedup_universe) {
    if (dedup_universe) flags_ = std::make_unique<std::atomic<std::uint8_t>[]>(dedup_universe);
  }

  std::size_t size() const noexcept { return cursor_.load(std::memory_order_acquire); }
  bool empty() const noexcept { return size() == 0; }
  std::size_t capacity() const noexcept { return items_.size(); }
  bool dedup() const noexcept { return flag_count_ != 0; }

  std::span<const Item> items() const noexcept { return {items_.data(), size()}; }
  Item operator[](std::size_t i) const noexcept { return items_[i]; }

  /// Reserves `n` consecutive slots with one atomic update; returns the
  /// first index. Throws WorklistOverflow if the slots do not fit.
  std::size_t reserve(std::size_t n) {
    std::size_t cur = cursor_.load(std::memory_order_relaxed);
    do {
      if (n > items_.size() - cur)
        throw WorklistOverflow("worklist overflow: need " + std::to_string(cur + n) +
                               " slots, capacity " + std::to_string(items_.size()));
    } while (!cursor_.compare_exchange_weak(cur, cur + n, std::memory_order_relaxed));
    return cur;
  }

  void write(std::size_t index, Item item) noexcept { items_[index] = item; }

  /// Sets the dedup flag for `v`; true if this call set it.
  bool claim(node_t v) noexcept {
    return flags_[v].exchange(1, std::memory_order_relaxed) == 0;
  }
  bool claimed(node_t v) const noexcept { return flags_ && flags_[v].load(std::memory_order_relaxed); }

  // Host-side operations below.

  /// Grows capacity geometrically (x2) until at least `needed`.
  void ensure_capacity(std::size_t needed) {
    if (needed <= items_.size()) return;
    std::size_t cap = std::max<std::size_t>(items_.size(), 1);
    while (cap < needed) cap *= 2;
    items_.resize(cap);
  }

  void push_back(Item item) {
    ensure_capacity(size() + 1);
    if constexpr (std::is_convertible_v<Item, node_t>)
      if (flags_) flags_[static_cast<node_t>(item)].store(1, std::memory_order_relaxed);
    items_[cursor_.load(std::memory_order_relaxed)] = item;
    cursor_.fetch_add(1, std::memory_order_release);
  }

  /// Empties the list and resets dedup flags of the items it held.
  void clear() noexcept {
    if (flags_)
      for (std::size_t i = 0, n = size(); i < n; ++i)
        flags_[static_cast<std::size_t>(items_[i])].store(0, std::memory_order_relaxed);
    cursor_.store(0, std::memory_order_release);
  }

  /// Replaces the contents (host-side).
  void assign(std::span<const Item> items) {
    clear();
    ensure_capacity(items.size());
    std::copy(items.begin(), items.end(), items_.begin());
    if (flags_)
      for (Item it : items) flags_[static_cast<std::size_t>(it)].store(1, std::memory_order_relaxed);
    cursor_.store(items.size(), std::memory_order_release);
  }

  void swap(Worklist& other) noexcept {
    items_.swap(other.items_);
    flags_.swap(other.flags_);
    std::swap(flag_count_, other.flag_count_);
    const auto a = cursor_.load(), b = other.cursor_.load();
    cursor_.store(b);
    other.cursor_.store(a);
  }

 private:
  std::vector<Item> items_;
  std::atomic<std::size_t> cursor_{0};
  std::unique_ptr<std::atomic<std::uint8_t>[]> flags_;
  std::size_t flag_count_ = 0;
};

// ---------------------------------------------------------------------------
// Atomic operations used by kernels
// ---------------------------------------------------------------------------

inline bool atomic_relax_min(DistArray& d, node_t node, dist_t candidate, KernelCounters& c) {
  c.relax_ops.fetch_add(1, std::memory_order_relaxed);
  return d.relax_min(node, candidate);
}

/// Appends a run of items with a single slot reservation. An empty run is a
/// no-op and costs no atomic.
template <class Item>
std::size_t wl_push_chunk(Worklist<Item>& wl, std::span<const Item> items, KernelCounters& c) {
  if (items.empty()) return wl.size();
  const std::size_t start = wl.reserve(items.size());
  c.push_ops.fetch_add(1, std::memory_order_relaxed);
  for (std::size_t i = 0; i < items.size(); ++i) wl.write(start + i, items[i]);
  return start;
}

/// Appends [first, first + count) as one chunk.
template <class Item>
std::size_t wl_push_range(Worklist<Item>& wl, Item first, std::size_t count, KernelCounters& c) {
  if (count == 0) return wl.size();
  const std::size_t start = wl.reserve(count);
  c.push_ops.fetch_add(1, std::memory_order_relaxed);
  for (std::size_t i = 0; i < count; ++i) wl.write(start + i, static_cast<Item>(first + i));
  return start;
}

/// Pushes node `v` unless it is already in the list.
inline bool wl_push_unique(Worklist<node_t>& wl, node_t v, KernelCounters& c) {
  if (!wl.claim(v)) return false;
  const std::size_t slot = wl.reserve(1);
  c.push_ops.fetch_add(1, std::memory_order_relaxed);
  wl.write(slot, v);
  return true;
}

/// Stable duplicate removal: keeps the first occurrence of each item.
/// Items must lie in [0, universe).
template <class Item>
std::vector<Item> condense(std::span<const Item> items, std::size_t universe) {
  std::vector<bool> seen(universe, false);
  std::vector<Item> out;
  out.reserve(items.size());
  for (Item it : items) {
    const auto k = static_cast<std::size_t>(it);
    if (k >= universe) throw PreconditionError("worklist item outside universe");
    if (!seen[k]) {
      seen[k] = true;
      out.push_back(it);
    }
  }
  return out;
}

/// Condenses a worklist in place; returns its new size.
template <class Item>
std::size_t wl_condense(Worklist<Item>& wl, std::size_t universe) {
  auto kept = condense<Item>(wl.items(), universe);
  wl.assign(kept);
  return kept.size();
}

// ---------------------------------------------------------------------------
// Lanes and kernel launch
// ---------------------------------------------------------------------------

/// Persistent pool of execution lanes. Lane 0 is the calling thread.
class LanePool {
 public:
  explicit LanePool(std::size_t lanes) : lanes_(std::max<std::size_t>(lanes, 1)) {
    for (std::size_t lane = 1; lane < lanes_; ++lane)
      threads_.emplace_back([this, lane] { worker(lane); });
  }
  ~LanePool() {
    {
      std::lock_guard lock(mu_);
      stop_ = true;
    }
    start_cv_.notify_all();
  }
  LanePool(const LanePool&) = delete;
  LanePool& operator=(const LanePool&) = delete;

  std::size_t lanes() const noexcept { return lanes_; }

  /// Runs fn(lane) on every lane and waits for all of them. fn must not throw.
  void run(const std::function<void(std::size_t)>& fn) {
    if (lanes_ == 1) {
      fn(0);
      return;
    }
    {
      std::lock_guard lock(mu_);
      job_ = &fn;
      pending_ = lanes_ - 1;
      ++generation_;
    }
    start_cv_.notify_all();
    fn(0);
    std::unique_lock lock(mu_);
    done_cv_.wait(lock, [this] { return pending_ == 0; });
    job_ = nullptr;
  }

 private:
  void worker(std::size_t lane) {
    std::uint64_t seen = 0;
    for (;;) {
      const std::function<void(std::size_t)>* job;
      {
        std::unique_lock lock(mu_);
        start_cv_.wait(lock, [&] { return stop_ || generation_ != seen; });
        if (stop_) return;
        seen = generation_;
        job = job_;
      }
      (*job)(lane);
      {
        std::lock_guard lock(mu_);
        --pending_;
      }
      done_cv_.notify_one();
    }
  }

  std::size_t lanes_;
  std::mutex mu_;
  std::condition_variable start_cv_, done_cv_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::uint64_t generation_ = 0;
  std::size_t pending_ = 0;
  bool stop_ = false;
  std::vector<std::jthread> threads_;  // last: joined before the rest is destroyed
};

/// Per-virtual-thread view handed to kernel bodies.
class ThreadContext {
 public:
  ThreadContext(std::size_t tid, std::size_t num_threads, std::uint64_t& work, KernelCounters& c)
      : tid_(tid), num_threads_(num_threads), work_(work), counters_(c) {}

  std::size_t tid() const noexcept { return tid_; }
  std::size_t num_threads() const noexcept { return num_threads_; }
  /// Records edge relaxations attempted by this thread.
  void add_work(std::uint64_t n = 1) noexcept { work_ += n; }
  KernelCounters& counters() noexcept { return counters_; }

  bool relax(DistArray& d, node_t v, dist_t candidate) { return atomic_relax_min(d, v, candidate, counters_); }
  bool push_unique(Worklist<node_t>& wl, node_t v) { return wl_push_unique(wl, v, counters_); }
  template <class Item>
  std::size_t push(Worklist<Item>& wl, std::span<const Item> items) { return wl_push_chunk(wl, items, counters_); }
  template <class Item>
  std::size_t push_range(Worklist<Item>& wl, Item first, std::size_t count) {
    return wl_push_range(wl, first, count, counters_);
  }

 private:
  std::size_t tid_;
  std::size_t num_threads_;
  std::uint64_t& work_;
  KernelCounters& counters_;
};

/**
 * Host-side emulation of a kernel launch: runs a body once per virtual
 * thread id over the configured lanes, with a barrier at the end.
 */
class Engine {
 public:
  explicit Engine(KernelConfig cfg = {}) : cfg_((cfg.validate(), cfg)), pool_(cfg.deterministic_replay ? 1 : cfg.workers) {
    if (cfg_.schedule_seed) schedule_rng_.seed(*cfg_.schedule_seed);
  }

  const KernelConfig& config() const noexcept { return cfg_; }
  std::size_t lanes() const noexcept { return pool_.lanes(); }
  LanePool& pool() noexcept { return pool_; }

  template <class Body>
  MetricsRecord launch(std::size_t threads, Body&& body) {
    if (threads == 0) throw ConfigError("kernel launch needs at least one virtual thread");
    MetricsRecord rec;
    rec.per_thread_work.assign(threads, 0);
    KernelCounters counters;

    std::vector<std::size_t> order;
    if (cfg_.schedule_seed && !cfg_.deterministic_replay) {
      order.resize(threads);
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), schedule_rng_);
    }

    std::atomic<bool> failed{false};
    std::mutex fail_mu;
    std::size_t fail_tid = 0;
    std::string fail_what;
    auto run_one = [&](std::size_t tid) {
      ThreadContext ctx(tid, threads, rec.per_thread_work[tid], counters);
      try {
        body(ctx);
      } catch (const std::exception& e) {
        std::lock_guard lock(fail_mu);
        if (!failed.exchange(true) || tid < fail_tid) {
          fail_tid = tid;
          fail_what = e.what();
        }
      } catch (...) {
        std::lock_guard lock(fail_mu);
        if (!failed.exchange(true) || tid < fail_tid) {
          fail_tid = tid;
          fail_what = "unknown exception";
        }
      }
    };
    auto tid_at = [&](std::size_t i) { return order.empty() ? i : order[i]; };

    Stopwatch sw;
    if (pool_.lanes() == 1) {
      for (std::size_t i = 0; i < threads && !failed.load(std::memory_order_relaxed); ++i) run_one(tid_at(i));
    } else {
      std::atomic<std::size_t> next{0};
      const std::size_t grain = std::max<std::size_t>(1, threads / (pool_.lanes() * 8));
      pool_.run([&](std::size_t) {
        for (;;) {
          if (failed.load(std::memory_order_relaxed)) return;
          const std::size_t begin = next.fetch_add(grain, std::memory_order_relaxed);
          if (begin >= threads) return;
          const std::size_t end = std::min(threads, begin + grain);
          for (std::size_t i = begin; i < end; ++i) run_one(tid_at(i));
        }
      });
    }
    rec.kernel_wall_time = sw.elapsed();
    if (failed) throw LaunchError(fail_tid, fail_what);
    rec.atomic_relax_ops = counters.relax_ops.load();
    rec.atomic_push_ops = counters.push_ops.load();
    return rec;
  }

 private:
  KernelConfig cfg_;
  LanePool pool_;
  std::mt19937_64 schedule_rng_;
};

/// One-off launch with a temporary engine.
template <class Body>
MetricsRecord launch_kernel(const KernelConfig& cfg, Body&& body) {
  Engine engine(cfg);
  return engine.launch(cfg.threads_for(0), std::forward<Body>(body));
}

// ---------------------------------------------------------------------------
// Inclusive scan
// ---------------------------------------------------------------------------

namespace detail {
inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticError("inclusive_scan overflow");
  return r;
}
}  // namespace detail

/// out[i] = values[0] + ... + values[i], computed blockwise across lanes.
inline std::vector<std::uint64_t> inclusive_scan(std::span<const std::uint64_t> values, LanePool& pool) {
  const std::size_t n = values.size();
  std::vector<std::uint64_t> out(n);
  if (n == 0) return out;
  const std::size_t lanes = std::min(pool.lanes(), n);
  const std::size_t block = (n + lanes - 1) / lanes;
  std::vector<std::uint64_t> block_sum(lanes, 0);
  std::vector<char> overflow(lanes, 0);

  pool.run([&](std::size_t lane) {
    if (lane >= lanes) return;
    const std::size_t lo = lane * block, hi = std::min(n, lo + block);
    std::uint64_t s = 0;
    for (std::size_t i = lo; i < hi; ++i)
      if (__builtin_add_overflow(s, values[i], &s)) {
        overflow[lane] = 1;
        return;
      }
    block_sum[lane] = s;
  });
  if (std::find(overflow.begin(), overflow.end(), 1) != overflow.end())
    throw ArithmeticError("inclusive_scan overflow");

  std::vector<std::uint64_t> offset(lanes, 0);
  for (std::size_t b = 1; b < lanes; ++b) offset[b] = detail::checked_add(offset[b - 1], block_sum[b - 1]);
  detail::checked_add(offset[lanes - 1], block_sum[lanes - 1]);

  pool.run([&](std::size_t lane) {
    if (lane >= lanes) return;
    const std::size_t lo = lane * block, hi = std::min(n, lo + block);
    std::uint64_t s = offset[lane];
    for (std::size_t i = lo; i < hi; ++i) out[i] = s += values[i];
  });
  return out;
}

inline std::vector<std::uint64_t> inclusive_scan(std::span<const std::uint64_t> values) {
  LanePool single(1);
  return inclusive_scan(values, single);
}

}  // namespace lbg
