#pragma once
#include <atomic>
#include <memory>
#include <stdexcept>
#include <unordered_map>
#include <string>
#include <vector>

#include "louvainsplit/bfs.hpp"
#include "louvainsplit/graph.hpp"
#include "louvainsplit/parallel.hpp"

namespace louvainsplit {

enum class SplitTechnique { Lp, Lpp, Bfs };

enum class SplitMode {
  None,       // leave disconnected communities alone
  SplitLast,  // split once after detection has converged
  SplitPass,  // split after the local-moving phase of every pass
};

struct SplitConfig {
  SplitTechnique technique = SplitTechnique::Bfs;
  SplitMode mode = SplitMode::None;
};

/**
 * Splits internally-disconnected communities by minimum-label propagation.
 *
 * Every vertex starts with its own id as label; each sweep lowers a vertex's
 * label to the minimum among itself and its same-community neighbors, until a
 * sweep changes nothing. The result labels each community-restricted
 * connected component with its minimum member id, so the output refines the
 * input partition and every output community is connected. With pruning
 * enabled, settled vertices are skipped until a same-community neighbor
 * changes its label (identical result, fewer vertex visits).
 *
 * Labels only ever decrease, so concurrent sweeps may read stale values
 * without affecting the fixpoint. If iterations_out is given it receives the
 * number of sweeps performed, including the final no-change sweep.
 */
inline Membership splitDisconnectedLp(const Graph& g, const Membership& membership, bool pruning,
                                      int workers = 0, int* iterations_out = nullptr) {
  validateMembership(g, membership);
  const VertexId n = g.numVertices();
  const int t = resolveWorkers(workers);
  auto labels = std::make_unique<std::atomic<CommunityId>[]>(n);
  AtomicFlags processed(n, false);
#pragma omp parallel for schedule(static) num_threads(t)
  for (VertexId i = 0; i < n; ++i) labels[i].store(i, std::memory_order_relaxed);

  int sweeps = 0;
  while (true) {
    std::size_t changed = 0;
    ++sweeps;
#pragma omp parallel for schedule(dynamic, 2048) num_threads(t) reduction(+ : changed)
    for (VertexId i = 0; i < n; ++i) {
      if (pruning) {
        if (processed.get(i)) continue;
        processed.set(i);
      }
      const CommunityId c = membership[i];
      CommunityId best = labels[i].load(std::memory_order_relaxed);
      g.forEachArc(i, [&](VertexId j, Weight) {
        if (membership[j] != c) return;
        const CommunityId lj = labels[j].load(std::memory_order_relaxed);
        if (lj < best) best = lj;
      });
      if (best == labels[i].load(std::memory_order_relaxed)) continue;
      labels[i].store(best, std::memory_order_relaxed);
      ++changed;
      if (pruning) {
        g.forEachArc(i, [&](VertexId j, Weight) {
          if (membership[j] == c) processed.clear(j);
        });
      }
    }
    if (changed == 0) break;
  }
  if (iterations_out != nullptr) *iterations_out = sweeps;

  Membership result(n);
  for (VertexId i = 0; i < n; ++i) result[i] = labels[i].load(std::memory_order_relaxed);
  return result;
}

/**
 * Splits internally-disconnected communities by per-community BFS.
 *
 * Workers sweep the vertices; an unvisited vertex whose community is not
 * claimed by another worker is claimed through a compare-and-swap on the
 * community's busy flag, and a BFS restricted to that community relabels
 * every reached vertex with the start vertex's id. Sweeps repeat until all
 * vertices are visited, since a vertex can be passed over while its
 * community is busy. Output labels are member vertex ids (not necessarily
 * minima) but the induced partition is exactly the per-community connected
 * components, independent of scheduling.
 */
inline Membership splitDisconnectedBfs(const Graph& g, const Membership& membership,
                                       int workers = 0) {
  validateMembership(g, membership);
  const VertexId n = g.numVertices();
  const int t = resolveWorkers(workers);
  Membership labels(n);
  for (VertexId i = 0; i < n; ++i) labels[i] = i;
  AtomicFlags visited(n, false);
  auto busy = std::make_unique<std::atomic<std::uint8_t>[]>(n);
  for (VertexId c = 0; c < n; ++c) busy[c].store(0, std::memory_order_relaxed);

  while (true) {
#pragma omp parallel num_threads(t)
    {
      std::vector<VertexId> frontier;
      for (VertexId i = 0; i < n; ++i) {
        const CommunityId c = membership[i];
        if (visited.get(i) || busy[c].load(std::memory_order_relaxed) != 0) continue;
        std::uint8_t expected = 0;
        if (!busy[c].compare_exchange_strong(expected, 1, std::memory_order_acquire,
                                             std::memory_order_relaxed))
          continue;
        const CommunityId label = labels[i];  // == i while i is unvisited
        bfsVisitForEach(
            visited, g, i, [&](VertexId j) { return membership[j] == c; },
            [&](VertexId j) { labels[j] = label; }, frontier);
        busy[c].store(0, std::memory_order_release);
      }
    }
    bool done = true;
    for (VertexId i = 0; i < n; ++i)
      if (!visited.get(i)) {
        done = false;
        break;
      }
    if (done) break;
  }
  return labels;
}

inline Membership splitDisconnected(const Graph& g, const Membership& membership,
                                    SplitTechnique technique, int workers = 0) {
  switch (technique) {
    case SplitTechnique::Lp: return splitDisconnectedLp(g, membership, false, workers);
    case SplitTechnique::Lpp: return splitDisconnectedLp(g, membership, true, workers);
    case SplitTechnique::Bfs: return splitDisconnectedBfs(g, membership, workers);
  }
  throw std::invalid_argument("unknown split technique");
}

/// Relabels every community to the minimum vertex id it contains. Labels may
/// be arbitrary values; equal partitions map to equal label vectors, which
/// makes outputs of the different split techniques directly comparable.
/// Idempotent.
inline Membership canonicalizePartition(const Membership& membership) {
  const std::size_t n = membership.size();
  std::unordered_map<CommunityId, CommunityId> min_member;
  min_member.reserve(n);
  for (std::size_t i = n; i-- > 0;) min_member[membership[i]] = static_cast<CommunityId>(i);
  Membership result(n);
  for (std::size_t i = 0; i < n; ++i) result[i] = min_member[membership[i]];
  return result;
}

}  // namespace louvainsplit
