#pragma once
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "louvainsplit/bfs.hpp"
#include "louvainsplit/graph.hpp"
#include "louvainsplit/parallel.hpp"

namespace louvainsplit {

/// Chunk size of the per-worker community work-lists used by
/// disconnectedCommunities.
inline constexpr std::size_t kDetectionChunk = 1024;

/// Per-vertex (K) and per-community (Sigma) total edge weights.
struct CommunityWeights {
  std::vector<Weight> vertex_total;
  std::vector<Weight> community_total;
};

/// Disconnected indicator per community label. flags[c] is meaningful for
/// labels that occur in the membership; it is set only for communities whose
/// induced subgraph has two or more connected components.
struct DisconnectedFlags {
  std::vector<std::uint8_t> flags;
};

/**
 * Modularity of a clustering: sum over communities of
 * sigma_c / 2m - (Sigma_c / 2m)^2, where sigma_c counts stored arc weights
 * with both endpoints in c (an internal undirected edge contributes twice,
 * a self-loop once) and Sigma_c is the sum of member vertex weights.
 */
inline double modularity(const Graph& g, const Membership& membership, int workers = 0) {
  validateMembership(g, membership);
  const Weight two_m = g.totalWeight();
  if (two_m <= 0.0) throw std::invalid_argument("modularity undefined for total weight 0");
  const VertexId n = g.numVertices();
  const int t = resolveWorkers(workers);

  Weight intra = 0.0;  // sum of sigma_c over all communities
#pragma omp parallel for schedule(static) num_threads(t) reduction(+ : intra)
  for (VertexId i = 0; i < n; ++i) {
    const CommunityId c = membership[i];
    Weight local = 0.0;
    g.forEachArc(i, [&](VertexId j, Weight w) {
      if (membership[j] == c) local += w;
    });
    intra += local;
  }

  std::vector<Weight> k = vertexWeights(g, workers);
  std::vector<Weight> community_total(n, 0.0);
  for (VertexId i = 0; i < n; ++i) community_total[membership[i]] += k[i];

  double q = intra / two_m;
  for (VertexId c = 0; c < n; ++c) {
    const double frac = community_total[c] / two_m;
    q -= frac * frac;
  }
  return q;
}

/**
 * Change in modularity from moving vertex i out of community d into
 * community c. Sigma_d must still include K_i, Sigma_c must not, and the
 * vertex-to-community weights exclude self-loops of i.
 */
inline double deltaModularity(Weight k_i_to_c, Weight k_i_to_d, Weight k_i, Weight sigma_c,
                              Weight sigma_d, Weight m) {
  return (k_i_to_c - k_i_to_d) / m - k_i * (k_i + sigma_c - sigma_d) / (2.0 * m * m);
}

/// Number of member vertices per community label; indexed by label, summing
/// to the vertex count.
inline std::vector<VertexId> communitySizes(const Graph& g, const Membership& membership,
                                            int workers = 0) {
  validateMembership(g, membership);
  const VertexId n = g.numVertices();
  std::vector<VertexId> sizes(n, 0);
  const int t = resolveWorkers(workers);
#pragma omp parallel for schedule(static) num_threads(t)
  for (VertexId i = 0; i < n; ++i) {
    const CommunityId c = membership[i];
#pragma omp atomic
    ++sizes[c];
  }
  return sizes;
}

/**
 * Flags every community whose induced subgraph is internally disconnected.
 *
 * Communities are partitioned across workers in chunks of `chunk` labels;
 * the owning worker scans vertices in ascending order, BFS-walks the
 * community of the first member it encounters (restricted to that
 * community), and flags the community when the walk reaches fewer vertices
 * than its size. Visited flags are shared; distinct communities never touch
 * the same vertex, so the result is independent of worker count and chunk
 * size.
 */
inline DisconnectedFlags disconnectedCommunities(const Graph& g, const Membership& membership,
                                                 int workers = 0,
                                                 std::size_t chunk = kDetectionChunk) {
  if (chunk == 0) throw std::invalid_argument("chunk size must be positive");
  const VertexId n = g.numVertices();
  std::vector<VertexId> sizes = communitySizes(g, membership, workers);
  DisconnectedFlags result;
  result.flags.assign(n, 0);
  AtomicFlags visited(n, false);
  const int t = resolveWorkers(workers);

#pragma omp parallel num_threads(t)
  {
    const unsigned worker = static_cast<unsigned>(omp_get_thread_num());
    const unsigned total = static_cast<unsigned>(omp_get_num_threads());
    std::vector<VertexId> frontier;
    for (VertexId i = 0; i < n; ++i) {
      const CommunityId c = membership[i];
      if ((c / chunk) % total != worker) continue;
      if (sizes[c] == 0) continue;  // empty or already processed
      VertexId reached = 0;
      bfsVisitForEach(
          visited, g, i, [&](VertexId j) { return membership[j] == c; },
          [&](VertexId) { ++reached; }, frontier);
      if (reached < sizes[c]) result.flags[c] = 1;
      sizes[c] = 0;
    }
  }
  return result;
}

/// Fraction of non-empty communities flagged as disconnected.
inline double disconnectedFraction(const DisconnectedFlags& flags, std::size_t num_communities) {
  if (num_communities == 0) throw std::invalid_argument("no communities");
  std::size_t count = 0;
  for (std::uint8_t f : flags.flags) count += f;
  return static_cast<double>(count) / static_cast<double>(num_communities);
}

}  // namespace louvainsplit
