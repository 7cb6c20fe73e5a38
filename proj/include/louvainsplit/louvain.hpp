#pragma once
#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "louvainsplit/graph.hpp"
#include "louvainsplit/parallel.hpp"
#include "louvainsplit/quality.hpp"
#include "louvainsplit/split.hpp"

namespace louvainsplit {

/// Tuning knobs of the detection driver. Defaults follow the usual
/// shared-memory Louvain settings; all of them are exposed as CLI flags.
struct LouvainParams {
  double tolerance = 1e-2;             // per-iteration total delta-modularity threshold
  double tolerance_drop = 10.0;        // divisor applied to tolerance after each pass
  double aggregation_tolerance = 0.8;  // stop when |communities| / |vertices| exceeds this
  int max_passes = 10;
  int max_iterations = 20;  // per pass
  SplitConfig split{};
  int workers = 0;  // 0 = all hardware threads

  void validate() const {
    if (tolerance < 0) throw std::invalid_argument("tolerance must be >= 0");
    if (tolerance_drop <= 1) throw std::invalid_argument("tolerance-drop must be > 1");
    if (aggregation_tolerance <= 0 || aggregation_tolerance > 1)
      throw std::invalid_argument("aggregation tolerance must be in (0, 1]");
    if (max_passes < 1) throw std::invalid_argument("max passes must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("max iterations must be >= 1");
    if (workers < 0) throw std::invalid_argument("workers must be >= 0 (0 = hardware)");
  }
};

/// Timing and convergence record of one pass.
struct PassStats {
  int pass = 0;
  int iterations = 0;
  double local_moving_s = 0.0;
  double splitting_s = 0.0;
  double aggregation_s = 0.0;
  double other_s = 0.0;
  std::size_t num_communities = 0;
  double modularity = std::numeric_limits<double>::quiet_NaN();  // on the original graph
};

/// Summary of one detection run.
struct DetectionReport {
  double modularity = std::numeric_limits<double>::quiet_NaN();  // NaN when total weight is 0
  std::size_t num_communities = 0;
  double disconnected_fraction = 0.0;
  int passes = 0;
  std::vector<PassStats> pass_stats;
  double total_runtime_s = 0.0;
  int workers = 0;
  LouvainParams params;
};

struct DetectionResult {
  Membership membership;
  DetectionReport report;
};

/**
 * Collision-free map from community id to accumulated edge weight.
 *
 * A dense weight array indexed by community id plus the list of touched ids,
 * so clearing costs O(touched). One instance per worker; never shared.
 */
class ScanAccumulator {
 public:
  explicit ScanAccumulator(std::size_t capacity = 0) : weight_(capacity, 0.0) {}

  void reset(std::size_t capacity) {
    weight_.assign(capacity, 0.0);
    touched_.clear();
  }

  void clear() {
    for (CommunityId c : touched_) weight_[c] = 0.0;
    touched_.clear();
  }

  void add(CommunityId community, Weight w) {
    if (weight_[community] == 0.0) touched_.push_back(community);
    weight_[community] += w;
  }

  Weight weightTo(CommunityId community) const { return weight_[community]; }

  /// Touched community ids in first-touch order.
  std::span<const CommunityId> communities() const { return touched_; }

  std::size_t capacity() const { return weight_.size(); }

 private:
  std::vector<Weight> weight_;
  std::vector<CommunityId> touched_;
};

namespace detail {

// Relaxed atomic views over shared label and weight cells. The local-moving
// phase lets workers observe stale labels and community weights by design;
// these keep that well-defined without ordering cost.
inline CommunityId loadLabel(const Membership& m, VertexId i) {
  return std::atomic_ref<const CommunityId>(m[i]).load(std::memory_order_relaxed);
}
inline void storeLabel(Membership& m, VertexId i, CommunityId c) {
  std::atomic_ref<CommunityId>(m[i]).store(c, std::memory_order_relaxed);
}
inline Weight loadWeight(const std::vector<Weight>& w, CommunityId c) {
  return std::atomic_ref<const Weight>(w[c]).load(std::memory_order_relaxed);
}
inline void addWeight(std::vector<Weight>& w, CommunityId c, Weight delta) {
  std::atomic_ref<Weight>(w[c]).fetch_add(delta, std::memory_order_relaxed);
}

}  // namespace detail

/// Accumulates into h, per community of j, the weights of all arcs (i, j).
/// Self-arcs of i are skipped unless include_self is set. Labels are read
/// with relaxed atomics so the scan may run while another worker moves j.
inline void scanCommunities(ScanAccumulator& h, const Graph& g, const Membership& membership,
                            VertexId i, bool include_self) {
  g.forEachArc(i, [&](VertexId j, Weight w) {
    if (!include_self && j == i) return;
    h.add(detail::loadLabel(membership, j), w);
  });
}

/**
 * Local-moving phase: greedily reassigns vertices to the neighbor community
 * with the highest modularity gain until an iteration's total gain drops to
 * the tolerance or the iteration cap is hit.
 *
 * membership and community_total are updated in place; community_total
 * updates are atomic while labels may be read stale by concurrent workers
 * (asynchronous Louvain semantics). Vertices start unprocessed, are pruned
 * once scanned, and are reactivated when a neighbor moves. Returns the
 * number of iterations performed (at least 1).
 */
inline int louvainMove(const Graph& g, Membership& membership,
                       const std::vector<Weight>& vertex_total,
                       std::vector<Weight>& community_total, double tolerance,
                       int max_iterations = 20, int workers = 0) {
  const VertexId n = g.numVertices();
  const Weight m = g.totalWeight() / 2.0;
  const int t = resolveWorkers(workers);
  AtomicFlags unprocessed(n, true);
  std::vector<ScanAccumulator> scratch(t, ScanAccumulator(n));

  int iterations = 0;
  while (iterations < max_iterations) {
    double gain = 0.0;
#pragma omp parallel for schedule(dynamic, 2048) num_threads(t) reduction(+ : gain)
    for (VertexId i = 0; i < n; ++i) {
      if (!unprocessed.get(i)) continue;
      unprocessed.clear(i);  // vertex pruning
      ScanAccumulator& h = scratch[omp_get_thread_num()];
      h.clear();
      scanCommunities(h, g, membership, i, false);
      const CommunityId d = detail::loadLabel(membership, i);
      CommunityId best = d;
      double best_gain = 0.0;
      const Weight k_i = vertex_total[i];
      const Weight k_i_to_d = h.weightTo(d);
      const Weight sigma_d = detail::loadWeight(community_total, d);
      for (CommunityId c : h.communities()) {
        if (c == d) continue;
        const double delta = deltaModularity(h.weightTo(c), k_i_to_d, k_i,
                                             detail::loadWeight(community_total, c), sigma_d, m);
        if (delta > best_gain) {
          best_gain = delta;
          best = c;
        }
      }
      if (best == d) continue;
      detail::addWeight(community_total, d, -k_i);
      detail::addWeight(community_total, best, k_i);
      detail::storeLabel(membership, i, best);
      gain += best_gain;
      g.forEachArc(i, [&](VertexId j, Weight) { unprocessed.set(j); });
    }
    ++iterations;
    if (gain <= tolerance) break;
  }
  return iterations;
}

/// Maps community labels (arbitrary values) to a contiguous range
/// [0, count) in first-appearance order by ascending vertex id.
/// Partition-preserving.
inline std::pair<Membership, std::size_t> renumberCommunities(const Membership& membership) {
  std::unordered_map<CommunityId, CommunityId> rename;
  rename.reserve(membership.size());
  Membership result(membership.size());
  CommunityId next = 0;
  for (std::size_t i = 0; i < membership.size(); ++i) {
    auto [it, inserted] = rename.try_emplace(membership[i], next);
    if (inserted) ++next;
    result[i] = it->second;
  }
  return {std::move(result), static_cast<std::size_t>(next)};
}

/// Composes memberships across an aggregation level: result[i] =
/// super_membership[membership[i]].
inline Membership lookupDendrogram(const Membership& membership,
                                   const Membership& super_membership) {
  Membership result(membership.size());
  for (std::size_t i = 0; i < membership.size(); ++i) {
    if (membership[i] >= super_membership.size())
      throw std::invalid_argument("membership label out of range of super-membership");
    result[i] = super_membership[membership[i]];
  }
  return result;
}

/**
 * Aggregation phase: collapses every community into a super-vertex.
 *
 * Expects contiguous community labels. Builds the member lists per community
 * with a counting pass and exclusive scan, bounds each super-vertex's degree
 * by its community's total degree, then has one worker per community
 * accumulate incident communities (self included) and emit the arcs. All
 * intra-community weight, including original self-loops, becomes the
 * super-vertex's self-loop, so total weight is preserved.
 */
inline Graph louvainAggregate(const Graph& g, const Membership& membership, int workers = 0) {
  validateMembership(g, membership);
  const VertexId n = g.numVertices();
  const int t = resolveWorkers(workers);
  std::size_t num_communities = 0;
  {
    // Contiguity: the used labels must be exactly [0, first unused label).
    std::vector<std::uint8_t> seen(n, 0);
    for (CommunityId c : membership) seen[c] = 1;
    while (num_communities < n && seen[num_communities]) ++num_communities;
    for (CommunityId c : membership)
      if (c >= num_communities) throw std::invalid_argument("community labels must be contiguous");
  }
  const VertexId nc = static_cast<VertexId>(num_communities);

  // Community-membership CSR: counting, exclusive scan, atomic placement.
  std::vector<std::size_t> member_offsets(nc + 1, 0);
  for (CommunityId c : membership) ++member_offsets[c + 1];
  for (VertexId c = 0; c < nc; ++c) member_offsets[c + 1] += member_offsets[c];
  std::vector<VertexId> members(n);
  {
    std::vector<std::size_t> cursor(member_offsets.begin(), member_offsets.end() - 1);
#pragma omp parallel for schedule(static) num_threads(t)
    for (VertexId i = 0; i < n; ++i) {
      const CommunityId c = membership[i];
      std::size_t slot;
#pragma omp atomic capture
      slot = cursor[c]++;
      members[slot] = i;
    }
  }

  // Super-vertex degree bound: total degree of each community.
  std::vector<std::size_t> arc_bound(nc + 1, 0);
  for (VertexId i = 0; i < n; ++i) arc_bound[membership[i] + 1] += g.degree(i);
  for (VertexId c = 0; c < nc; ++c) arc_bound[c + 1] += arc_bound[c];

  std::vector<VertexId> arc_targets(arc_bound[nc]);
  std::vector<Weight> arc_weights(arc_bound[nc]);
  std::vector<std::size_t> arc_count(nc, 0);
  std::vector<ScanAccumulator> scratch(t, ScanAccumulator(nc));

#pragma omp parallel for schedule(dynamic, 512) num_threads(t)
  for (VertexId c = 0; c < nc; ++c) {
    ScanAccumulator& h = scratch[omp_get_thread_num()];
    h.clear();
    for (std::size_t s = member_offsets[c]; s < member_offsets[c + 1]; ++s)
      scanCommunities(h, g, membership, members[s], true);
    std::size_t out = arc_bound[c];
    for (CommunityId d : h.communities()) {
      arc_targets[out] = d;
      arc_weights[out] = h.weightTo(d);
      ++out;
    }
    arc_count[c] = out - arc_bound[c];
  }

  // Compact the sparse slices into a dense CSR.
  std::vector<std::size_t> offsets(nc + 1, 0);
  for (VertexId c = 0; c < nc; ++c) offsets[c + 1] = offsets[c] + arc_count[c];
  std::vector<VertexId> targets(offsets[nc]);
  std::vector<Weight> weights(offsets[nc]);
#pragma omp parallel for schedule(static) num_threads(t)
  for (VertexId c = 0; c < nc; ++c) {
    std::size_t src = arc_bound[c];
    for (std::size_t dst = offsets[c]; dst < offsets[c + 1]; ++dst, ++src) {
      targets[dst] = arc_targets[src];
      weights[dst] = arc_weights[src];
    }
  }
  return Graph::fromCsr(nc, std::move(offsets), std::move(targets), std::move(weights));
}

namespace detail {

inline double secondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

inline std::size_t countDistinctLabels(const Membership& membership, std::size_t span) {
  std::vector<std::uint8_t> seen(span, 0);
  std::size_t count = 0;
  for (CommunityId c : membership) {
    if (!seen[c]) {
      seen[c] = 1;
      ++count;
    }
  }
  return count;
}

}  // namespace detail

/**
 * Community detection driver: repeated local-moving and aggregation passes
 * with threshold scaling, optionally splitting internally-disconnected
 * communities after the local-moving phase of each pass (SplitPass) or once
 * at the end (SplitLast).
 *
 * Returns the final membership with contiguous labels plus a report carrying
 * modularity, community count, per-pass phase timings, the per-pass
 * modularity trace on the original graph, and the disconnected fraction of
 * the result. On a graph with no edges the membership is the singleton
 * partition and modularity is NaN.
 */
inline DetectionResult louvain(const Graph& g, const LouvainParams& params) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  const VertexId n = g.numVertices();
  const int t = resolveWorkers(params.workers);

  DetectionReport report;
  report.params = params;
  report.workers = t;

  Membership top(n);
  for (VertexId i = 0; i < n; ++i) top[i] = i;

  if (g.totalWeight() <= 0.0) {
    report.num_communities = n;
    report.total_runtime_s = detail::secondsSince(start);
    report.disconnected_fraction = 0.0;
    return {std::move(top), std::move(report)};
  }

  Graph owned;                  // aggregated graph storage from pass 2 on
  const Graph* current = &g;    // super-vertex graph of the running pass
  Membership local;             // membership of *current
  bool local_folded = true;     // whether `top` already includes `local`
  double tolerance = params.tolerance;

  for (int pass = 0; pass < params.max_passes; ++pass) {
    const auto pass_start = std::chrono::steady_clock::now();
    PassStats stats;
    stats.pass = pass;

    const VertexId nv = current->numVertices();
    CommunityWeights weights;
    weights.vertex_total = vertexWeights(*current, t);
    weights.community_total = weights.vertex_total;  // singleton start: Sigma' = K'
    local.resize(nv);
    for (VertexId i = 0; i < nv; ++i) local[i] = i;
    local_folded = false;

    const auto move_start = std::chrono::steady_clock::now();
    stats.iterations = louvainMove(*current, local, weights.vertex_total,
                                   weights.community_total, tolerance, params.max_iterations, t);
    stats.local_moving_s = detail::secondsSince(move_start);

    if (params.split.mode == SplitMode::SplitPass) {
      const auto split_start = std::chrono::steady_clock::now();
      local = splitDisconnected(*current, local, params.split.technique, t);
      stats.splitting_s = detail::secondsSince(split_start);
    }

    stats.num_communities = detail::countDistinctLabels(local, nv);
    stats.modularity = modularity(g, lookupDendrogram(top, local), t);

    const bool converged = stats.iterations <= 1;
    const bool low_shrink =
        static_cast<double>(stats.num_communities) / static_cast<double>(nv) >
        params.aggregation_tolerance;

    if (converged || low_shrink) {
      stats.other_s = std::max(0.0, detail::secondsSince(pass_start) - stats.local_moving_s -
                                        stats.splitting_s - stats.aggregation_s);
      report.pass_stats.push_back(stats);
      break;
    }

    local = renumberCommunities(local).first;
    top = lookupDendrogram(top, local);
    local_folded = true;

    const auto agg_start = std::chrono::steady_clock::now();
    owned = louvainAggregate(*current, local, t);
    stats.aggregation_s = detail::secondsSince(agg_start);
    current = &owned;
    tolerance /= params.tolerance_drop;

    stats.other_s = std::max(0.0, detail::secondsSince(pass_start) - stats.local_moving_s -
                                      stats.splitting_s - stats.aggregation_s);
    report.pass_stats.push_back(stats);
  }

  if (!local_folded) top = lookupDendrogram(top, local);

  if (params.split.mode == SplitMode::SplitLast) {
    const auto split_start = std::chrono::steady_clock::now();
    top = splitDisconnected(g, top, params.split.technique, t);
    if (!report.pass_stats.empty())
      report.pass_stats.back().splitting_s += detail::secondsSince(split_start);
  }

  auto [final_membership, num_communities] = renumberCommunities(top);
  report.passes = static_cast<int>(report.pass_stats.size());
  report.num_communities = num_communities;
  report.total_runtime_s = detail::secondsSince(start);

  report.modularity = modularity(g, final_membership, t);
  DisconnectedFlags flags = disconnectedCommunities(g, final_membership, t);
  report.disconnected_fraction = disconnectedFraction(flags, num_communities);
  return {std::move(final_membership), std::move(report)};
}

}  // namespace louvainsplit
