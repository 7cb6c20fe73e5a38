#pragma once
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "louvainsplit/parallel.hpp"

namespace louvainsplit {

using VertexId    = std::uint32_t;
using CommunityId = std::uint32_t;
using Weight      = double;

/// Community label per vertex; index = vertex id.
using Membership = std::vector<CommunityId>;

/// One undirected edge as given by a loader or generator.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Weight   w = 1.0;
};

/// Raised when an input file cannot be parsed as a graph.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/**
 * Immutable weighted undirected graph in CSR form.
 *
 * Every undirected edge {u, v} with u != v is stored as the two arcs
 * (u, v, w) and (v, u, w); a self-loop is stored as a single arc. Neighbor
 * lists are sorted by target id. totalWeight() is the sum of all stored arc
 * weights (2m), accumulated per vertex in ascending order so that it matches
 * the sum of vertexWeights() bit for bit.
 */
class Graph {
 public:
  Graph() = default;

  /// Builds a graph from undirected edges. Duplicate entries for the same
  /// unordered pair are merged by summing their weights.
  static Graph fromEdges(VertexId num_vertices, std::vector<Edge> edges) {
    if (num_vertices == 0) throw std::invalid_argument("graph must have at least one vertex");
    for (const Edge& e : edges) {
      if (e.u >= num_vertices || e.v >= num_vertices)
        throw std::invalid_argument("edge endpoint " + std::to_string(std::max(e.u, e.v)) +
                                    " out of range [0, " + std::to_string(num_vertices) + ")");
      if (!(e.w > 0.0) || !std::isfinite(e.w))
        throw std::invalid_argument("edge weights must be strictly positive and finite");
    }
    // Merge duplicates of the same unordered pair.
    for (Edge& e : edges)
      if (e.u > e.v) std::swap(e.u, e.v);
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
      return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::size_t n = 0;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (n > 0 && edges[n - 1].u == edges[i].u && edges[n - 1].v == edges[i].v)
        edges[n - 1].w += edges[i].w;
      else
        edges[n++] = edges[i];
    }
    edges.resize(n);

    Graph g;
    g.num_vertices_ = num_vertices;
    std::vector<std::size_t> degree(num_vertices, 0);
    for (const Edge& e : edges) {
      ++degree[e.u];
      if (e.u != e.v) ++degree[e.v];
    }
    g.offsets_.assign(num_vertices + 1, 0);
    for (VertexId i = 0; i < num_vertices; ++i) g.offsets_[i + 1] = g.offsets_[i] + degree[i];
    g.targets_.resize(g.offsets_[num_vertices]);
    g.weights_.resize(g.offsets_[num_vertices]);
    std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : edges) {
      g.targets_[cursor[e.u]] = e.v;
      g.weights_[cursor[e.u]] = e.w;
      ++cursor[e.u];
      if (e.u != e.v) {
        g.targets_[cursor[e.v]] = e.u;
        g.weights_[cursor[e.v]] = e.w;
        ++cursor[e.v];
      }
    }
    g.sortAdjacency();
    g.total_weight_ = g.groupedWeightSum();
    return g;
  }

  /// Builds a graph directly from per-vertex arc lists laid out in CSR order,
  /// sorting each adjacency and recomputing the total weight. The caller is
  /// responsible for the symmetry invariant; the aggregation phase and a few
  /// tests use this to construct graphs arc-by-arc.
  static Graph fromCsr(VertexId num_vertices, std::vector<std::size_t> offsets,
                       std::vector<VertexId> targets, std::vector<Weight> weights) {
    Graph g;
    g.num_vertices_ = num_vertices;
    g.offsets_ = std::move(offsets);
    g.targets_ = std::move(targets);
    g.weights_ = std::move(weights);
    g.sortAdjacency();
    g.total_weight_ = g.groupedWeightSum();
    return g;
  }

  VertexId numVertices() const { return num_vertices_; }
  std::size_t numArcs() const { return targets_.size(); }
  Weight totalWeight() const { return total_weight_; }

  std::size_t degree(VertexId i) const { return offsets_[i + 1] - offsets_[i]; }

  std::span<const VertexId> neighbors(VertexId i) const {
    return {targets_.data() + offsets_[i], targets_.data() + offsets_[i + 1]};
  }
  std::span<const Weight> arcWeights(VertexId i) const {
    return {weights_.data() + offsets_[i], weights_.data() + offsets_[i + 1]};
  }

  /// Calls f(j, w) for every arc (i, j, w).
  template <class F>
  void forEachArc(VertexId i, F&& f) const {
    for (std::size_t a = offsets_[i]; a < offsets_[i + 1]; ++a) f(targets_[a], weights_[a]);
  }

  const std::vector<std::size_t>& offsets() const { return offsets_; }
  const std::vector<VertexId>& targets() const { return targets_; }
  const std::vector<Weight>& weights() const { return weights_; }

  bool operator==(const Graph& other) const = default;

 private:
  void sortAdjacency() {
    std::vector<std::pair<VertexId, Weight>> row;
    for (VertexId i = 0; i < num_vertices_; ++i) {
      std::size_t lo = offsets_[i], hi = offsets_[i + 1];
      if (std::is_sorted(targets_.begin() + lo, targets_.begin() + hi)) continue;
      row.clear();
      for (std::size_t a = lo; a < hi; ++a) row.emplace_back(targets_[a], weights_[a]);
      std::sort(row.begin(), row.end());
      for (std::size_t a = lo; a < hi; ++a) {
        targets_[a] = row[a - lo].first;
        weights_[a] = row[a - lo].second;
      }
    }
  }

  // Sum of arc weights grouped per vertex in ascending order; the reference
  // summation order for totalWeight() and vertexWeights().
  Weight groupedWeightSum() const {
    Weight total = 0.0;
    for (VertexId i = 0; i < num_vertices_; ++i) {
      Weight k = 0.0;
      for (std::size_t a = offsets_[i]; a < offsets_[i + 1]; ++a) k += weights_[a];
      total += k;
    }
    return total;
  }

  VertexId num_vertices_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<VertexId> targets_;
  std::vector<Weight> weights_;
  Weight total_weight_ = 0.0;
};

/// Checks that a membership covers every vertex of g with labels in [0, N).
/// Labels are used as array indices throughout, so this guards every
/// operation that accepts externally supplied memberships.
inline void validateMembership(const Graph& g, const Membership& membership) {
  if (membership.size() != g.numVertices())
    throw std::invalid_argument("membership length " + std::to_string(membership.size()) +
                                " does not match vertex count " +
                                std::to_string(g.numVertices()));
  for (CommunityId c : membership)
    if (c >= g.numVertices())
      throw std::invalid_argument("community label " + std::to_string(c) + " out of range [0, " +
                                  std::to_string(g.numVertices()) + ")");
}

/**
 * Weighted degree K_i of every vertex: the sum of the weights of all arcs
 * leaving i. Summed in ascending arc order per vertex, so the total over all
 * vertices reproduces totalWeight() exactly.
 */
inline std::vector<Weight> vertexWeights(const Graph& g, int workers = 0) {
  const VertexId n = g.numVertices();
  std::vector<Weight> k(n, 0.0);
  const int t = resolveWorkers(workers);
#pragma omp parallel for schedule(static) num_threads(t)
  for (VertexId i = 0; i < n; ++i) {
    Weight sum = 0.0;
    for (Weight w : g.arcWeights(i)) sum += w;
    k[i] = sum;
  }
  return k;
}

}  // namespace louvainsplit
