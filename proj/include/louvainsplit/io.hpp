#pragma once
#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "louvainsplit/graph.hpp"

namespace louvainsplit {

namespace detail {

/// One parsed entry, still directional as written in the file.
struct RawArc {
  VertexId u, v;
  Weight w;
};

inline std::string lowercase(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

/**
 * Turns directed file entries into a canonical undirected edge list.
 *
 * Entries repeated in the same direction are merged by summing. A pair given
 * in both directions must carry the same weight and becomes a single
 * undirected edge with that weight; differing weights are rejected since the
 * graph model has no directed semantics to preserve them.
 */
inline std::vector<Edge> mergeDirectedArcs(std::vector<RawArc> arcs) {
  std::sort(arcs.begin(), arcs.end(), [](const RawArc& a, const RawArc& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  std::size_t n = 0;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (n > 0 && arcs[n - 1].u == arcs[i].u && arcs[n - 1].v == arcs[i].v)
      arcs[n - 1].w += arcs[i].w;
    else
      arcs[n++] = arcs[i];
  }
  arcs.resize(n);

  auto findArc = [&](VertexId u, VertexId v) -> const RawArc* {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), std::pair{u, v},
                               [](const RawArc& a, const std::pair<VertexId, VertexId>& key) {
                                 return a.u != key.first ? a.u < key.first : a.v < key.second;
                               });
    if (it != arcs.end() && it->u == u && it->v == v) return &*it;
    return nullptr;
  };

  std::vector<Edge> edges;
  edges.reserve(arcs.size());
  for (const RawArc& a : arcs) {
    if (a.u == a.v) {
      edges.push_back({a.u, a.v, a.w});
      continue;
    }
    const RawArc* rev = findArc(a.v, a.u);
    if (rev != nullptr) {
      if (a.u > a.v) continue;  // handled when the (min, max) direction was seen
      if (rev->w != a.w)
        throw FormatError("reciprocal arcs " + std::to_string(a.u) + "-" + std::to_string(a.v) +
                          " have differing weights");
    }
    edges.push_back({a.u, a.v, a.w});
  }
  return edges;
}

}  // namespace detail

/**
 * Loads a MatrixMarket coordinate file as an undirected graph.
 *
 * Accepts pattern, integer, or real fields with general or symmetric
 * symmetry. Indices are 1-based in the file; entries without a weight get
 * weight 1. The result always satisfies the Graph symmetry invariant:
 * `general` files may list an edge in one or both directions (both requires
 * equal weights), and vertices declared by the header but absent from the
 * entries are kept as isolated vertices.
 */
inline Graph loadMatrixMarket(std::istream& in, const std::string& name = "<stream>") {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(name + ": empty file");
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || detail::lowercase(object) != "matrix" ||
      detail::lowercase(format) != "coordinate")
    throw FormatError(name + ": not a MatrixMarket coordinate file");
  field = detail::lowercase(field);
  symmetry = detail::lowercase(symmetry);
  if (field != "pattern" && field != "integer" && field != "real")
    throw FormatError(name + ": unsupported field type '" + field + "'");
  if (symmetry != "general" && symmetry != "symmetric")
    throw FormatError(name + ": unsupported symmetry '" + symmetry + "'");

  // Skip comments, then read the size line.
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] != '%') break;
  }
  std::istringstream size_line(line);
  long long rows = -1, cols = -1, entries = -1;
  if (!(size_line >> rows >> cols >> entries) || rows < 0 || cols < 0 || entries < 0)
    throw FormatError(name + ": malformed size line");
  const long long n = std::max(rows, cols);
  if (n == 0) throw FormatError(name + ": zero-vertex graph");

  std::vector<detail::RawArc> arcs;
  arcs.reserve(static_cast<std::size_t>(entries));
  long long seen = 0;
  while (seen < entries && std::getline(in, line)) {
    if (line.empty() || line[0] == '%') continue;
    std::istringstream entry(line);
    long long u, v;
    double w = 1.0;
    if (!(entry >> u >> v)) throw FormatError(name + ": malformed entry '" + line + "'");
    if (field != "pattern" && !(entry >> w)) w = 1.0;  // missing weight defaults to 1
    if (u < 1 || u > n || v < 1 || v > n)
      throw FormatError(name + ": vertex index out of declared range in '" + line + "'");
    if (!(w > 0.0) || !std::isfinite(w))
      throw FormatError(name + ": non-positive weight in '" + line + "'");
    arcs.push_back({static_cast<VertexId>(u - 1), static_cast<VertexId>(v - 1), w});
    ++seen;
  }
  if (seen < entries)
    throw FormatError(name + ": expected " + std::to_string(entries) + " entries, found " +
                      std::to_string(seen));

  if (symmetry == "symmetric") {
    // Entries are one per unordered pair already; duplicates sum in fromEdges.
    std::vector<Edge> edges;
    edges.reserve(arcs.size());
    for (const detail::RawArc& a : arcs) edges.push_back({a.u, a.v, a.w});
    return Graph::fromEdges(static_cast<VertexId>(n), std::move(edges));
  }
  return Graph::fromEdges(static_cast<VertexId>(n), detail::mergeDirectedArcs(std::move(arcs)));
}

inline Graph loadMatrixMarket(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path + ": cannot open file");
  return loadMatrixMarket(in, path);
}

/**
 * Loads a whitespace-separated edge list: one `u v [w]` per line with
 * 0-based vertex ids; lines starting with `#` are comments. The number of
 * vertices is the maximum id + 1. Directional duplicates follow the same
 * merge rules as general MatrixMarket input.
 */
inline Graph loadEdgeList(std::istream& in, bool weighted, const std::string& name = "<stream>") {
  std::vector<detail::RawArc> arcs;
  long long max_id = -1;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream entry(line);
    long long u, v;
    double w = 1.0;
    if (!(entry >> u >> v)) throw FormatError(name + ": malformed line '" + line + "'");
    if (u < 0 || v < 0) throw FormatError(name + ": negative vertex id in '" + line + "'");
    if (weighted && !(entry >> w)) throw FormatError(name + ": missing weight in '" + line + "'");
    if (!(w > 0.0) || !std::isfinite(w))
      throw FormatError(name + ": non-positive weight in '" + line + "'");
    max_id = std::max({max_id, u, v});
    arcs.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
  }
  if (max_id < 0) throw FormatError(name + ": zero-vertex graph");
  return Graph::fromEdges(static_cast<VertexId>(max_id + 1),
                          detail::mergeDirectedArcs(std::move(arcs)));
}

inline Graph loadEdgeList(const std::string& path, bool weighted) {
  std::ifstream in(path);
  if (!in) throw FormatError(path + ": cannot open file");
  return loadEdgeList(in, weighted, path);
}

/// Writes one `u v w` line per undirected edge (u <= v), round-trippable
/// through loadEdgeList with full double precision.
inline void writeEdgeList(std::ostream& out, const Graph& g) {
  char buf[64];
  for (VertexId i = 0; i < g.numVertices(); ++i) {
    g.forEachArc(i, [&](VertexId j, Weight w) {
      if (j < i) return;
      std::snprintf(buf, sizeof(buf), "%.17g", w);
      out << i << ' ' << j << ' ' << buf << '\n';
    });
  }
}

inline void writeEdgeList(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw FormatError(path + ": cannot open file for writing");
  writeEdgeList(out, g);
}

/// Membership file: one integer community label per line, line index =
/// vertex id.
inline Membership readMembership(std::istream& in, const std::string& name = "<stream>") {
  Membership labels;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream entry(line);
    long long c;
    if (!(entry >> c) || c < 0)
      throw FormatError(name + ": invalid membership label '" + line + "'");
    labels.push_back(static_cast<CommunityId>(c));
  }
  return labels;
}

inline Membership readMembership(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError(path + ": cannot open file");
  return readMembership(in, path);
}

inline void writeMembership(std::ostream& out, const Membership& labels) {
  for (CommunityId c : labels) out << c << '\n';
}

inline void writeMembership(const std::string& path, const Membership& labels) {
  std::ofstream out(path);
  if (!out) throw FormatError(path + ": cannot open file for writing");
  writeMembership(out, labels);
}

}  // namespace louvainsplit
