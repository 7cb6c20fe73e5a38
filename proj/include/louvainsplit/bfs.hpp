#pragma once
#include <vector>

#include "louvainsplit/graph.hpp"
#include "louvainsplit/parallel.hpp"

namespace louvainsplit {

/**
 * Breadth-first traversal from start, restricted by a predicate.
 *
 * Claims each vertex through an atomic test-and-set on the shared visited
 * flags, calls visit(j) once per claimed vertex, and expands only neighbors
 * for which admit(j) holds. Does nothing if start is already visited or not
 * admitted. The frontier buffer is caller-provided so repeated traversals
 * reuse its storage.
 */
template <class FAdmit, class FVisit>
inline void bfsVisitForEach(AtomicFlags& visited, const Graph& g, VertexId start, FAdmit admit,
                            FVisit visit, std::vector<VertexId>& frontier) {
  if (!admit(start) || !visited.testAndSet(start)) return;
  visit(start);
  frontier.clear();
  frontier.push_back(start);
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    VertexId u = frontier[head];
    for (VertexId j : g.neighbors(u)) {
      if (!admit(j)) continue;
      if (!visited.testAndSet(j)) continue;
      visit(j);
      frontier.push_back(j);
    }
  }
}

}  // namespace louvainsplit
