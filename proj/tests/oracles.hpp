#pragma once

// Exhaustive reference implementations used only by tests.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "stabledp/dag.hpp"
#include "stabledp/rng.hpp"

namespace stabledp::testing {

// Random DAG on m vertices: a hidden random order, each forward pair joined
// with probability p, closed transitively by the constructor.
inline TransitiveDag random_dag(RandomStream& rng, std::size_t m, double p,
                                double max_weight = 10.0, bool integer_weights = false) {
  std::vector<VertexId> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = static_cast<VertexId>(i);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      if (rng.uniform01() < p) edges.emplace_back(order[i], order[j]);
  std::vector<double> w(m);
  for (auto& x : w) {
    x = integer_weights ? static_cast<double>(rng.uniform_int(0, static_cast<int>(max_weight)))
                        : rng.uniform(0.0, max_weight);
  }
  return TransitiveDag::build(std::move(w), edges);
}

// Reachability by DFS over the raw edge list (no closure assumed).
inline std::vector<std::vector<bool>> reachability(std::size_t m,
                                                   const std::vector<Edge>& edges) {
  std::vector<std::vector<VertexId>> adj(m);
  for (auto [u, v] : edges) adj[u].push_back(v);
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  for (std::size_t s = 0; s < m; ++s) {
    std::vector<VertexId> stack{static_cast<VertexId>(s)};
    while (!stack.empty()) {
      VertexId u = stack.back();
      stack.pop_back();
      for (VertexId v : adj[u]) {
        if (!reach[s][v]) {
          reach[s][v] = true;
          stack.push_back(v);
        }
      }
    }
  }
  return reach;
}

inline bool subset_is_chain(const TransitiveDag& dag, std::uint32_t mask) {
  const std::size_t m = dag.size();
  for (std::size_t a = 0; a < m; ++a) {
    if (!(mask >> a & 1U)) continue;
    for (std::size_t b = a + 1; b < m; ++b) {
      if (!(mask >> b & 1U)) continue;
      if (!dag.has_edge(static_cast<VertexId>(a), static_cast<VertexId>(b)) &&
          !dag.has_edge(static_cast<VertexId>(b), static_cast<VertexId>(a)))
        return false;
    }
  }
  return true;
}

inline double subset_weight(const TransitiveDag& dag, std::uint32_t mask) {
  double w = 0.0;
  for (std::size_t a = 0; a < dag.size(); ++a)
    if (mask >> a & 1U) w += dag.weight(static_cast<VertexId>(a));
  return w;
}

// Max chain weight inside `allowed`, optionally forced to contain `must`.
inline double brute_force_chain(const TransitiveDag& dag, std::uint32_t allowed,
                                int must = -1) {
  double best = 0.0;
  for (std::uint32_t mask = allowed;; mask = (mask - 1) & allowed) {
    if ((must < 0 || (mask >> must & 1U)) && subset_is_chain(dag, mask))
      best = std::max(best, subset_weight(dag, mask));
    if (mask == 0) break;
  }
  return best;
}

}  // namespace stabledp::testing
