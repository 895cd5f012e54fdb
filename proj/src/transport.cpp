#include "stabledp/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <type_traits>

#include "stabledp/errors.hpp"

namespace stabledp {
namespace {

template <typename Mass>
struct Arc {
  int to;
  int rev;
  Mass cap;
  double cost;
};

// Successive shortest paths with Johnson potentials and an O(V^2) Dijkstra,
// which suits the dense bipartite graphs built here.
template <typename Mass>
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : adj_(nodes) {}

  void add_arc(int u, int v, Mass cap, double cost) {
    adj_[u].push_back({v, static_cast<int>(adj_[v].size()), cap, cost});
    adj_[v].push_back({u, static_cast<int>(adj_[u].size()) - 1, Mass{0}, -cost});
  }

  double run(int source, int sink, Mass required, Mass tolerance) {
    const int n = static_cast<int>(adj_.size());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> potential(n, 0.0), dist(n);
    std::vector<int> prev_node(n), prev_arc(n);
    std::vector<char> done(n);
    double total_cost = 0.0;
    Mass shipped{0};
    while (required - shipped > tolerance) {
      std::fill(dist.begin(), dist.end(), inf);
      std::fill(done.begin(), done.end(), 0);
      dist[source] = 0.0;
      for (;;) {
        int u = -1;
        for (int v = 0; v < n; ++v)
          if (!done[v] && dist[v] < inf && (u < 0 || dist[v] < dist[u])) u = v;
        if (u < 0) break;
        done[u] = 1;
        for (int k = 0; k < static_cast<int>(adj_[u].size()); ++k) {
          const Arc<Mass>& a = adj_[u][k];
          if (a.cap <= tolerance) continue;
          const double reduced = a.cost + potential[u] - potential[a.to];
          const double nd = dist[u] + std::max(0.0, reduced);
          if (nd < dist[a.to]) {
            dist[a.to] = nd;
            prev_node[a.to] = u;
            prev_arc[a.to] = k;
          }
        }
      }
      if (dist[sink] == inf) throw InvalidArgument("transport problem is infeasible");
      for (int v = 0; v < n; ++v)
        if (dist[v] < inf) potential[v] += dist[v];
      Mass push = required - shipped;
      for (int v = sink; v != source; v = prev_node[v])
        push = std::min(push, adj_[prev_node[v]][prev_arc[v]].cap);
      for (int v = sink; v != source; v = prev_node[v]) {
        Arc<Mass>& a = adj_[prev_node[v]][prev_arc[v]];
        a.cap -= push;
        adj_[v][a.rev].cap += push;
        total_cost += static_cast<double>(push) * a.cost;
      }
      shipped += push;
    }
    return total_cost;
  }

 private:
  std::vector<std::vector<Arc<Mass>>> adj_;
};

}  // namespace

template <typename Mass>
double min_cost_transport(const std::vector<std::vector<double>>& cost,
                          const std::vector<Mass>& supply,
                          const std::vector<Mass>& demand) {
  const int k1 = static_cast<int>(supply.size());
  const int k2 = static_cast<int>(demand.size());
  const Mass total_a = std::accumulate(supply.begin(), supply.end(), Mass{0});
  const Mass total_b = std::accumulate(demand.begin(), demand.end(), Mass{0});
  Mass tolerance{0};
  if constexpr (std::is_floating_point_v<Mass>) {
    tolerance = 1e-12 * std::max<Mass>(total_a, 1);
    if (std::abs(total_a - total_b) > 1e-9 * std::max<Mass>(total_a, 1))
      throw InvalidArgument("supply and demand totals differ");
  } else if (total_a != total_b) {
    throw InvalidArgument("supply and demand totals differ");
  }
  if (k1 == 0 || k2 == 0 || total_a <= tolerance) return 0.0;
  const Mass required = std::min(total_a, total_b);
  FlowNetwork<Mass> net(k1 + k2 + 2);
  const int source = k1 + k2, sink = k1 + k2 + 1;
  for (int i = 0; i < k1; ++i) net.add_arc(source, i, supply[i], 0.0);
  for (int j = 0; j < k2; ++j) net.add_arc(k1 + j, sink, demand[j], 0.0);
  for (int i = 0; i < k1; ++i)
    for (int j = 0; j < k2; ++j) net.add_arc(i, k1 + j, required, cost[i][j]);
  return net.run(source, sink, required, tolerance);
}

template double min_cost_transport<double>(const std::vector<std::vector<double>>&,
                                           const std::vector<double>&,
                                           const std::vector<double>&);
template double min_cost_transport<long long>(const std::vector<std::vector<double>>&,
                                              const std::vector<long long>&,
                                              const std::vector<long long>&);

}  // namespace stabledp
