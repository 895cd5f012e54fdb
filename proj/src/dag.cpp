#include "stabledp/dag.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <string>

#include "stabledp/errors.hpp"

namespace stabledp {
namespace {

void check_index(VertexId v, std::size_t m, const char* what) {
  if (v < 0 || static_cast<std::size_t>(v) >= m) {
    throw BadIndex(std::string(what) + " " + std::to_string(v) +
                   " out of range [0," + std::to_string(m) + ")");
  }
}

// Kahn's algorithm; smallest ready id first so the order is canonical.
// Returns false on a cycle.
bool topological_sort(const std::vector<std::vector<VertexId>>& succ,
                      std::vector<VertexId>& order) {
  const std::size_t m = succ.size();
  std::vector<std::int32_t> indeg(m, 0);
  for (const auto& row : succ)
    for (VertexId v : row) ++indeg[v];
  std::vector<VertexId> ready;
  for (std::size_t v = m; v-- > 0;)
    if (indeg[v] == 0) ready.push_back(static_cast<VertexId>(v));
  // `ready` is a min-heap on id.
  std::make_heap(ready.begin(), ready.end(), std::greater<>());
  order.clear();
  order.reserve(m);
  while (!ready.empty()) {
    std::pop_heap(ready.begin(), ready.end(), std::greater<>());
    VertexId u = ready.back();
    ready.pop_back();
    order.push_back(u);
    for (VertexId v : succ[u]) {
      if (--indeg[v] == 0) {
        ready.push_back(v);
        std::push_heap(ready.begin(), ready.end(), std::greater<>());
      }
    }
  }
  return order.size() == m;
}

void check_weights(const std::vector<double>& weights) {
  for (std::size_t v = 0; v < weights.size(); ++v) {
    if (!std::isfinite(weights[v]) || weights[v] < 0.0) {
      throw InvalidArgument("weight of vertex " + std::to_string(v) +
                            " must be finite and nonnegative");
    }
  }
}

}  // namespace

TransitiveDag TransitiveDag::build(std::vector<double> weights,
                                   const std::vector<Edge>& edges,
                                   std::size_t dense_cap) {
  check_weights(weights);
  const std::size_t m = weights.size();
  std::vector<std::vector<VertexId>> direct(m);
  for (const auto& [u, v] : edges) {
    check_index(u, m, "edge endpoint");
    check_index(v, m, "edge endpoint");
    if (u == v) throw CycleDetected("self-loop at vertex " + std::to_string(u));
    direct[u].push_back(v);
  }
  for (auto& row : direct) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  std::vector<VertexId> order;
  if (!topological_sort(direct, order)) {
    throw CycleDetected("edge relation contains a directed cycle");
  }

  std::vector<std::vector<VertexId>> closed(m);
  if (m <= dense_cap) {
    const std::size_t words = (m + 63) / 64;
    std::vector<std::uint64_t> reach(m * words, 0);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      std::uint64_t* row = &reach[static_cast<std::size_t>(*it) * words];
      for (VertexId v : direct[*it]) {
        row[v / 64] |= std::uint64_t{1} << (v % 64);
        const std::uint64_t* sub = &reach[static_cast<std::size_t>(v) * words];
        for (std::size_t w = 0; w < words; ++w) row[w] |= sub[w];
      }
    }
    for (std::size_t u = 0; u < m; ++u) {
      const std::uint64_t* row = &reach[u * words];
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t bits = row[w];
        while (bits) {
          closed[u].push_back(static_cast<VertexId>(w * 64 + std::countr_zero(bits)));
          bits &= bits - 1;
        }
      }
    }
  } else {
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto& row = closed[*it];
      for (VertexId v : direct[*it]) {
        row.push_back(v);
        row.insert(row.end(), closed[v].begin(), closed[v].end());
      }
      std::sort(row.begin(), row.end());
      row.erase(std::unique(row.begin(), row.end()), row.end());
    }
  }

  TransitiveDag dag;
  dag.weights_ = std::move(weights);
  dag.succ_ = std::move(closed);
  dag.finalize(dense_cap);
  return dag;
}

TransitiveDag TransitiveDag::from_closed_successors(
    std::vector<double> weights, std::vector<std::vector<VertexId>> successors,
    std::size_t dense_cap) {
  check_weights(weights);
  const std::size_t m = weights.size();
  if (successors.size() != m) {
    throw InvalidArgument("successor list count differs from vertex count");
  }
  for (std::size_t u = 0; u < m; ++u) {
    auto& row = successors[u];
    for (VertexId v : row) {
      check_index(v, m, "successor");
      if (static_cast<std::size_t>(v) == u) {
        throw CycleDetected("self-loop at vertex " + std::to_string(u));
      }
    }
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
  TransitiveDag dag;
  dag.weights_ = std::move(weights);
  dag.succ_ = std::move(successors);
  dag.finalize(dense_cap);
  return dag;
}

void TransitiveDag::finalize(std::size_t dense_cap) {
  const std::size_t m = weights_.size();
  dense_cap_ = dense_cap;
  if (!topological_sort(succ_, topo_)) {
    throw CycleDetected("edge relation contains a directed cycle");
  }
  rank_.assign(m, 0);
  for (std::size_t i = 0; i < m; ++i) rank_[topo_[i]] = static_cast<std::int32_t>(i);
  pred_.assign(m, {});
  edge_count_ = 0;
  for (std::size_t u = 0; u < m; ++u) {
    edge_count_ += succ_[u].size();
    for (VertexId v : succ_[u]) pred_[v].push_back(static_cast<VertexId>(u));
  }
  bits_.clear();
  words_per_row_ = 0;
  if (m > 0 && m <= dense_cap) {
    words_per_row_ = (m + 63) / 64;
    bits_.assign(m * words_per_row_, 0);
    for (std::size_t u = 0; u < m; ++u) {
      for (VertexId v : succ_[u]) {
        bits_[u * words_per_row_ + v / 64] |= std::uint64_t{1} << (v % 64);
      }
    }
  }
}

bool TransitiveDag::has_edge(VertexId u, VertexId v) const {
  if (!bits_.empty()) {
    return (bits_[static_cast<std::size_t>(u) * words_per_row_ + v / 64] >>
            (v % 64)) & 1U;
  }
  const auto& row = succ_[u];
  return std::binary_search(row.begin(), row.end(), v);
}

bool TransitiveDag::is_transitive() const {
  const std::size_t m = size();
  for (std::size_t u = 0; u < m; ++u) {
    for (VertexId v : succ_[u]) {
      if (!bits_.empty()) {
        const std::uint64_t* a = &bits_[static_cast<std::size_t>(v) * words_per_row_];
        const std::uint64_t* b = &bits_[u * words_per_row_];
        for (std::size_t w = 0; w < words_per_row_; ++w)
          if (a[w] & ~b[w]) return false;
      } else if (!std::includes(succ_[u].begin(), succ_[u].end(),
                                succ_[v].begin(), succ_[v].end())) {
        return false;
      }
    }
  }
  return true;
}

bool TransitiveDag::is_acyclic() const {
  std::vector<VertexId> order;
  return topological_sort(succ_, order);
}

TransitiveDag TransitiveDag::induced(std::span<const VertexId> keep) const {
  const std::size_t m = size();
  std::vector<VertexId> new_id(m, -1);
  std::vector<double> weights;
  weights.reserve(keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j) {
    check_index(keep[j], m, "induced vertex");
    if (new_id[keep[j]] >= 0) throw BadIndex("duplicate vertex in induced set");
    new_id[keep[j]] = static_cast<VertexId>(j);
    weights.push_back(weights_[keep[j]]);
  }
  std::vector<std::vector<VertexId>> succ(keep.size());
  for (std::size_t j = 0; j < keep.size(); ++j) {
    for (VertexId v : succ_[keep[j]]) {
      if (new_id[v] >= 0) succ[j].push_back(new_id[v]);
    }
  }
  return from_closed_successors(std::move(weights), std::move(succ), dense_cap_);
}

std::vector<Edge> TransitiveDag::edge_list() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < size(); ++u)
    for (VertexId v : succ_[u]) out.emplace_back(static_cast<VertexId>(u), v);
  return out;
}

// ---------------------------------------------------------------------------

SubUniverse::SubUniverse(const TransitiveDag* dag, std::vector<VertexId> members)
    : dag_(dag), members_(std::move(members)), mask_(dag->size(), false) {
  for (VertexId v : members_) mask_[v] = true;
}

SubUniverse SubUniverse::all(const TransitiveDag& dag) {
  return SubUniverse(&dag, dag.topological_order());
}

SubUniverse SubUniverse::empty_of(const TransitiveDag& dag) {
  return SubUniverse(&dag, {});
}

SubUniverse SubUniverse::of(const TransitiveDag& dag,
                            std::span<const VertexId> members) {
  std::vector<VertexId> sorted(members.begin(), members.end());
  for (VertexId v : sorted) check_index(v, dag.size(), "universe member");
  std::sort(sorted.begin(), sorted.end(), [&](VertexId a, VertexId b) {
    return dag.topological_rank(a) < dag.topological_rank(b);
  });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return SubUniverse(&dag, std::move(sorted));
}

SubUniverse SubUniverse::without(std::span<const VertexId> removed) const {
  std::vector<bool> drop(dag_->size(), false);
  for (VertexId v : removed) {
    check_index(v, dag_->size(), "removed vertex");
    drop[v] = true;
  }
  std::vector<VertexId> kept;
  kept.reserve(members_.size());
  for (VertexId v : members_)
    if (!drop[v]) kept.push_back(v);
  return SubUniverse(dag_, std::move(kept));
}

bool is_chain(const TransitiveDag& dag, std::span<const VertexId> vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (vertices[i] < 0 || static_cast<std::size_t>(vertices[i]) >= dag.size())
      return false;
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!dag.has_edge(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

namespace {

// Calls visit(i, j) for every edge between member positions i < j.
template <typename Visit>
void for_each_member_edge(const SubUniverse& universe, Visit&& visit) {
  const TransitiveDag& dag = universe.dag();
  const auto& members = universe.members();
  const std::size_t k = members.size();
  if (dag.dense()) {
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (dag.has_edge(members[i], members[j])) visit(i, j);
    return;
  }
  std::vector<std::int32_t> pos(dag.size(), -1);
  for (std::size_t j = 0; j < k; ++j) pos[members[j]] = static_cast<std::int32_t>(j);
  for (std::size_t j = 0; j < k; ++j) {
    for (VertexId u : dag.predecessors(members[j])) {
      if (pos[u] >= 0) visit(static_cast<std::size_t>(pos[u]), j);
    }
  }
}

}  // namespace

UniverseProfile universe_profile(const SubUniverse& universe) {
  const TransitiveDag& dag = universe.dag();
  const auto& members = universe.members();
  const std::size_t k = members.size();
  UniverseProfile p;
  p.down.assign(k, 0.0);
  p.up.assign(k, 0.0);
  p.pred_count.assign(k, 0);
  p.succ_count.assign(k, 0);
  std::vector<double> best_in(k, 0.0);
  std::vector<std::vector<std::uint32_t>> out(k);
  // Edges arrive grouped by increasing head position in dense mode but not
  // necessarily in sparse mode, so collect adjacency first.
  for_each_member_edge(universe, [&](std::size_t i, std::size_t j) {
    ++p.pred_count[j];
    ++p.succ_count[i];
    out[i].push_back(static_cast<std::uint32_t>(j));
  });
  for (std::size_t i = 0; i < k; ++i) {
    p.down[i] = best_in[i] + dag.weight(members[i]);
    for (std::uint32_t j : out[i]) best_in[j] = std::max(best_in[j], p.down[i]);
  }
  for (std::size_t i = k; i-- > 0;) {
    double best_out = 0.0;
    for (std::uint32_t j : out[i]) best_out = std::max(best_out, p.up[j]);
    p.up[i] = best_out + dag.weight(members[i]);
  }
  p.r.resize(k);
  p.opt = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    p.r[i] = p.down[i] + p.up[i] - dag.weight(members[i]);
    p.opt = std::max(p.opt, p.down[i]);
  }
  return p;
}

ChainSolution opt_chain(const SubUniverse& universe) {
  const TransitiveDag& dag = universe.dag();
  const auto& members = universe.members();
  const std::size_t k = members.size();
  ChainSolution result;
  if (k == 0) return result;
  std::vector<double> down(k, 0.0);
  std::vector<std::int32_t> parent(k, -1);
  std::vector<double> best_in(k, 0.0);
  std::vector<std::int32_t> best_from(k, -1);
  std::vector<std::vector<std::uint32_t>> out(k);
  for_each_member_edge(universe, [&](std::size_t i, std::size_t j) {
    out[i].push_back(static_cast<std::uint32_t>(j));
  });
  std::size_t best_end = 0;
  for (std::size_t i = 0; i < k; ++i) {
    down[i] = best_in[i] + dag.weight(members[i]);
    parent[i] = best_from[i];
    for (std::uint32_t j : out[i]) {
      if (best_from[j] < 0 || down[i] > best_in[j]) {
        best_in[j] = down[i];
        best_from[j] = static_cast<std::int32_t>(i);
      }
    }
    if (down[i] > down[best_end]) best_end = i;
  }
  for (std::int32_t i = static_cast<std::int32_t>(best_end); i >= 0; i = parent[i]) {
    result.vertices.push_back(members[i]);
  }
  std::reverse(result.vertices.begin(), result.vertices.end());
  for (VertexId v : result.vertices) result.total_weight += dag.weight(v);
  return result;
}

double opt_value(const SubUniverse& universe) {
  return universe_profile(universe).opt;
}

ReachPartition reach_partition(const SubUniverse& universe, VertexId v) {
  if (!universe.contains(v)) {
    throw VertexNotInUniverse("vertex " + std::to_string(v) + " not in universe");
  }
  const TransitiveDag& dag = universe.dag();
  ReachPartition part;
  for (VertexId u : universe.members()) {
    if (u == v) continue;
    if (dag.has_edge(u, v)) part.preds.push_back(u);
    else if (dag.has_edge(v, u)) part.succs.push_back(u);
  }
  return part;
}

std::vector<double> r_values(const SubUniverse& universe) {
  return universe_profile(universe).r;
}

std::vector<VertexId> u_d_set(const SubUniverse& universe, double d) {
  const UniverseProfile p = universe_profile(universe);
  std::vector<VertexId> out;
  for (std::size_t j = 0; j < universe.size(); ++j) {
    if (p.spread(j) <= d) out.push_back(universe.members()[j]);
  }
  return out;
}

// ---------------------------------------------------------------------------

AntichainFamily::AntichainFamily(const TransitiveDag& dag,
                                 std::vector<std::vector<VertexId>> sets,
                                 int multiplicity, Mode mode)
    : sets_(std::move(sets)), multiplicity_(multiplicity), mode_(mode) {
  if (multiplicity < 1) throw InvalidFamily("multiplicity bound must be >= 1");
  const std::size_t m = dag.size();
  membership_.assign(m, {});
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    auto& s = sets_[i];
    for (VertexId v : s) check_index(v, m, "family member");
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
      throw InvalidFamily("set " + std::to_string(i) + " lists a vertex twice");
    }
    for (VertexId v : s) membership_[v].push_back(static_cast<std::int32_t>(i));
    if (mode_ == Mode::kAntichain) {
      for (std::size_t a = 0; a < s.size(); ++a)
        for (std::size_t b = 0; b < s.size(); ++b)
          if (a != b && dag.has_edge(s[a], s[b]))
            throw InvalidFamily("set " + std::to_string(i) + " is not an antichain");
    }
  }
  for (std::size_t v = 0; v < m; ++v) {
    const std::size_t c = membership_[v].size();
    if (c < 1 || c > static_cast<std::size_t>(multiplicity_)) {
      throw InvalidFamily("vertex " + std::to_string(v) + " lies in " +
                          std::to_string(c) + " sets (allowed 1.." +
                          std::to_string(multiplicity_) + ")");
    }
  }
}

double sum_opt_drop(const TransitiveDag& dag, const AntichainFamily& family) {
  const SubUniverse all = SubUniverse::all(dag);
  const double opt = opt_value(all);
  double sum = 0.0;
  for (const auto& s : family.sets()) sum += opt - opt_value(all.without(s));
  return sum;
}

}  // namespace stabledp
