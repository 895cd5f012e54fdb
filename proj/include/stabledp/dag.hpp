#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace stabledp {

using VertexId = std::int32_t;
using Edge = std::pair<VertexId, VertexId>;

inline constexpr std::size_t kDefaultDenseCap = 4096;

// Vertex-weighted DAG whose edge relation is transitively closed.
// Immutable after construction.
class TransitiveDag {
 public:
  TransitiveDag() = default;

  // Closes the given relation. Throws BadIndex, CycleDetected, InvalidArgument
  // (negative or non-finite weight).
  static TransitiveDag build(std::vector<double> weights,
                             const std::vector<Edge>& edges,
                             std::size_t dense_cap = kDefaultDenseCap);

  // Takes successor lists that are already transitively closed (as produced
  // from a strict order). Acyclicity is checked, closure is not; see
  // is_transitive().
  static TransitiveDag from_closed_successors(
      std::vector<double> weights, std::vector<std::vector<VertexId>> successors,
      std::size_t dense_cap = kDefaultDenseCap);

  std::size_t size() const { return weights_.size(); }
  double weight(VertexId v) const { return weights_[v]; }
  const std::vector<double>& weights() const { return weights_; }

  bool has_edge(VertexId u, VertexId v) const;
  const std::vector<VertexId>& successors(VertexId v) const { return succ_[v]; }
  const std::vector<VertexId>& predecessors(VertexId v) const { return pred_[v]; }
  std::size_t edge_count() const { return edge_count_; }

  const std::vector<VertexId>& topological_order() const { return topo_; }
  std::int32_t topological_rank(VertexId v) const { return rank_[v]; }
  bool dense() const { return !bits_.empty() || size() == 0; }

  bool is_transitive() const;
  bool is_acyclic() const;

  // Induced subgraph on `keep` (any order, no duplicates). Vertex j of the
  // result is keep[j].
  TransitiveDag induced(std::span<const VertexId> keep) const;

  std::vector<Edge> edge_list() const;

 private:
  void finalize(std::size_t dense_cap);

  std::vector<double> weights_;
  std::vector<std::vector<VertexId>> succ_;
  std::vector<std::vector<VertexId>> pred_;
  std::vector<VertexId> topo_;
  std::vector<std::int32_t> rank_;
  std::vector<std::uint64_t> bits_;
  std::size_t words_per_row_ = 0;
  std::size_t edge_count_ = 0;
  std::size_t dense_cap_ = kDefaultDenseCap;
};

// A subset U of a dag's vertices, members kept in topological order.
class SubUniverse {
 public:
  static SubUniverse all(const TransitiveDag& dag);
  // Throws BadIndex on out-of-range ids; duplicates are ignored.
  static SubUniverse of(const TransitiveDag& dag,
                        std::span<const VertexId> members);
  static SubUniverse empty_of(const TransitiveDag& dag);

  const TransitiveDag& dag() const { return *dag_; }
  const std::vector<VertexId>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(VertexId v) const {
    return v >= 0 && static_cast<std::size_t>(v) < mask_.size() && mask_[v];
  }

  // U minus the given vertices.
  SubUniverse without(std::span<const VertexId> removed) const;

  // Members satisfying keep(v), order preserved.
  template <typename Keep>
  SubUniverse filtered(Keep&& keep) const {
    std::vector<VertexId> kept;
    for (VertexId v : members_)
      if (keep(v)) kept.push_back(v);
    return SubUniverse(dag_, std::move(kept));
  }

 private:
  SubUniverse(const TransitiveDag* dag, std::vector<VertexId> members);

  const TransitiveDag* dag_ = nullptr;
  std::vector<VertexId> members_;
  std::vector<bool> mask_;
};

struct ChainSolution {
  std::vector<VertexId> vertices;
  double total_weight = 0.0;
};

bool is_chain(const TransitiveDag& dag, std::span<const VertexId> vertices);

// Per-vertex quantities of U, indexed parallel to universe.members():
// best chain ending / starting at v, r(v) and the sizes of U_{-v}, U_{+v}.
struct UniverseProfile {
  std::vector<double> down;
  std::vector<double> up;
  std::vector<double> r;
  std::vector<std::int32_t> pred_count;
  std::vector<std::int32_t> succ_count;
  double opt = 0.0;

  // max(|U_{-v}|, |U_{+v}|) for member position j.
  std::int32_t spread(std::size_t j) const {
    return pred_count[j] > succ_count[j] ? pred_count[j] : succ_count[j];
  }
};

UniverseProfile universe_profile(const SubUniverse& universe);

ChainSolution opt_chain(const SubUniverse& universe);
double opt_value(const SubUniverse& universe);

struct ReachPartition {
  std::vector<VertexId> preds;
  std::vector<VertexId> succs;
};

// Throws VertexNotInUniverse.
ReachPartition reach_partition(const SubUniverse& universe, VertexId v);

// r(v) for every member, parallel to universe.members().
std::vector<double> r_values(const SubUniverse& universe);

std::vector<VertexId> u_d_set(const SubUniverse& universe, double d);

// Sets S_1..S_n of potentially missing vertices.
class AntichainFamily {
 public:
  enum class Mode { kAntichain, kPseudoAntichain };

  AntichainFamily() = default;
  // Throws InvalidFamily if a vertex is in no set or in more than K sets, or
  // (antichain mode) a set contains an edge; BadIndex on bad ids.
  AntichainFamily(const TransitiveDag& dag,
                  std::vector<std::vector<VertexId>> sets, int multiplicity,
                  Mode mode = Mode::kAntichain);

  std::size_t size() const { return sets_.size(); }
  const std::vector<VertexId>& set(std::size_t i) const { return sets_[i]; }
  const std::vector<std::vector<VertexId>>& sets() const { return sets_; }
  int multiplicity() const { return multiplicity_; }
  Mode mode() const { return mode_; }
  // Indices of the sets containing v.
  const std::vector<std::int32_t>& membership(VertexId v) const {
    return membership_[v];
  }

 private:
  std::vector<std::vector<VertexId>> sets_;
  std::vector<std::vector<std::int32_t>> membership_;
  int multiplicity_ = 1;
  Mode mode_ = Mode::kAntichain;
};

// Sum over i of opt(V) - opt(V \ S_i).
double sum_opt_drop(const TransitiveDag& dag, const AntichainFamily& family);

}  // namespace stabledp
