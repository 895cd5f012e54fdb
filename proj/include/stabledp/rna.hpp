#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "stabledp/problem.hpp"
#include "stabledp/reductions.hpp"
#include "stabledp/rng.hpp"

namespace stabledp {

// Sorted list of (l, r) pairs, 1-based, l < r.
using FoldSolution = std::vector<std::pair<int, int>>;

// Throws DuplicateIndex if an index is used twice.
bool is_pseudoknot_free(const FoldSolution& pairs);

int nussinov_opt(const RnaInstance& instance);
// One optimal folding, recovered by traceback.
FoldSolution nussinov_fold(const RnaInstance& instance);

// Either empty or the integer range [l, r].
struct PseudoInterval {
  int l = -1;
  int r = -1;

  static PseudoInterval none() { return {}; }
  static PseudoInterval of(int lo, int hi) { return {lo, hi}; }
  bool empty() const { return l < 0; }
  // other ⊆ *this.
  bool contains(const PseudoInterval& other) const;
  // other lies in the open range (l, r).
  bool strictly_contains(const PseudoInterval& other) const;
  bool disjoint(const PseudoInterval& other) const;
  friend bool operator==(const PseudoInterval&, const PseudoInterval&) = default;
  friend auto operator<=>(const PseudoInterval&, const PseudoInterval&) = default;
};

struct Triple {
  PseudoInterval outer;  // I
  PseudoInterval heavy;  // H
  PseudoInterval light;  // L
  friend bool operator==(const Triple&, const Triple&) = default;
  friend auto operator<=>(const Triple&, const Triple&) = default;
};

using TripleList = std::vector<Triple>;

bool is_well_ordered(const Triple& t);
// The partial order on well-ordered triples.
bool triple_preceq(const Triple& a, const Triple& b);

// Strict lexicographic order under triple_preceq, proper prefixes first.
// Throws IncomparableTriples when the first differing triples are
// incomparable.
bool vertex_lex_lt(const TripleList& a, const TripleList& b);

enum class ListOrder { kEqual, kLess, kGreater, kIncomparable };
ListOrder compare_lists(const TripleList& a, const TripleList& b);

// Checks the vertex conditions against an instance and a length bound.
bool is_rna_vertex(const RnaInstance& instance, const TripleList& list,
                   int max_length);

std::vector<int> encode_list(const TripleList& list);
TripleList decode_list(const std::vector<int>& label);

// Every well-ordered triple with endpoints in [0, n+1] (no relation check).
std::vector<Triple> all_well_ordered_triples(int n);

struct RnaGraph {
  Reduction reduction;
  std::vector<TripleList> vertices;
  int list_bound = 0;
  std::map<std::vector<int>, VertexId> index;

  std::optional<VertexId> find(const TripleList& list) const;
};

// All vertex lists of length <= list_bound, in canonical (label) order.
std::vector<TripleList> enumerate_rna_vertices(const RnaInstance& instance, int list_bound,
                                              const SizeCaps& caps = {});

// Throws InstanceTooLarge past caps.max_rna_length or caps.max_states
// vertices; InvalidArgument when bound < 1.
RnaGraph build_rna_graph(const RnaInstance& instance, double list_bound,
                         const SizeCaps& caps = {});

// Throws InfeasibleChain when the decoded pairs collide or cross.
FoldSolution chain_to_pairs(const std::vector<TripleList>& chain);

Solution to_solution(const FoldSolution& pairs);
FoldSolution to_pairs(const Solution& solution);

struct PairTree {
  int n = 0;
  std::vector<std::pair<int, int>> nodes;  // node 0 is (0, n+1)
  std::vector<int> parent;                 // -1 at the root
  std::vector<std::vector<int>> children;  // by increasing left endpoint
  std::vector<int> heavy;                  // -1 for leaves
  std::vector<int> subtree_size;
};

PairTree build_pair_tree(const FoldSolution& solution, int n);
std::vector<TripleList> make_chain(const PairTree& tree);

// Sampling range for the list-length bound.
std::pair<double, double> list_bound_range(int n);

// Caches one graph per integer list bound.
class RnaFolder {
 public:
  explicit RnaFolder(RnaInstance instance, SizeCaps caps = {});

  FoldSolution sample(double delta, RandomStream& rng);
  const RnaGraph& graph_for(int list_bound);
  const RnaInstance& instance() const { return instance_; }

 private:
  RnaInstance instance_;
  SizeCaps caps_;
  std::map<int, RnaGraph> graphs_;
};

FoldSolution rna_fold(const RnaInstance& instance, double delta, RandomStream& rng,
                      const SizeCaps& caps = {});

// Indices i with predecessors and successors of v in S_i while v is not.
int crossing_index_count(const RnaGraph& graph, VertexId v);
// Indices i with predecessors and successors of v in S_i.
int both_sides_index_count(const RnaGraph& graph, VertexId v);

}  // namespace stabledp
