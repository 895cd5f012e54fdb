#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "stabledp/dag.hpp"

namespace stabledp {

enum class ProblemKind { kLis, kIntervals, kLcs, kLps, kKnapsack, kRna, kDag };

const char* problem_name(ProblemKind kind);
// Throws ParseError on unknown names.
ProblemKind problem_from_name(const std::string& name);

struct LisInstance {
  std::vector<std::int64_t> sequence;
};

struct Interval {
  double l = 0.0;
  double r = 0.0;  // half-open [l, r)
  double w = 1.0;
};

struct IntervalInstance {
  std::vector<Interval> items;
};

struct LcsInstance {
  std::vector<std::string> strings;
};

struct LpsInstance {
  std::string text;
};

struct KnapsackInstance {
  std::vector<std::int64_t> costs;
  std::vector<double> weights;
  std::int64_t capacity = 0;
};

struct RnaInstance {
  std::string text;
  std::vector<std::pair<char, char>> relation;

  bool relates(char a, char b) const;
};

// A raw weighted DAG with explicit potentially-missing sets.
struct DagInstance {
  std::vector<double> weights;
  std::vector<Edge> edges;
  std::vector<std::vector<VertexId>> missing_sets;  // empty: singletons
  int multiplicity = 1;
};

using ProblemInstance =
    std::variant<LisInstance, IntervalInstance, LcsInstance, LpsInstance,
                 KnapsackInstance, RnaInstance, DagInstance>;

ProblemKind kind_of(const ProblemInstance& instance);

// One solution element: an index (1-based) for sequence problems, an index
// tuple for LCS, a pair (l, r) for RNA, a vertex id for raw DAGs.
using Element = std::vector<int>;
// Sorted, duplicate-free.
using Solution = std::vector<Element>;

void normalize(Solution& solution);

struct SizeCaps {
  std::size_t max_states = 1'000'000;  // LCS tuple product, knapsack n*C
  int max_rna_length = 14;
  std::size_t max_em_support = 2000;
  std::size_t dense_cap = kDefaultDenseCap;

  // Applies a positive integer from the environment variable, if set.
  static SizeCaps from_environment(SizeCaps base);
  static SizeCaps from_environment() { return from_environment(SizeCaps()); }
  // Replaces the state-count cap.
  void override_with(std::size_t value);
};

// Number of input elements n (deletion candidates).
std::size_t element_count(const ProblemInstance& instance);

// Removing input element `index` (1-based) of component `slot`; slot is the
// string number for LCS and 0 otherwise. For raw DAGs index is the 0-based
// position of the removed missing set.
struct Deletion {
  int slot = 0;
  int index = 0;
};

// In the order of the reduction's family sets.
std::vector<Deletion> deletions_of(const ProblemInstance& instance);
ProblemInstance apply_deletion(const ProblemInstance& instance,
                               const Deletion& deletion);
// Maps a solution of the deleted instance back to the original indexing.
Solution restore_indices(const ProblemInstance& original, const Solution& solution,
                         const Deletion& deletion);

bool is_feasible(const ProblemInstance& instance, const Solution& solution);
double objective(const ProblemInstance& instance, const Solution& solution);

}  // namespace stabledp
