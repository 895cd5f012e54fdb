#pragma once

#include <optional>
#include <vector>

#include "stabledp/dag.hpp"
#include "stabledp/problem.hpp"

namespace stabledp {

// A dag + potentially-missing sets whose chains map onto the problem's
// solutions. labels[v] names the DP state behind vertex v.
struct Reduction {
  ProblemKind kind = ProblemKind::kDag;
  TransitiveDag dag;
  AntichainFamily family;
  std::vector<std::vector<int>> labels;
};

Reduction lis_graph(const LisInstance& instance, const SizeCaps& caps = {});
// Throws MalformedInterval unless l < r and w >= 0.
Reduction interval_graph(const IntervalInstance& instance, const SizeCaps& caps = {});
// Throws InstanceTooLarge, InvalidArgument when fewer than two strings.
Reduction lcs_graph(const LcsInstance& instance, const SizeCaps& caps = {});
Reduction lps_graph(const LpsInstance& instance, const SizeCaps& caps = {});
// Throws InstanceTooLarge, InvalidArgument on nonpositive costs or capacity.
Reduction knapsack_graph(const KnapsackInstance& instance, const SizeCaps& caps = {});
Reduction dag_graph(const DagInstance& instance, const SizeCaps& caps = {});

// Dispatch; RNA needs the list-length bound.
Reduction build_reduction(const ProblemInstance& instance, const SizeCaps& caps = {},
                          std::optional<double> rna_list_bound = std::nullopt);

Solution decode(const Reduction& reduction, const ChainSolution& chain);

// Label of a surviving vertex rewritten into the deleted instance's indexing.
std::vector<int> shift_label(ProblemKind kind, const std::vector<int>& label,
                             const Deletion& deletion);

struct OracleResult {
  double objective = 0.0;
  Solution solution;
};

// Classical DPs: patience sorting, weighted interval DP, LCS table, LPS
// interval DP, knapsack table, Nussinov for RNA, opt_chain for raw DAGs.
OracleResult exact_oracle(const ProblemInstance& instance, const SizeCaps& caps = {});

}  // namespace stabledp
