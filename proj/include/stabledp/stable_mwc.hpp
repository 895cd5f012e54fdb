#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "stabledp/dag.hpp"
#include "stabledp/rng.hpp"

namespace stabledp {

struct RecParams {
  double eps = 0.0;
  double c = 0.0;  // exponential-mechanism scale
  double d = 0.0;  // size threshold for pivot candidates
};

struct PivotDistribution {
  std::vector<VertexId> support;
  std::vector<double> probabilities;

  double probability_of(VertexId v) const;
};

// One call of the recursion on a nonempty universe.
struct TraceEntry {
  int depth = 0;
  std::vector<VertexId> universe;
  RecParams params;
  double opt = 0.0;
  VertexId pivot = -1;
  double pivot_r = 0.0;
  double max_r_candidates = 0.0;  // max r over U_d
  std::size_t candidate_count = 0;
};

struct RecursionTrace {
  std::vector<TraceEntry> entries;

  int depth() const;
  std::vector<std::vector<const TraceEntry*>> by_depth() const;
};

struct StableSolverConfig {
  double delta = 0.1;
  std::uint64_t seed = 0;
  bool record_trace = false;
  // Skips sampling and runs the recursion at this eps.
  std::optional<double> eps_override;
};

struct MwcResult {
  ChainSolution chain;
  double eps = 0.0;  // NaN when |V| <= 1
  std::optional<RecursionTrace> trace;
};

// Softmax of scores/c, shifted by the max score so nothing overflows.
// c == 0 is the limit: uniform over the argmax set.
std::vector<double> exp_mechanism_probabilities(std::span<const double> scores,
                                                double c);

// Index into scores. Throws EmptySupport.
std::size_t exp_mechanism_sample(std::span<const double> scores, double c,
                                 RandomStream& rng);

// Throws InvalidArgument unless 0 < eps < 1.
ChainSolution rec(const SubUniverse& universe, double eps, RandomStream rng,
                  RecursionTrace* trace = nullptr);

// The eps^-1 interval for |V| vertices.
std::pair<double, double> inverse_eps_range(std::size_t vertex_count,
                                            double delta);

MwcResult mwc(const TransitiveDag& dag, const StableSolverConfig& config);
MwcResult mwc(const TransitiveDag& dag, const StableSolverConfig& config,
              RandomStream rng);

// Exact Pr[pivot = v] at the top of rec(U, eps), with c and d integrated out.
PivotDistribution pivot_marginal(const SubUniverse& universe, double eps);

double total_variation(const PivotDistribution& a, const PivotDistribution& b);

struct PivotTvReport {
  double average = 0.0;
  std::vector<double> per_set;      // 0 for sets disjoint from V
  std::size_t intersecting_sets = 0;
  std::size_t degenerate_deletions = 0;  // V \ S_i empty; TV taken as 1
  double bound = 0.0;
};

// 3 K eps^-1 ln(|V| eps^-1) / n.
double pivot_tv_bound(std::size_t n, int multiplicity, std::size_t vertex_count,
                      double eps);

PivotTvReport average_pivot_tv(const TransitiveDag& dag,
                               const AntichainFamily& family, double eps);

}  // namespace stabledp
