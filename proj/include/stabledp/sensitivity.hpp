#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stabledp/problem.hpp"
#include "stabledp/rng.hpp"

namespace stabledp {

// |x △ y| for normalized solutions.
std::size_t sym_diff_distance(const Solution& x, const Solution& y);

struct WeightedSolution {
  Solution solution;
  double mass = 0.0;
};
using Distribution = std::vector<WeightedSolution>;

// Optimal transport cost under symmetric difference. Masses are normalized
// to sum 1. Throws SupportTooLarge past support_cap, EmptySupport on zero
// total mass.
double exact_em(const Distribution& a, const Distribution& b,
                std::size_t support_cap = 2000);

// Optimal matching cost between two equally weighted sample sets, divided by
// the sample count; identical samples are merged before solving.
double empirical_em(const std::vector<Solution>& a, const std::vector<Solution>& b);

using Sampler = std::function<Solution(RandomStream&)>;
// Draws m samples from each sampler on independent child streams.
double empirical_em(const Sampler& a, const Sampler& b, std::size_t m, RandomStream& rng);

class SolutionSampler {
 public:
  virtual ~SolutionSampler() = default;
  virtual Solution sample(RandomStream& rng) = 0;
  // Size and multiplicity of the graph the sampler runs on (0 if none).
  virtual std::size_t vertex_count() const { return 0; }
  virtual int multiplicity() const { return 0; }
};

using SolverFactory =
    std::function<std::unique_ptr<SolutionSampler>(const ProblemInstance&)>;

// The stable chain solver on the problem's reduction.
SolverFactory stable_solver(double delta, SizeCaps caps = {},
                            std::optional<double> eps = std::nullopt);
// The deterministic textbook DP.
SolverFactory naive_solver(SizeCaps caps = {});
// Ignores the instance and always returns the empty solution.
SolverFactory constant_solver();

struct RatioStats {
  std::size_t trials = 0;
  double opt = 0.0;
  double mean = 0.0;
  double sem = 0.0;
  double min = 0.0;
};

struct SensitivityConfig {
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  double delta = 0.3;
  std::optional<double> eps;
  std::string solver = "stable";
  SizeCaps caps;
};

struct SensitivityReport {
  std::string problem;
  std::string solver;
  std::size_t n = 0;
  double delta = 0.0;
  std::optional<double> eps;
  std::size_t m = 0;
  std::vector<double> per_deletion;
  double average = 0.0;
  std::size_t vertex_count = 0;
  int multiplicity = 0;
  double paper_bound = 0.0;
  std::optional<RatioStats> ratio_stats;
  std::uint64_t seed = 0;
  std::optional<double> runtime_ms;
};

// 54 K ln^3|V| / delta; informational.
double stability_bound(std::size_t vertex_count, int multiplicity, double delta);

SolverFactory solver_by_name(const SensitivityConfig& config);

SensitivityReport average_sensitivity(const ProblemInstance& instance,
                                      const SolverFactory& solver,
                                      const SensitivityConfig& config);
SensitivityReport average_sensitivity(const ProblemInstance& instance,
                                      const SensitivityConfig& config);

// achieved / opt over independent runs of the stable solver.
RatioStats approximation_experiment(const ProblemInstance& instance, double delta,
                                    std::size_t trials, std::uint64_t seed,
                                    const SizeCaps& caps = {});

struct SensitivityComparison {
  SensitivityReport naive;
  SensitivityReport stable;
};

SensitivityComparison naive_vs_stable_comparison(const ProblemInstance& instance,
                                                 const SensitivityConfig& config);

}  // namespace stabledp
