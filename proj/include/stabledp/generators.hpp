#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "stabledp/problem.hpp"
#include "stabledp/rng.hpp"

namespace stabledp {

struct GeneratorSpec {
  std::string family;
  std::size_t size = 10;
  std::uint64_t seed = 0;
  // Target problem for random-strings (lcs, lps or rna; default lps).
  std::optional<ProblemKind> problem;
};

std::vector<std::string> generator_families();

// Deterministic in (family, size, seed, problem). Throws UnknownFamily.
ProblemInstance generate(const GeneratorSpec& spec);

LisInstance random_lis(std::size_t n, RandomStream& rng);
// Two tied optima, one robust to single deletions and one fragile; the
// textbook DP reports the fragile one.
LisInstance adversarial_lis(std::size_t n, RandomStream& rng);
IntervalInstance random_intervals(std::size_t n, RandomStream& rng);
KnapsackInstance random_knapsack(std::size_t n, RandomStream& rng,
                                 std::int64_t capacity = 0);
std::string random_string(std::size_t n, const std::string& alphabet, RandomStream& rng);
LcsInstance random_lcs(std::size_t n, RandomStream& rng, std::size_t strings = 2,
                       const std::string& alphabet = "abc");
LpsInstance random_lps(std::size_t n, RandomStream& rng, const std::string& alphabet = "abc");
// Over ACGU with Watson-Crick and wobble pairs.
RnaInstance random_rna(std::size_t n, RandomStream& rng);
DagInstance random_dag_instance(std::size_t m, RandomStream& rng, double edge_probability = 0.3);

}  // namespace stabledp
