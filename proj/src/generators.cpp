#include "stabledp/generators.hpp"

#include <algorithm>
#include <numeric>

#include "stabledp/errors.hpp"

namespace stabledp {

std::vector<std::string> generator_families() {
  return {"random-lis",      "adversarial-lis", "random-intervals", "random-strings",
          "random-knapsack", "random-rna",      "random-dag"};
}

LisInstance random_lis(std::size_t n, RandomStream& rng) {
  LisInstance out;
  const auto top = static_cast<std::int64_t>(10 * std::max<std::size_t>(n, 1));
  for (std::size_t i = 0; i < n; ++i) out.sequence.push_back(rng.uniform_int(0, top - 1));
  return out;
}

namespace {

// k distinct integers from [lo, hi], ascending.
std::vector<std::int64_t> sorted_distinct(std::size_t k, std::int64_t lo, std::int64_t hi,
                                          RandomStream& rng) {
  std::vector<std::int64_t> pool(static_cast<std::size_t>(hi - lo + 1));
  std::iota(pool.begin(), pool.end(), lo);
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = static_cast<std::size_t>(rng.uniform_int(static_cast<std::int64_t>(i),
                                                            static_cast<std::int64_t>(pool.size()) - 1));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace

LisInstance adversarial_lis(std::size_t n, RandomStream& rng) {
  // A ladder of descending pairs followed by a plain increasing run of the
  // same LIS length, all below the ladder. Patience sorting reports the later
  // run, which breaks under any deletion inside it, while deletions inside
  // the ladder leave both optima intact. Leftovers go first as large
  // decreasing values that extend nothing.
  const std::size_t pairs = n / 3;
  const std::size_t spare = n - 3 * pairs;
  const auto band = static_cast<std::int64_t>(4 * std::max<std::size_t>(n, 1));
  LisInstance out;
  auto top = sorted_distinct(spare, 2 * band + 1, 3 * band, rng);
  out.sequence.assign(top.rbegin(), top.rend());
  auto ladder = sorted_distinct(2 * pairs, band + 1, 2 * band, rng);
  for (std::size_t j = 0; j < pairs; ++j) {
    out.sequence.push_back(ladder[2 * j + 1]);
    out.sequence.push_back(ladder[2 * j]);
  }
  for (auto v : sorted_distinct(pairs, 1, band, rng)) out.sequence.push_back(v);
  return out;
}

IntervalInstance random_intervals(std::size_t n, RandomStream& rng) {
  IntervalInstance out;
  const auto span = static_cast<std::int64_t>(2 * std::max<std::size_t>(n, 1));
  const auto max_len = static_cast<std::int64_t>(std::max<std::size_t>(n / 2, 1)) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const auto l = rng.uniform_int(0, span - 1);
    const auto len = rng.uniform_int(1, max_len);
    out.items.push_back({static_cast<double>(l), static_cast<double>(l + len),
                         static_cast<double>(rng.uniform_int(1, 10))});
  }
  return out;
}

KnapsackInstance random_knapsack(std::size_t n, RandomStream& rng, std::int64_t capacity) {
  KnapsackInstance out;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < n; ++i) {
    out.costs.push_back(rng.uniform_int(1, 10));
    out.weights.push_back(static_cast<double>(rng.uniform_int(1, 20)));
    total += out.costs.back();
  }
  out.capacity = capacity > 0 ? capacity : std::max<std::int64_t>(1, total / 2);
  return out;
}

std::string random_string(std::size_t n, const std::string& alphabet, RandomStream& rng) {
  std::string s;
  for (std::size_t i = 0; i < n; ++i)
    s.push_back(alphabet[rng.uniform_int(0, static_cast<std::int64_t>(alphabet.size()) - 1)]);
  return s;
}

LcsInstance random_lcs(std::size_t n, RandomStream& rng, std::size_t strings,
                       const std::string& alphabet) {
  LcsInstance out;
  for (std::size_t t = 0; t < strings; ++t) out.strings.push_back(random_string(n, alphabet, rng));
  return out;
}

LpsInstance random_lps(std::size_t n, RandomStream& rng, const std::string& alphabet) {
  return LpsInstance{random_string(n, alphabet, rng)};
}

RnaInstance random_rna(std::size_t n, RandomStream& rng) {
  return RnaInstance{random_string(n, "ACGU", rng),
                     {{'A', 'U'}, {'U', 'A'}, {'C', 'G'}, {'G', 'C'}, {'G', 'U'}, {'U', 'G'}}};
}

DagInstance random_dag_instance(std::size_t m, RandomStream& rng, double edge_probability) {
  DagInstance out;
  for (std::size_t v = 0; v < m; ++v)
    out.weights.push_back(static_cast<double>(rng.uniform_int(0, 10)));
  for (std::size_t u = 0; u < m; ++u)
    for (std::size_t v = u + 1; v < m; ++v)
      if (rng.uniform01() < edge_probability)
        out.edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
  return out;
}

ProblemInstance generate(const GeneratorSpec& spec) {
  RandomStream rng(spec.seed);
  const std::size_t n = spec.size;
  const std::string& f = spec.family;
  if (f == "random-lis") return random_lis(n, rng);
  if (f == "adversarial-lis") return adversarial_lis(n, rng);
  if (f == "random-intervals") return random_intervals(n, rng);
  if (f == "random-knapsack") return random_knapsack(n, rng);
  if (f == "random-rna") return random_rna(n, rng);
  if (f == "random-dag") return random_dag_instance(n, rng);
  if (f == "random-strings") {
    switch (spec.problem.value_or(ProblemKind::kLps)) {
      case ProblemKind::kLcs: return random_lcs(n, rng);
      case ProblemKind::kLps: return random_lps(n, rng);
      case ProblemKind::kRna: return random_rna(n, rng);
      default: throw UnknownFamily("random-strings generates lcs, lps or rna instances");
    }
  }
  throw UnknownFamily("unknown generator family '" + f + "'");
}

}  // namespace stabledp
