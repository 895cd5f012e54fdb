#include <doctest.h>

#include <set>

#include "isomorphism.hpp"
#include "problem_oracles.hpp"
#include "stabledp/errors.hpp"
#include "stabledp/generators.hpp"
#include "stabledp/reductions.hpp"

using namespace stabledp;
namespace t = stabledp::testing;

namespace {

double chain_opt(const Reduction& red) { return opt_chain(SubUniverse::all(red.dag)).total_weight; }

std::vector<ProblemInstance> small_instances(RandomStream& rng, int per_kind, int max_n) {
  std::vector<ProblemInstance> out;
  for (int i = 0; i < per_kind; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(0, max_n));
    out.push_back(random_lis(n, rng));
    out.push_back(random_intervals(n, rng));
    out.push_back(random_lcs(n, rng, 2, i % 2 ? "ab" : "abc"));
    out.push_back(random_lps(n, rng, i % 2 ? "ab" : "abc"));
    out.push_back(random_knapsack(n, rng, rng.uniform_int(1, 20)));
  }
  return out;
}

double brute(const ProblemInstance& inst) {
  switch (kind_of(inst)) {
    case ProblemKind::kLis: return t::brute_lis(std::get<LisInstance>(inst).sequence);
    case ProblemKind::kIntervals: return t::brute_intervals(std::get<IntervalInstance>(inst).items);
    case ProblemKind::kLcs: return t::brute_lcs(std::get<LcsInstance>(inst).strings);
    case ProblemKind::kLps: return t::brute_lps(std::get<LpsInstance>(inst).text);
    case ProblemKind::kKnapsack: return t::brute_knapsack(std::get<KnapsackInstance>(inst));
    default: return -1;
  }
}

// Candidate solution elements, for exhaustive feasibility enumeration.
std::vector<Element> candidate_elements(const ProblemInstance& inst) {
  std::vector<Element> out;
  if (kind_of(inst) == ProblemKind::kLcs) {
    const auto& s = std::get<LcsInstance>(inst).strings;
    for (int i = 1; i <= static_cast<int>(s[0].size()); ++i)
      for (int j = 1; j <= static_cast<int>(s[1].size()); ++j)
        if (s[0][i - 1] == s[1][j - 1]) out.push_back({i, j});
    return out;
  }
  for (const auto& d : deletions_of(inst)) out.push_back({d.index});
  return out;
}

}  // namespace

TEST_CASE("LIS reduction") {
  const auto red = lis_graph({{2, 1, 3}});
  CHECK(red.dag.edge_list() == std::vector<Edge>{{0, 2}, {1, 2}});
  CHECK(chain_opt(red) == 2);
  CHECK(chain_opt(lis_graph({{3, 2, 1}})) == 1);
  CHECK(red.family.multiplicity() == 1);
}

TEST_CASE("interval reduction") {
  const auto red = interval_graph({{{0, 2, 1}, {1, 3, 1}, {2, 4, 1}}});
  CHECK(red.dag.edge_list() == std::vector<Edge>{{0, 2}});
  CHECK(chain_opt(red) == 2);
  const auto overlap = interval_graph({{{0, 5, 2}, {1, 6, 9}, {2, 7, 4}}});
  CHECK(overlap.dag.edge_count() == 0);
  CHECK(chain_opt(overlap) == 9);
  CHECK_THROWS_AS(interval_graph({{{3, 3, 1}}}), MalformedInterval);
  CHECK_THROWS_AS(interval_graph({{{4, 3, 1}}}), MalformedInterval);
}

TEST_CASE("LCS reduction") {
  const auto red = lcs_graph({{"ab", "ba"}});
  CHECK(red.labels == std::vector<std::vector<int>>{{1, 2}, {2, 1}});
  CHECK(red.dag.edge_count() == 0);
  CHECK(chain_opt(red) == 1);
  CHECK(chain_opt(lcs_graph({{"abc", "abc"}})) == 3);
  CHECK(red.family.multiplicity() == 2);
  CHECK(red.family.size() == 4);
  CHECK_THROWS_AS(lcs_graph({{"abc"}}), InvalidArgument);
  SizeCaps tiny;
  tiny.max_states = 10;
  CHECK_THROWS_AS(lcs_graph({{"abcd", "abcd"}}, tiny), InstanceTooLarge);
  CHECK(chain_opt(lcs_graph({{"abcab", "bacba", "abba"}})) ==
        t::brute_lcs({"abcab", "bacba", "abba"}));
}

TEST_CASE("LPS reduction") {
  const auto red = lps_graph({"aba"});
  CHECK(red.labels == std::vector<std::vector<int>>{{1, 1}, {1, 3}, {2, 2}, {3, 3}});
  CHECK(red.dag.has_edge(1, 2));
  CHECK(red.dag.edge_count() == 1);
  CHECK(chain_opt(red) == 3);
  CHECK(decode(red, opt_chain(SubUniverse::all(red.dag))) == Solution{{1}, {2}, {3}});
  CHECK(chain_opt(lps_graph({"ab"})) == 1);
}

TEST_CASE("knapsack reduction") {
  const auto red = knapsack_graph({{1, 2}, {10, 1}, 2});
  CHECK(chain_opt(red) == 10);
  CHECK(red.dag.edge_count() == 0);
  CHECK(chain_opt(knapsack_graph({{5}, {7}, 5})) == 7);
  CHECK_THROWS_AS(knapsack_graph({{0}, {7}, 5}), InvalidArgument);
  SizeCaps tiny;
  tiny.max_states = 10;
  CHECK_THROWS_AS(knapsack_graph({{1, 1}, {1, 1}, 6}, tiny), InstanceTooLarge);
}

TEST_CASE("exact oracles: trivial cases") {
  CHECK(exact_oracle(LisInstance{{1, 2, 3}}).objective == 3);
  const auto over = exact_oracle(KnapsackInstance{{9}, {4}, 5});
  CHECK(over.objective == 0);
  CHECK(over.solution.empty());
  CHECK(exact_oracle(LisInstance{}).objective == 0);
  CHECK(exact_oracle(LpsInstance{""}).objective == 0);
}

TEST_CASE("reductions: structure, oracle and brute force agree") {
  RandomStream rng(101);
  for (const auto& inst : small_instances(rng, 100, 8)) {
    const Reduction red = build_reduction(inst);
    CHECK(red.dag.is_transitive());
    CHECK(red.dag.is_acyclic());
    const auto oracle = exact_oracle(inst);
    CHECK(is_feasible(inst, oracle.solution));
    CHECK(objective(inst, oracle.solution) == doctest::Approx(oracle.objective));
    const double b = brute(inst);
    CHECK(oracle.objective == doctest::Approx(b));
    const auto best = opt_chain(SubUniverse::all(red.dag));
    CHECK(best.total_weight == doctest::Approx(b));
    const Solution dec = decode(red, best);
    CHECK(is_feasible(inst, dec));
    CHECK(objective(inst, dec) == doctest::Approx(best.total_weight));
  }
}

TEST_CASE("reductions: weight preservation and surjectivity, exhaustive") {
  RandomStream rng(202);
  for (const auto& inst : small_instances(rng, 15, 5)) {
    const Reduction red = build_reduction(inst);
    std::set<Solution> decoded;
    bool all_ok = true;
    t::for_each_chain(red.dag, [&](const std::vector<VertexId>& chain) {
      ChainSolution c{chain, 0.0};
      for (VertexId v : chain) c.total_weight += red.dag.weight(v);
      const Solution s = decode(red, c);
      if (!is_feasible(inst, s) || std::abs(objective(inst, s) - c.total_weight) > 1e-9)
        all_ok = false;
      decoded.insert(s);
    });
    CHECK(all_ok);
    const auto elems = candidate_elements(inst);
    REQUIRE(elems.size() <= 20);
    for (std::uint32_t mask = 0; mask < (1U << elems.size()); ++mask) {
      Solution s;
      for (std::size_t e = 0; e < elems.size(); ++e)
        if (mask >> e & 1U) s.push_back(elems[e]);
      normalize(s);
      if (is_feasible(inst, s)) CHECK(decoded.count(s) == 1);
    }
  }
}

TEST_CASE("reductions: deletion isomorphism") {
  RandomStream rng(303);
  for (const auto& inst : small_instances(rng, 20, 7)) {
    CHECK(t::deletion_isomorphism_failure(inst) == "");
  }
}

TEST_CASE("deletions and index restoration") {
  const ProblemInstance lis = LisInstance{{5, 1, 4, 2}};
  const auto d = deletions_of(lis);
  CHECK(d.size() == 4);
  const auto del = apply_deletion(lis, d[1]);
  CHECK(std::get<LisInstance>(del).sequence == std::vector<std::int64_t>{5, 4, 2});
  CHECK(restore_indices(lis, {{1}, {2}}, d[1]) == Solution{{1}, {3}});

  const ProblemInstance lcs = LcsInstance{{"ab", "abc"}};
  const auto dl = deletions_of(lcs);
  CHECK(dl.size() == 5);
  CHECK(dl[2].slot == 1);
  CHECK(dl[2].index == 1);
  CHECK(restore_indices(lcs, {{1, 1}, {2, 2}}, dl[2]) == Solution{{1, 2}, {2, 3}});
  CHECK(std::get<LcsInstance>(apply_deletion(lcs, dl[2])).strings[1] == "bc");

  const ProblemInstance rna = RnaInstance{"abab", {{'a', 'b'}}};
  CHECK(restore_indices(rna, {{1, 2}}, {0, 2}) == Solution{{1, 3}});
  CHECK_THROWS_AS(apply_deletion(lis, {0, 9}), BadIndex);
}

TEST_CASE("raw DAG problems delete whole missing sets") {
  DagInstance d;
  d.weights = {1, 2, 3, 4};
  d.edges = {{0, 1}, {1, 2}, {2, 3}};
  d.missing_sets = {{0}, {1}, {2}, {3}};
  const ProblemInstance inst = d;
  CHECK(exact_oracle(inst).objective == 10);
  const auto del = std::get<DagInstance>(apply_deletion(inst, {0, 1}));
  CHECK(del.weights == std::vector<double>{1, 3, 4});
  // Closure survives the removal of the middle vertex.
  CHECK(exact_oracle(del).objective == 8);
  CHECK(restore_indices(inst, {{0}, {1}, {2}}, {0, 1}) == Solution{{0}, {2}, {3}});
}
