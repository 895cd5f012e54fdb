// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Tolerances and sizes are fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "isomorphism.hpp"
#include "oracles.hpp"
#include "problem_oracles.hpp"
#include "stabledp/cli.hpp"
#include "stabledp/errors.hpp"
#include "stabledp/generators.hpp"
#include "stabledp/io.hpp"
#include "stabledp/reductions.hpp"
#include "stabledp/rna.hpp"
#include "stabledp/sensitivity.hpp"
#include "stabledp/stable_mwc.hpp"

using namespace stabledp;
namespace t = stabledp::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct MeanSem {
  double n = 0, sum = 0, sum2 = 0;
  void add(double x) {
    n += 1;
    sum += x;
    sum2 += x * x;
  }
  double mean() const { return sum / n; }
  double sem() const {
    if (n < 2) return 0.0;
    const double m = mean();
    return std::sqrt(std::max(0.0, (sum2 - n * m * m) / (n - 1)) / n);
  }
};

std::string binary_string(int n, unsigned bits) {
  std::string s;
  for (int i = 0; i < n; ++i) s.push_back(bits >> i & 1U ? 'b' : 'a');
  return s;
}

const std::vector<std::pair<char, char>> kAB{{'a', 'b'}, {'b', 'a'}};

double brute_objective(const ProblemInstance& inst) {
  switch (kind_of(inst)) {
    case ProblemKind::kLis: return t::brute_lis(std::get<LisInstance>(inst).sequence);
    case ProblemKind::kIntervals: return t::brute_intervals(std::get<IntervalInstance>(inst).items);
    case ProblemKind::kLcs: return t::brute_lcs(std::get<LcsInstance>(inst).strings);
    case ProblemKind::kLps: return t::brute_lps(std::get<LpsInstance>(inst).text);
    case ProblemKind::kKnapsack: return t::brute_knapsack(std::get<KnapsackInstance>(inst));
    case ProblemKind::kRna: return t::brute_rna_opt(std::get<RnaInstance>(inst));
    default: return -1;
  }
}

// ---------------------------------------------------------------------------

Outcome mwc_core_oracle() {
  RandomStream rng(1001);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = static_cast<std::size_t>(rng.uniform_int(1, 9));
    const auto dag = t::random_dag(rng, m, rng.uniform(0.1, 0.7), 10.0);
    const double got = opt_chain(SubUniverse::all(dag)).total_weight;
    const double want = t::brute_force_chain(dag, (1U << m) - 1);
    if (std::abs(got - want) > 1e-9 * std::max(1.0, want)) ++mismatches;
  }
  return {mismatches == 0, fmt("%d/200 mismatches", mismatches)};
}

Outcome reductions_oracle() {
  RandomStream rng(1002);
  int mismatches = 0, total = 0;
  for (ProblemKind kind : {ProblemKind::kLis, ProblemKind::kIntervals, ProblemKind::kLcs,
                           ProblemKind::kLps, ProblemKind::kKnapsack}) {
    for (int i = 0; i < 100; ++i) {
      const auto n = static_cast<std::size_t>(rng.uniform_int(0, 8));
      ProblemInstance inst;
      switch (kind) {
        case ProblemKind::kLis: inst = random_lis(n, rng); break;
        case ProblemKind::kIntervals: inst = random_intervals(n, rng); break;
        case ProblemKind::kLcs: inst = random_lcs(n, rng, 2, i % 2 ? "ab" : "abc"); break;
        case ProblemKind::kLps: inst = random_lps(n, rng, i % 2 ? "ab" : "abc"); break;
        default: inst = random_knapsack(n, rng, rng.uniform_int(1, 20)); break;
      }
      const Reduction red = build_reduction(inst);
      const double chain = opt_chain(SubUniverse::all(red.dag)).total_weight;
      const double oracle = exact_oracle(inst).objective;
      const double brute = brute_objective(inst);
      ++total;
      if (std::abs(chain - oracle) > 1e-9 * std::max(1.0, brute) ||
          std::abs(oracle - brute) > 1e-9 * std::max(1.0, brute))
        ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%d/%d mismatches across 5 problems", mismatches, total)};
}

Outcome central_vertex() {
  RandomStream rng(1003);
  long visited = 0, violations = 0;
  for (int run = 0; run < 1000; ++run) {
    TransitiveDag dag;
    if (run % 2) {
      dag = t::random_dag(rng, static_cast<std::size_t>(rng.uniform_int(1, 60)), rng.uniform(0.02, 0.6));
    } else {
      dag = build_reduction(random_lis(static_cast<std::size_t>(rng.uniform_int(1, 60)), rng)).dag;
    }
    RecursionTrace trace;
    rec(SubUniverse::all(dag), rng.uniform(0.005, 0.2), RandomStream(run), &trace);
    for (const auto& e : trace.entries) {
      if (e.universe.empty()) continue;
      ++visited;
      if (std::abs(e.max_r_candidates - e.opt) > 1e-9 * std::max(1.0, e.opt)) ++violations;
    }
  }
  return {violations == 0, fmt("%ld violations over %ld visited (U,d)", violations, visited)};
}

Outcome approximation() {
  RandomStream gen(1004);
  const ProblemInstance inst = random_lis(100, gen);
  const Reduction red = build_reduction(inst);
  const double opt = exact_oracle(inst).objective;
  MeanSem ratio;
  std::vector<MeanSem> by_depth;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    StableSolverConfig cfg;
    cfg.delta = 0.3;
    cfg.seed = seed;
    cfg.record_trace = true;
    const MwcResult res = mwc(red.dag, cfg);
    ratio.add(res.chain.total_weight / opt);
    for (const auto& e : res.trace->entries) {
      if (e.pivot < 0 || e.opt <= 0) continue;
      if (by_depth.size() <= static_cast<std::size_t>(e.depth)) by_depth.resize(e.depth + 1);
      by_depth[e.depth].add(e.pivot_r / e.opt - (1 - 2 * res.eps));
    }
  }
  bool levels_ok = true;
  int worst_level = -1;
  double worst = 1e18;
  for (std::size_t d = 0; d < by_depth.size(); ++d) {
    if (by_depth[d].n == 0) continue;
    const double margin = by_depth[d].mean() + 3 * by_depth[d].sem();
    if (margin < worst) {
      worst = margin;
      worst_level = static_cast<int>(d);
    }
    if (margin < 0) levels_ok = false;
  }
  const bool ratio_ok = ratio.mean() >= 0.7 - 3 * ratio.sem();
  return {ratio_ok && levels_ok,
          fmt("mean ratio %.4f (SEM %.4f, need >= 0.7); pivot score slack over %zu levels, "
              "tightest level %d at %+.4f",
              ratio.mean(), ratio.sem(), by_depth.size(), worst_level, worst)};
}

Outcome pivot_tv() {
  RandomStream rng(1005);
  int violations = 0;
  double worst = -1e18;
  for (int i = 0; i < 50; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(2, 30));
    const ProblemInstance inst =
        i % 2 ? ProblemInstance{random_intervals(n, rng)} : ProblemInstance{random_lis(n, rng)};
    const Reduction red = build_reduction(inst);
    const auto rep = average_pivot_tv(red.dag, red.family, 0.05);
    worst = std::max(worst, rep.average - rep.bound);
    if (rep.average > rep.bound + 1e-6) ++violations;
  }
  return {violations == 0, fmt("%d/50 violations; max(average - bound) = %.4f", violations, worst)};
}

Outcome sensitivity_scaling() {
  std::vector<double> xs, ys;
  std::string detail;
  bool below = true;
  for (std::size_t n : {50, 100, 200}) {
    RandomStream gen(1006 + n);
    SensitivityConfig cfg;
    cfg.samples = 200;
    cfg.seed = n;
    cfg.delta = 0.3;
    cfg.jobs = std::max(1U, std::thread::hardware_concurrency());
    const auto rep = average_sensitivity(random_lis(n, gen), cfg);
    const double l = std::log(static_cast<double>(n));
    const double cap = 10.0 / 0.3 * l * l * l;
    below = below && rep.average < cap;
    xs.push_back(std::log(l));
    ys.push_back(std::log(rep.average));
    detail += fmt("n=%zu avg %.3f (cap %.1f); ", n, rep.average, cap);
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  return {below && slope <= 3.5, detail + fmt("fitted exponent in ln n: %.3f", slope)};
}

Outcome rna_equivalence() {
  const int n = 8;
  const int bound = 3;
  int failures = 0;
  long chains_checked = 0, folds = 0;
  for (unsigned bits = 0; bits < (1U << n); ++bits) {
    const RnaInstance inst{binary_string(n, bits), kAB};
    const auto g = build_rna_graph(inst, bound);
    const auto& dag = g.reduction.dag;
    const double chain = opt_chain(SubUniverse::all(dag)).total_weight;
    const int nuss = nussinov_opt(inst);
    if (chain != nuss || nuss != t::brute_rna_opt(inst)) ++failures;

    // Each vertex contributes one pair; a chain decodes to a pseudoknot-free
    // structure exactly when every two of its vertices do.
    auto decodes = [&](const std::vector<TripleList>& lists) {
      try {
        const auto pairs = chain_to_pairs(lists);
        return pairs.size() == lists.size() && is_feasible(inst, to_solution(pairs));
      } catch (const InfeasibleChain&) {
        return false;
      }
    };
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
      if (!decodes({g.vertices[v]})) ++failures;
      for (VertexId w : dag.successors(static_cast<VertexId>(v))) {
        ++chains_checked;
        if (!decodes({g.vertices[v], g.vertices[w]})) ++failures;
      }
    }
    for (const auto& fold : t::all_foldings(inst)) {
      ++folds;
      const auto lists = make_chain(build_pair_tree(fold, n));
      if (chain_to_pairs(lists) != fold) ++failures;
      for (std::size_t k = 0; k < lists.size(); ++k) {
        if (!g.find(lists[k])) ++failures;
        if (k > 0 && !vertex_lex_lt(lists[k - 1], lists[k])) ++failures;
      }
    }
  }
  return {failures == 0, fmt("%d failures over 256 strings, %ld comparable pairs, %ld foldings",
                             failures, chains_checked, folds)};
}

Outcome order_axioms() {
  long failures = 0, triples_seen = 0;
  for (int n = 0; n <= 6; ++n) {
    const auto triples = all_well_ordered_triples(n);
    const std::size_t T = triples.size();
    triples_seen += static_cast<long>(T);
    std::vector<std::vector<bool>> le(T, std::vector<bool>(T));
    for (std::size_t x = 0; x < T; ++x)
      for (std::size_t y = 0; y < T; ++y) le[x][y] = triple_preceq(triples[x], triples[y]);
    for (std::size_t x = 0; x < T; ++x) {
      if (!le[x][x]) ++failures;
      for (std::size_t y = 0; y < T; ++y) {
        if (!le[x][y] || x == y) continue;
        if (le[y][x]) ++failures;
        for (std::size_t z = 0; z < T; ++z)
          if (le[y][z] && !le[x][z]) ++failures;
      }
    }
  }
  long graphs = 0;
  for (int n = 0; n <= 8; ++n) {
    const auto [lo, hi] = list_bound_range(n);
    for (unsigned bits = 0; bits < (1U << n); ++bits) {
      const RnaInstance inst{binary_string(n, bits), kAB};
      for (int b = static_cast<int>(std::floor(lo)); b < hi; ++b) {
        const auto g = build_rna_graph(inst, b);
        ++graphs;
        if (!g.reduction.dag.is_acyclic() || !g.reduction.dag.is_transitive()) ++failures;
      }
    }
  }
  return {failures == 0, fmt("%ld failures; %ld triples, %ld graphs", failures, triples_seen, graphs)};
}

Outcome pseudo_antichains() {
  long violations = 0, pairs = 0;
  int worst = 0;
  for (int n = 0; n <= 8; ++n) {
    const auto [lo, hi] = list_bound_range(n);
    for (unsigned bits = 0; bits < (1U << n); ++bits) {
      const RnaInstance inst{binary_string(n, bits), kAB};
      for (int b = static_cast<int>(std::floor(lo)); b < hi; ++b) {
        const auto g = build_rna_graph(inst, b);
        for (std::size_t v = 0; v < g.vertices.size(); ++v) {
          pairs += n;
          if (crossing_index_count(g, static_cast<VertexId>(v)) != 0) ++violations;
          const int both = both_sides_index_count(g, static_cast<VertexId>(v));
          worst = std::max(worst, both);
          if (both > 6 * b) ++violations;
        }
      }
    }
  }
  return {violations == 0,
          fmt("%ld violations over %ld (vertex, index) pairs; max two-sided count %d", violations,
              pairs, worst)};
}

Outcome deletion_isomorphism() {
  RandomStream rng(1010);
  int failures = 0, instances = 0;
  std::string first;
  for (int i = 0; i < 50; ++i) {
    const auto n = static_cast<std::size_t>(rng.uniform_int(0, 7));
    std::vector<std::pair<ProblemInstance, std::optional<double>>> cases = {
        {random_lis(n, rng), std::nullopt},
        {random_intervals(n, rng), std::nullopt},
        {random_lcs(n, rng, 2, "ab"), std::nullopt},
        {random_lps(n, rng, "abc"), std::nullopt},
        {random_knapsack(n, rng, rng.uniform_int(1, 12)), std::nullopt},
        {RnaInstance{random_string(n, "ab", rng), kAB}, 1.0 + i % 3},
    };
    for (const auto& [inst, bound] : cases) {
      ++instances;
      const std::string why = t::deletion_isomorphism_failure(inst, bound);
      if (!why.empty()) {
        ++failures;
        if (first.empty()) first = std::string(problem_name(kind_of(inst))) + ": " + why;
      }
    }
  }
  return {failures == 0, fmt("%d/%d instances fail%s%s", failures, instances,
                             first.empty() ? "" : "; first: ", first.c_str())};
}

Outcome em_machinery() {
  RandomStream rng(1011);
  auto subset = [&] {
    Solution s;
    for (int i = 1; i <= 5; ++i)
      if (rng.uniform01() < 0.5) s.push_back({i});
    return s;
  };
  auto dist = [&] {
    Distribution d;
    for (auto k = rng.uniform_int(1, 4); k > 0; --k) d.push_back({subset(), rng.uniform(0.1, 1.0)});
    return d;
  };
  int axiom_failures = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = dist(), y = dist(), z = dist();
    const double xy = exact_em(x, y);
    if (std::abs(xy - exact_em(y, x)) > 1e-9) ++axiom_failures;
    if (std::abs(exact_em(x, x)) > 1e-9) ++axiom_failures;
    if (xy > exact_em(x, z) + exact_em(z, y) + 1e-9) ++axiom_failures;
    if (xy < -1e-12) ++axiom_failures;
  }
  Solution one = {{1}}, three = {{1}, {2}, {3}}, two = {{2}};
  const Distribution a = {{one, 0.3}, {three, 0.7}};
  const Distribution b = {{one, 0.6}, {two, 0.4}};
  auto sampler = [](const Distribution& d) {
    return Sampler([d](RandomStream& r) { return r.uniform01() < d[0].mass ? d[0].solution : d[1].solution; });
  };
  const double exact = exact_em(a, b);
  MeanSem est;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomStream r(seed);
    est.add(empirical_em(sampler(a), sampler(b), 2000, r));
  }
  const double gap = std::abs(est.mean() - exact);
  return {axiom_failures == 0 && gap <= 0.05,
          fmt("%d axiom failures over 100 triples; empirical %.4f vs exact %.4f (gap %.4f)",
              axiom_failures, est.mean(), exact, gap)};
}

Outcome determinism() {
  auto cli = [](std::vector<std::string> args) {
    args.insert(args.begin(), "stabledp");
    std::vector<const char*> argv;
    for (const auto& s : args) argv.push_back(s.c_str());
    std::ostringstream out, err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return std::make_pair(code, out.str());
  };
  int mismatches = 0, runs = 0;
  const std::vector<std::vector<std::string>> configs = {
      {"--family", "random-lis", "--size", "50", "--seed", "3", "--samples", "200"},
      {"--family", "random-intervals", "--size", "20", "--seed", "4", "--samples", "50"},
      {"--family", "random-strings", "--problem", "lcs", "--size", "5", "--seed", "5", "--samples", "50"},
      {"--family", "random-knapsack", "--size", "8", "--seed", "6", "--samples", "50", "--solver", "naive"},
      {"--family", "random-rna", "--size", "7", "--seed", "7", "--samples", "30"},
  };
  for (const auto& cfg : configs) {
    std::string reference;
    for (const char* jobs : {"1", "2", "5", "16"}) {
      std::vector<std::string> args = {"sensitivity", "--jobs", jobs};
      args.insert(args.end(), cfg.begin(), cfg.end());
      const auto [code, out] = cli(args);
      ++runs;
      if (code != 0) ++mismatches;
      if (reference.empty()) reference = out;
      if (out != reference) ++mismatches;
    }
  }
  return {mismatches == 0, fmt("%d/%d runs differ from the --jobs 1 output", mismatches, runs)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "chain optimum matches exhaustive enumeration", 10, mwc_core_oracle},
      {2, "reductions match textbook DPs and brute force", 60, reductions_oracle},
      {3, "max r over candidate pivots equals the optimum", 0, central_vertex},
      {4, "approximation ratio and pivot score in expectation", 300, approximation},
      {5, "exact average pivot TV within bound at eps=0.05", 0, pivot_tv},
      {6, "average sensitivity scaling on random LIS", 1800, sensitivity_scaling},
      {7, "RNA graph, Nussinov and brute force agree (n=8)", 600, rna_equivalence},
      {8, "triple order is a partial order; graphs acyclic and transitive", 0, order_axioms},
      {9, "pseudo-antichain trichotomy and two-sided count", 0, pseudo_antichains},
      {10, "deletion isomorphism for every problem", 0, deletion_isomorphism},
      {11, "EM metric axioms and estimator convergence", 0, em_machinery},
      {12, "byte-identical reports across --jobs", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_s > 0 && secs > c.limit_s) {
      o.pass = false;
      o.detail += fmt("; runtime over %.0f s limit", c.limit_s);
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  C" << c.id << "  " << c.name << ": " << o.detail
              << fmt(" [%.2f s]", secs) << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/"
            << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
