#include "stabledp/reductions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "stabledp/errors.hpp"
#include "stabledp/rna.hpp"

namespace stabledp {
namespace {

std::vector<std::vector<VertexId>> singletons(std::size_t m) {
  std::vector<std::vector<VertexId>> sets(m);
  for (std::size_t v = 0; v < m; ++v) sets[v] = {static_cast<VertexId>(v)};
  return sets;
}

// Saturating product of sizes, for cap checks.
std::size_t capped_product(const std::vector<std::size_t>& sizes) {
  std::size_t p = 1;
  for (std::size_t s : sizes) {
    if (s == 0) return 0;
    if (p > std::numeric_limits<std::size_t>::max() / s)
      return std::numeric_limits<std::size_t>::max();
    p *= s;
  }
  return p;
}

void check_lcs(const LcsInstance& instance, const SizeCaps& caps) {
  if (instance.strings.size() < 2) throw InvalidArgument("LCS needs at least two strings");
  std::vector<std::size_t> sizes;
  for (const auto& s : instance.strings) sizes.push_back(s.size() + 1);
  if (capped_product(sizes) > caps.max_states) {
    throw InstanceTooLarge("LCS state count exceeds cap " + std::to_string(caps.max_states));
  }
}

void check_knapsack(const KnapsackInstance& k, const SizeCaps& caps) {
  if (k.costs.size() != k.weights.size())
    throw InvalidArgument("knapsack costs and weights differ in length");
  if (k.capacity < 1) throw InvalidArgument("knapsack capacity must be >= 1");
  for (auto c : k.costs)
    if (c < 1) throw InvalidArgument("knapsack costs must be >= 1");
  for (double w : k.weights)
    if (!std::isfinite(w) || w < 0) throw InvalidArgument("knapsack weights must be >= 0");
  if (capped_product({k.costs.size(), static_cast<std::size_t>(k.capacity)}) > caps.max_states) {
    throw InstanceTooLarge("knapsack n*C exceeds cap " + std::to_string(caps.max_states));
  }
}

}  // namespace

Reduction lis_graph(const LisInstance& instance, const SizeCaps& caps) {
  const auto& a = instance.sequence;
  const std::size_t n = a.size();
  std::vector<std::vector<VertexId>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (a[i] < a[j]) succ[i].push_back(static_cast<VertexId>(j));
  Reduction red;
  red.kind = ProblemKind::kLis;
  red.dag = TransitiveDag::from_closed_successors(std::vector<double>(n, 1.0),
                                                  std::move(succ), caps.dense_cap);
  red.family = AntichainFamily(red.dag, singletons(n), 1);
  for (std::size_t i = 0; i < n; ++i) red.labels.push_back({static_cast<int>(i + 1)});
  return red;
}

Reduction interval_graph(const IntervalInstance& instance, const SizeCaps& caps) {
  const auto& items = instance.items;
  const std::size_t n = items.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& x = items[i];
    if (!std::isfinite(x.l) || !std::isfinite(x.r) || !(x.l < x.r) || !std::isfinite(x.w) ||
        x.w < 0) {
      throw MalformedInterval("item " + std::to_string(i + 1) + " needs l < r and w >= 0");
    }
    w[i] = x.w;
  }
  std::vector<std::vector<VertexId>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (items[i].r <= items[j].l) succ[i].push_back(static_cast<VertexId>(j));
  Reduction red;
  red.kind = ProblemKind::kIntervals;
  red.dag = TransitiveDag::from_closed_successors(std::move(w), std::move(succ), caps.dense_cap);
  red.family = AntichainFamily(red.dag, singletons(n), 1);
  for (std::size_t i = 0; i < n; ++i) red.labels.push_back({static_cast<int>(i + 1)});
  return red;
}

Reduction lcs_graph(const LcsInstance& instance, const SizeCaps& caps) {
  check_lcs(instance, caps);
  const auto& strings = instance.strings;
  const std::size_t k = strings.size();
  Reduction red;
  red.kind = ProblemKind::kLcs;
  std::vector<int> p(k, 1);
  bool any = true;
  for (const auto& s : strings) any = any && !s.empty();
  while (any) {
    bool match = true;
    for (std::size_t t = 1; t < k && match; ++t)
      match = strings[t][p[t] - 1] == strings[0][p[0] - 1];
    if (match) red.labels.push_back(p);
    std::size_t t = k;
    while (t > 0) {
      --t;
      if (++p[t] <= static_cast<int>(strings[t].size())) break;
      p[t] = 1;
      if (t == 0) any = false;
    }
  }
  const std::size_t m = red.labels.size();
  std::vector<std::vector<VertexId>> succ(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      bool less = true;
      for (std::size_t t = 0; t < k && less; ++t) less = red.labels[a][t] < red.labels[b][t];
      if (less) succ[a].push_back(static_cast<VertexId>(b));
    }
  red.dag = TransitiveDag::from_closed_successors(std::vector<double>(m, 1.0), std::move(succ),
                                                  caps.dense_cap);
  std::vector<std::vector<VertexId>> sets;
  for (std::size_t t = 0; t < k; ++t) {
    for (std::size_t j = 1; j <= strings[t].size(); ++j) {
      std::vector<VertexId> s;
      for (std::size_t v = 0; v < m; ++v)
        if (red.labels[v][t] == static_cast<int>(j)) s.push_back(static_cast<VertexId>(v));
      sets.push_back(std::move(s));
    }
  }
  red.family = AntichainFamily(red.dag, std::move(sets), static_cast<int>(k));
  return red;
}

Reduction lps_graph(const LpsInstance& instance, const SizeCaps& caps) {
  const auto& a = instance.text;
  const int n = static_cast<int>(a.size());
  Reduction red;
  red.kind = ProblemKind::kLps;
  std::vector<double> w;
  for (int p = 1; p <= n; ++p)
    for (int q = p; q <= n; ++q)
      if (a[p - 1] == a[q - 1]) {
        red.labels.push_back({p, q});
        w.push_back(p < q ? 2.0 : 1.0);
      }
  const std::size_t m = red.labels.size();
  std::vector<std::vector<VertexId>> succ(m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const auto& o = red.labels[x];
      const auto& i = red.labels[y];
      if (o[0] < i[0] && i[0] <= i[1] && i[1] < o[1]) succ[x].push_back(static_cast<VertexId>(y));
    }
  red.dag = TransitiveDag::from_closed_successors(std::move(w), std::move(succ), caps.dense_cap);
  std::vector<std::vector<VertexId>> sets(n);
  for (std::size_t v = 0; v < m; ++v) {
    const auto& lab = red.labels[v];
    sets[lab[0] - 1].push_back(static_cast<VertexId>(v));
    if (lab[1] != lab[0]) sets[lab[1] - 1].push_back(static_cast<VertexId>(v));
  }
  red.family = AntichainFamily(red.dag, std::move(sets), 2);
  return red;
}

Reduction knapsack_graph(const KnapsackInstance& k, const SizeCaps& caps) {
  check_knapsack(k, caps);
  const int n = static_cast<int>(k.costs.size());
  const int cap = static_cast<int>(k.capacity);
  Reduction red;
  red.kind = ProblemKind::kKnapsack;
  std::vector<double> w;
  std::vector<std::vector<VertexId>> sets(n);
  for (int i = 1; i <= n; ++i) {
    for (std::int64_t p = k.costs[i - 1]; p <= cap; ++p) {
      sets[i - 1].push_back(static_cast<VertexId>(red.labels.size()));
      red.labels.push_back({i, static_cast<int>(p)});
      w.push_back(k.weights[i - 1]);
    }
  }
  const std::size_t m = red.labels.size();
  std::vector<std::vector<VertexId>> succ(m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y) {
      const auto& a = red.labels[x];
      const auto& b = red.labels[y];
      if (a[0] < b[0] && a[1] + k.costs[b[0] - 1] <= b[1]) succ[x].push_back(static_cast<VertexId>(y));
    }
  red.dag = TransitiveDag::from_closed_successors(std::move(w), std::move(succ), caps.dense_cap);
  red.family = AntichainFamily(red.dag, std::move(sets), 1);
  return red;
}

Reduction dag_graph(const DagInstance& instance, const SizeCaps& caps) {
  Reduction red;
  red.kind = ProblemKind::kDag;
  red.dag = TransitiveDag::build(instance.weights, instance.edges, caps.dense_cap);
  auto sets = instance.missing_sets.empty() ? singletons(instance.weights.size())
                                            : instance.missing_sets;
  red.family = AntichainFamily(red.dag, std::move(sets), instance.multiplicity);
  for (std::size_t v = 0; v < instance.weights.size(); ++v)
    red.labels.push_back({static_cast<int>(v)});
  return red;
}

Reduction build_reduction(const ProblemInstance& instance, const SizeCaps& caps,
                          std::optional<double> rna_list_bound) {
  switch (kind_of(instance)) {
    case ProblemKind::kLis: return lis_graph(std::get<LisInstance>(instance), caps);
    case ProblemKind::kIntervals: return interval_graph(std::get<IntervalInstance>(instance), caps);
    case ProblemKind::kLcs: return lcs_graph(std::get<LcsInstance>(instance), caps);
    case ProblemKind::kLps: return lps_graph(std::get<LpsInstance>(instance), caps);
    case ProblemKind::kKnapsack: return knapsack_graph(std::get<KnapsackInstance>(instance), caps);
    case ProblemKind::kDag: return dag_graph(std::get<DagInstance>(instance), caps);
    case ProblemKind::kRna:
      if (!rna_list_bound) throw InvalidArgument("RNA reduction needs a list-length bound");
      return build_rna_graph(std::get<RnaInstance>(instance), *rna_list_bound, caps).reduction;
  }
  throw InvalidArgument("unknown problem");
}

Solution decode(const Reduction& reduction, const ChainSolution& chain) {
  Solution out;
  for (VertexId v : chain.vertices) {
    const auto& lab = reduction.labels.at(v);
    switch (reduction.kind) {
      case ProblemKind::kLcs:
        out.push_back(lab);
        break;
      case ProblemKind::kLps:
        out.push_back({lab[0]});
        out.push_back({lab[1]});
        break;
      case ProblemKind::kRna: {
        const TripleList list = decode_list(lab);
        const Triple& last = list.back();
        const PseudoInterval& x = last.light.empty() ? last.heavy : last.light;
        out.push_back({x.l, x.r});
        break;
      }
      default:
        out.push_back({lab[0]});
    }
  }
  normalize(out);
  return out;
}

std::vector<int> shift_label(ProblemKind kind, const std::vector<int>& label,
                             const Deletion& d) {
  std::vector<int> out = label;
  auto shift = [&](int& x) {
    if (x == d.index) throw InvalidArgument("label refers to the deleted element");
    if (x > d.index) --x;
  };
  switch (kind) {
    case ProblemKind::kLis:
    case ProblemKind::kIntervals:
    case ProblemKind::kKnapsack:
      shift(out[0]);
      break;
    case ProblemKind::kLcs:
      shift(out.at(d.slot));
      break;
    case ProblemKind::kLps:
      shift(out[0]);
      shift(out[1]);
      break;
    case ProblemKind::kRna:
      for (int& x : out)
        if (x > 0) shift(x);
      break;
    case ProblemKind::kDag:
      throw InvalidArgument("raw DAG labels carry no index structure");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exact oracles.

namespace {

OracleResult lis_oracle(const LisInstance& instance) {
  const auto& a = instance.sequence;
  std::vector<std::int64_t> tails;
  std::vector<int> tail_index, parent(a.size(), -1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto pos = std::lower_bound(tails.begin(), tails.end(), a[i]) - tails.begin();
    if (pos > 0) parent[i] = tail_index[pos - 1];
    if (static_cast<std::size_t>(pos) == tails.size()) {
      tails.push_back(a[i]);
      tail_index.push_back(static_cast<int>(i));
    } else {
      tails[pos] = a[i];
      tail_index[pos] = static_cast<int>(i);
    }
  }
  OracleResult r;
  r.objective = static_cast<double>(tails.size());
  for (int i = tails.empty() ? -1 : tail_index.back(); i >= 0; i = parent[i])
    r.solution.push_back({i + 1});
  normalize(r.solution);
  return r;
}

OracleResult interval_oracle(const IntervalInstance& instance) {
  interval_graph(instance);  // validation
  const auto& items = instance.items;
  const std::size_t n = items.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return items[x].r < items[y].r; });
  std::vector<double> ends(n);
  for (std::size_t j = 0; j < n; ++j) ends[j] = items[order[j]].r;
  // best[j]: optimum over the first j intervals by right endpoint.
  std::vector<double> best(n + 1, 0.0);
  std::vector<std::size_t> compat(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& x = items[order[j]];
    compat[j] = std::upper_bound(ends.begin(), ends.begin() + j, x.l) - ends.begin();
    best[j + 1] = std::max(best[j], x.w + best[compat[j]]);
  }
  OracleResult r;
  r.objective = best[n];
  for (std::size_t j = n; j > 0;) {
    const auto& x = items[order[j - 1]];
    if (x.w + best[compat[j - 1]] >= best[j] && best[j] > best[j - 1]) {
      r.solution.push_back({static_cast<int>(order[j - 1] + 1)});
      j = compat[j - 1];
    } else {
      --j;
    }
  }
  normalize(r.solution);
  return r;
}

OracleResult lcs_oracle(const LcsInstance& instance, const SizeCaps& caps) {
  check_lcs(instance, caps);
  const auto& s = instance.strings;
  const std::size_t k = s.size();
  std::vector<std::size_t> dims(k), stride(k);
  std::size_t total = 1;
  for (std::size_t t = k; t-- > 0;) {
    dims[t] = s[t].size() + 1;
    stride[t] = total;
    total *= dims[t];
  }
  std::vector<int> table(total, 0);
  std::vector<std::size_t> idx(k, 0);
  auto all_match = [&](const std::vector<std::size_t>& p) {
    for (std::size_t t = 0; t < k; ++t)
      if (p[t] == 0) return false;
    for (std::size_t t = 1; t < k; ++t)
      if (s[t][p[t] - 1] != s[0][p[0] - 1]) return false;
    return true;
  };
  std::size_t diag = 0;
  for (std::size_t t = 0; t < k; ++t) diag += stride[t];
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rem = flat;
    for (std::size_t t = 0; t < k; ++t) {
      idx[t] = rem / stride[t];
      rem %= stride[t];
    }
    int best = 0;
    if (all_match(idx)) {
      best = table[flat - diag] + 1;
    } else {
      for (std::size_t t = 0; t < k; ++t)
        if (idx[t] > 0) best = std::max(best, table[flat - stride[t]]);
    }
    table[flat] = best;
  }
  OracleResult r;
  r.objective = table[total - 1];
  for (std::size_t t = 0; t < k; ++t) idx[t] = dims[t] - 1;
  std::size_t flat = total - 1;
  while (table[flat] > 0) {
    if (all_match(idx)) {
      Element e;
      for (std::size_t t = 0; t < k; ++t) e.push_back(static_cast<int>(idx[t]));
      r.solution.push_back(e);
      for (std::size_t t = 0; t < k; ++t) --idx[t];
      flat -= diag;
      continue;
    }
    for (std::size_t t = 0; t < k; ++t) {
      if (idx[t] > 0 && table[flat - stride[t]] == table[flat]) {
        --idx[t];
        flat -= stride[t];
        break;
      }
    }
  }
  normalize(r.solution);
  return r;
}

OracleResult lps_oracle(const LpsInstance& instance) {
  const auto& a = instance.text;
  const int n = static_cast<int>(a.size());
  OracleResult r;
  if (n == 0) return r;
  std::vector<std::vector<int>> best(n + 1, std::vector<int>(n + 1, 0));
  for (int len = 1; len <= n; ++len) {
    for (int i = 0; i + len <= n; ++i) {
      const int j = i + len - 1;
      if (len == 1) {
        best[i][j] = 1;
      } else if (a[i] == a[j]) {
        best[i][j] = 2 + (len > 2 ? best[i + 1][j - 1] : 0);
      } else {
        best[i][j] = std::max(best[i + 1][j], best[i][j - 1]);
      }
    }
  }
  r.objective = best[0][n - 1];
  int i = 0, j = n - 1;
  while (i <= j) {
    if (i == j) {
      r.solution.push_back({i + 1});
      break;
    }
    if (a[i] == a[j]) {
      r.solution.push_back({i + 1});
      r.solution.push_back({j + 1});
      ++i;
      --j;
    } else if (best[i + 1][j] >= best[i][j - 1]) {
      ++i;
    } else {
      --j;
    }
  }
  normalize(r.solution);
  return r;
}

OracleResult knapsack_oracle(const KnapsackInstance& k, const SizeCaps& caps) {
  check_knapsack(k, caps);
  const std::size_t n = k.costs.size();
  const std::size_t cap = static_cast<std::size_t>(k.capacity);
  std::vector<std::vector<double>> best(n + 1, std::vector<double>(cap + 1, 0.0));
  for (std::size_t i = 1; i <= n; ++i) {
    const std::size_t c = static_cast<std::size_t>(k.costs[i - 1]);
    for (std::size_t b = 0; b <= cap; ++b) {
      best[i][b] = best[i - 1][b];
      if (c <= b) best[i][b] = std::max(best[i][b], best[i - 1][b - c] + k.weights[i - 1]);
    }
  }
  OracleResult r;
  r.objective = best[n][cap];
  for (std::size_t i = n, b = cap; i > 0; --i) {
    if (best[i][b] != best[i - 1][b]) {
      r.solution.push_back({static_cast<int>(i)});
      b -= static_cast<std::size_t>(k.costs[i - 1]);
    }
  }
  normalize(r.solution);
  return r;
}

}  // namespace

OracleResult exact_oracle(const ProblemInstance& instance, const SizeCaps& caps) {
  switch (kind_of(instance)) {
    case ProblemKind::kLis: return lis_oracle(std::get<LisInstance>(instance));
    case ProblemKind::kIntervals: return interval_oracle(std::get<IntervalInstance>(instance));
    case ProblemKind::kLcs: return lcs_oracle(std::get<LcsInstance>(instance), caps);
    case ProblemKind::kLps: return lps_oracle(std::get<LpsInstance>(instance));
    case ProblemKind::kKnapsack: return knapsack_oracle(std::get<KnapsackInstance>(instance), caps);
    case ProblemKind::kRna: {
      const auto& rna = std::get<RnaInstance>(instance);
      OracleResult r;
      r.solution = to_solution(nussinov_fold(rna));
      r.objective = static_cast<double>(r.solution.size());
      return r;
    }
    case ProblemKind::kDag: {
      const Reduction red = dag_graph(std::get<DagInstance>(instance), caps);
      const ChainSolution best = opt_chain(SubUniverse::all(red.dag));
      OracleResult r;
      r.objective = best.total_weight;
      r.solution = decode(red, best);
      return r;
    }
  }
  throw InvalidArgument("unknown problem");
}

}  // namespace stabledp
