#include "stabledp/problem.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "stabledp/errors.hpp"
#include "stabledp/rna.hpp"

namespace stabledp {

const char* problem_name(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::kLis: return "lis";
    case ProblemKind::kIntervals: return "intervals";
    case ProblemKind::kLcs: return "lcs";
    case ProblemKind::kLps: return "lps";
    case ProblemKind::kKnapsack: return "knapsack";
    case ProblemKind::kRna: return "rna";
    case ProblemKind::kDag: return "dag";
  }
  return "unknown";
}

ProblemKind problem_from_name(const std::string& name) {
  for (ProblemKind k : {ProblemKind::kLis, ProblemKind::kIntervals, ProblemKind::kLcs,
                        ProblemKind::kLps, ProblemKind::kKnapsack, ProblemKind::kRna,
                        ProblemKind::kDag}) {
    if (name == problem_name(k)) return k;
  }
  throw ParseError("unknown problem '" + name + "'");
}

bool RnaInstance::relates(char a, char b) const {
  for (const auto& [x, y] : relation)
    if (x == a && y == b) return true;
  return false;
}

ProblemKind kind_of(const ProblemInstance& instance) {
  return static_cast<ProblemKind>(instance.index());
}

void normalize(Solution& solution) {
  std::sort(solution.begin(), solution.end());
  solution.erase(std::unique(solution.begin(), solution.end()), solution.end());
}

SizeCaps SizeCaps::from_environment(SizeCaps base) {
  if (const char* env = std::getenv("STABLEDP_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) base.override_with(v);
  }
  return base;
}

void SizeCaps::override_with(std::size_t value) { max_states = value; }

std::size_t element_count(const ProblemInstance& instance) {
  return deletions_of(instance).size();
}

std::vector<Deletion> deletions_of(const ProblemInstance& instance) {
  std::vector<Deletion> out;
  auto sequence = [&](std::size_t n) {
    for (std::size_t i = 1; i <= n; ++i) out.push_back({0, static_cast<int>(i)});
  };
  switch (kind_of(instance)) {
    case ProblemKind::kLis: sequence(std::get<LisInstance>(instance).sequence.size()); break;
    case ProblemKind::kIntervals: sequence(std::get<IntervalInstance>(instance).items.size()); break;
    case ProblemKind::kLps: sequence(std::get<LpsInstance>(instance).text.size()); break;
    case ProblemKind::kKnapsack: sequence(std::get<KnapsackInstance>(instance).costs.size()); break;
    case ProblemKind::kRna: sequence(std::get<RnaInstance>(instance).text.size()); break;
    case ProblemKind::kLcs: {
      const auto& strings = std::get<LcsInstance>(instance).strings;
      for (std::size_t t = 0; t < strings.size(); ++t)
        for (std::size_t j = 1; j <= strings[t].size(); ++j)
          out.push_back({static_cast<int>(t), static_cast<int>(j)});
      break;
    }
    case ProblemKind::kDag: {
      const auto& dag = std::get<DagInstance>(instance);
      const std::size_t n = dag.missing_sets.empty() ? dag.weights.size() : dag.missing_sets.size();
      for (std::size_t i = 0; i < n; ++i) out.push_back({0, static_cast<int>(i)});
      break;
    }
  }
  return out;
}

namespace {

template <typename T>
std::vector<T> erase_at(std::vector<T> v, int one_based) {
  v.erase(v.begin() + (one_based - 1));
  return v;
}

std::string erase_char(std::string s, int one_based) {
  s.erase(s.begin() + (one_based - 1));
  return s;
}

std::vector<std::vector<VertexId>> effective_sets(const DagInstance& dag) {
  if (!dag.missing_sets.empty()) return dag.missing_sets;
  std::vector<std::vector<VertexId>> singles;
  for (std::size_t v = 0; v < dag.weights.size(); ++v)
    singles.push_back({static_cast<VertexId>(v)});
  return singles;
}

// Vertices surviving the removal of missing set `index`, ascending.
std::vector<VertexId> dag_survivors(const DagInstance& dag, int index) {
  const auto sets = effective_sets(dag);
  if (index < 0 || static_cast<std::size_t>(index) >= sets.size())
    throw BadIndex("missing set " + std::to_string(index));
  std::vector<bool> drop(dag.weights.size(), false);
  for (VertexId v : sets[index]) {
    if (v < 0 || static_cast<std::size_t>(v) >= drop.size())
      throw BadIndex("missing-set member " + std::to_string(v));
    drop[v] = true;
  }
  std::vector<VertexId> keep;
  for (std::size_t v = 0; v < drop.size(); ++v)
    if (!drop[v]) keep.push_back(static_cast<VertexId>(v));
  return keep;
}

void check_deletion(const ProblemInstance& instance, const Deletion& d) {
  const auto all = deletions_of(instance);
  for (const auto& x : all)
    if (x.slot == d.slot && x.index == d.index) return;
  throw BadIndex("deletion (" + std::to_string(d.slot) + "," + std::to_string(d.index) +
                 ") does not name an input element");
}

}  // namespace

ProblemInstance apply_deletion(const ProblemInstance& instance, const Deletion& d) {
  check_deletion(instance, d);
  switch (kind_of(instance)) {
    case ProblemKind::kLis:
      return LisInstance{erase_at(std::get<LisInstance>(instance).sequence, d.index)};
    case ProblemKind::kIntervals:
      return IntervalInstance{erase_at(std::get<IntervalInstance>(instance).items, d.index)};
    case ProblemKind::kLps:
      return LpsInstance{erase_char(std::get<LpsInstance>(instance).text, d.index)};
    case ProblemKind::kKnapsack: {
      const auto& k = std::get<KnapsackInstance>(instance);
      return KnapsackInstance{erase_at(k.costs, d.index), erase_at(k.weights, d.index), k.capacity};
    }
    case ProblemKind::kRna: {
      const auto& r = std::get<RnaInstance>(instance);
      return RnaInstance{erase_char(r.text, d.index), r.relation};
    }
    case ProblemKind::kLcs: {
      LcsInstance out = std::get<LcsInstance>(instance);
      out.strings[d.slot] = erase_char(out.strings[d.slot], d.index);
      return out;
    }
    case ProblemKind::kDag: {
      const auto& dag = std::get<DagInstance>(instance);
      const auto keep = dag_survivors(dag, d.index);
      const auto closed = TransitiveDag::build(dag.weights, dag.edges);
      std::vector<VertexId> new_id(dag.weights.size(), -1);
      for (std::size_t j = 0; j < keep.size(); ++j) new_id[keep[j]] = static_cast<VertexId>(j);
      DagInstance out;
      out.multiplicity = dag.multiplicity;
      for (VertexId v : keep) out.weights.push_back(dag.weights[v]);
      for (const auto& [u, v] : closed.edge_list())
        if (new_id[u] >= 0 && new_id[v] >= 0) out.edges.emplace_back(new_id[u], new_id[v]);
      const auto sets = effective_sets(dag);
      for (std::size_t i = 0; i < sets.size(); ++i) {
        if (static_cast<int>(i) == d.index) continue;
        std::vector<VertexId> s;
        for (VertexId v : sets[i])
          if (new_id[v] >= 0) s.push_back(new_id[v]);
        out.missing_sets.push_back(std::move(s));
      }
      return out;
    }
  }
  return instance;
}

Solution restore_indices(const ProblemInstance& original, const Solution& solution,
                         const Deletion& d) {
  Solution out = solution;
  const ProblemKind kind = kind_of(original);
  if (kind == ProblemKind::kDag) {
    const auto keep = dag_survivors(std::get<DagInstance>(original), d.index);
    for (auto& e : out) e[0] = keep.at(e[0]);
    normalize(out);
    return out;
  }
  for (auto& e : out) {
    for (std::size_t c = 0; c < e.size(); ++c) {
      const bool indexed = kind == ProblemKind::kLcs   ? static_cast<int>(c) == d.slot
                           : kind == ProblemKind::kRna ? true
                                                       : c == 0;
      if (indexed && e[c] >= d.index) ++e[c];
    }
  }
  normalize(out);
  return out;
}

namespace {

bool indices_valid(const Solution& s, std::size_t n) {
  for (const auto& e : s)
    if (e.size() != 1 || e[0] < 1 || static_cast<std::size_t>(e[0]) > n) return false;
  for (std::size_t i = 1; i < s.size(); ++i)
    if (s[i] == s[i - 1]) return false;
  return true;
}

}  // namespace

bool is_feasible(const ProblemInstance& instance, const Solution& raw) {
  Solution s = raw;
  std::sort(s.begin(), s.end());
  switch (kind_of(instance)) {
    case ProblemKind::kLis: {
      const auto& a = std::get<LisInstance>(instance).sequence;
      if (!indices_valid(s, a.size())) return false;
      for (std::size_t i = 1; i < s.size(); ++i)
        if (a[s[i - 1][0] - 1] >= a[s[i][0] - 1]) return false;
      return true;
    }
    case ProblemKind::kIntervals: {
      const auto& items = std::get<IntervalInstance>(instance).items;
      if (!indices_valid(s, items.size())) return false;
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) {
          const auto& x = items[s[i][0] - 1];
          const auto& y = items[s[j][0] - 1];
          if (!(x.r <= y.l || y.r <= x.l)) return false;
        }
      return true;
    }
    case ProblemKind::kLcs: {
      const auto& strings = std::get<LcsInstance>(instance).strings;
      for (const auto& e : s) {
        if (e.size() != strings.size()) return false;
        for (std::size_t t = 0; t < e.size(); ++t)
          if (e[t] < 1 || static_cast<std::size_t>(e[t]) > strings[t].size()) return false;
        for (std::size_t t = 1; t < e.size(); ++t)
          if (strings[t][e[t] - 1] != strings[0][e[0] - 1]) return false;
      }
      for (std::size_t i = 1; i < s.size(); ++i)
        for (std::size_t t = 0; t < strings.size(); ++t)
          if (s[i - 1][t] >= s[i][t]) return false;
      return true;
    }
    case ProblemKind::kLps: {
      const auto& text = std::get<LpsInstance>(instance).text;
      if (!indices_valid(s, text.size())) return false;
      for (std::size_t i = 0, j = s.size(); i + 1 < j; ++i, --j)
        if (text[s[i][0] - 1] != text[s[j - 1][0] - 1]) return false;
      return true;
    }
    case ProblemKind::kKnapsack: {
      const auto& k = std::get<KnapsackInstance>(instance);
      if (!indices_valid(s, k.costs.size())) return false;
      std::int64_t total = 0;
      for (const auto& e : s) total += k.costs[e[0] - 1];
      return total <= k.capacity;
    }
    case ProblemKind::kRna: {
      const auto& r = std::get<RnaInstance>(instance);
      const int n = static_cast<int>(r.text.size());
      FoldSolution pairs;
      std::vector<bool> used(n + 1, false);
      for (const auto& e : s) {
        if (e.size() != 2 || e[0] < 1 || e[0] >= e[1] || e[1] > n) return false;
        if (used[e[0]] || used[e[1]]) return false;
        used[e[0]] = used[e[1]] = true;
        if (!r.relates(r.text[e[0] - 1], r.text[e[1] - 1])) return false;
        pairs.emplace_back(e[0], e[1]);
      }
      return is_pseudoknot_free(pairs);
    }
    case ProblemKind::kDag: {
      const auto& d = std::get<DagInstance>(instance);
      const auto dag = TransitiveDag::build(d.weights, d.edges);
      std::vector<VertexId> vs;
      for (const auto& e : s) {
        if (e.size() != 1) return false;
        vs.push_back(e[0]);
      }
      std::sort(vs.begin(), vs.end(), [&](VertexId a, VertexId b) {
        return dag.topological_rank(a) < dag.topological_rank(b);
      });
      for (std::size_t i = 1; i < vs.size(); ++i)
        if (vs[i] == vs[i - 1]) return false;
      for (VertexId v : vs)
        if (v < 0 || static_cast<std::size_t>(v) >= dag.size()) return false;
      return is_chain(dag, vs);
    }
  }
  return false;
}

double objective(const ProblemInstance& instance, const Solution& s) {
  switch (kind_of(instance)) {
    case ProblemKind::kIntervals: {
      double w = 0.0;
      for (const auto& e : s) w += std::get<IntervalInstance>(instance).items[e[0] - 1].w;
      return w;
    }
    case ProblemKind::kKnapsack: {
      double w = 0.0;
      for (const auto& e : s) w += std::get<KnapsackInstance>(instance).weights[e[0] - 1];
      return w;
    }
    case ProblemKind::kDag: {
      double w = 0.0;
      for (const auto& e : s) w += std::get<DagInstance>(instance).weights[e[0]];
      return w;
    }
    default:
      return static_cast<double>(s.size());
  }
}

}  // namespace stabledp
