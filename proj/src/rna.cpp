#include "stabledp/rna.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "stabledp/errors.hpp"
#include "stabledp/stable_mwc.hpp"

namespace stabledp {

bool is_pseudoknot_free(const FoldSolution& pairs) {
  std::vector<int> used;
  for (const auto& [l, r] : pairs) {
    used.push_back(l);
    used.push_back(r);
  }
  std::sort(used.begin(), used.end());
  if (std::adjacent_find(used.begin(), used.end()) != used.end()) {
    throw DuplicateIndex("an index appears in two pairs");
  }
  for (std::size_t a = 0; a < pairs.size(); ++a) {
    for (std::size_t b = a + 1; b < pairs.size(); ++b) {
      const auto [l, r] = pairs[a];
      const auto [x, y] = pairs[b];
      const bool x_in = l < x && x < r;
      const bool y_in = l < y && y < r;
      if (x_in != y_in) return false;
    }
  }
  return true;
}

namespace {

// best[i][j] over 1-based positions; zero when i >= j.
std::vector<std::vector<int>> nussinov_table(const RnaInstance& instance) {
  const auto& a = instance.text;
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<int>> best(n + 2, std::vector<int>(n + 2, 0));
  for (int len = 2; len <= n; ++len) {
    for (int i = 1; i + len - 1 <= n; ++i) {
      const int j = i + len - 1;
      int v = 0;
      for (int k = i; k < j; ++k) v = std::max(v, best[i][k] + best[k + 1][j]);
      if (instance.relates(a[i - 1], a[j - 1])) v = std::max(v, best[i + 1][j - 1] + 1);
      best[i][j] = v;
    }
  }
  return best;
}

}  // namespace

int nussinov_opt(const RnaInstance& instance) {
  const int n = static_cast<int>(instance.text.size());
  if (n < 2) return 0;
  return nussinov_table(instance)[1][n];
}

FoldSolution nussinov_fold(const RnaInstance& instance) {
  const int n = static_cast<int>(instance.text.size());
  FoldSolution out;
  if (n < 2) return out;
  const auto best = nussinov_table(instance);
  const auto& a = instance.text;
  std::vector<std::pair<int, int>> todo{{1, n}};
  while (!todo.empty()) {
    const auto [i, j] = todo.back();
    todo.pop_back();
    if (i >= j || best[i][j] == 0) continue;
    if (instance.relates(a[i - 1], a[j - 1]) && best[i][j] == best[i + 1][j - 1] + 1) {
      out.emplace_back(i, j);
      todo.emplace_back(i + 1, j - 1);
      continue;
    }
    for (int k = i; k < j; ++k) {
      if (best[i][k] + best[k + 1][j] == best[i][j]) {
        todo.emplace_back(i, k);
        todo.emplace_back(k + 1, j);
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------

bool PseudoInterval::contains(const PseudoInterval& other) const {
  if (other.empty()) return true;
  return !empty() && l <= other.l && other.r <= r;
}

bool PseudoInterval::strictly_contains(const PseudoInterval& other) const {
  if (other.empty()) return true;
  return !empty() && l < other.l && other.r < r;
}

bool PseudoInterval::disjoint(const PseudoInterval& other) const {
  return empty() || other.empty() || r < other.l || other.r < l;
}

bool is_well_ordered(const Triple& t) {
  const auto& [I, H, L] = t;
  if (I.empty() || !(I.l < I.r)) return false;
  if (H.empty() || !(H.l < H.r)) return false;
  if (!L.empty() && L.l > L.r) return false;
  return I.strictly_contains(H) && I.strictly_contains(L) && H.disjoint(L);
}

bool triple_preceq(const Triple& a, const Triple& b) {
  if (a == b) return true;
  if (a.heavy.contains(b.outer) && !b.outer.empty()) return true;
  if (a.outer == b.outer && a.heavy == b.heavy) {
    if (a.light.empty()) return true;
    if (!b.light.empty() && a.light.r < b.light.l) return true;
  }
  return false;
}

ListOrder compare_lists(const TripleList& a, const TripleList& b) {
  const std::size_t k = std::min(a.size(), b.size());
  for (std::size_t j = 0; j < k; ++j) {
    if (a[j] == b[j]) continue;
    if (triple_preceq(a[j], b[j])) return ListOrder::kLess;
    if (triple_preceq(b[j], a[j])) return ListOrder::kGreater;
    return ListOrder::kIncomparable;
  }
  if (a.size() == b.size()) return ListOrder::kEqual;
  return a.size() < b.size() ? ListOrder::kLess : ListOrder::kGreater;
}

bool vertex_lex_lt(const TripleList& a, const TripleList& b) {
  switch (compare_lists(a, b)) {
    case ListOrder::kLess: return true;
    case ListOrder::kIncomparable:
      throw IncomparableTriples("first differing triples are incomparable");
    default: return false;
  }
}

bool is_rna_vertex(const RnaInstance& instance, const TripleList& list, int max_length) {
  const int n = static_cast<int>(instance.text.size());
  if (list.empty() || static_cast<int>(list.size()) > max_length) return false;
  const PseudoInterval whole = PseudoInterval::of(0, n + 1);
  const PseudoInterval inner = PseudoInterval::of(1, n);
  auto paired = [&](const PseudoInterval& x) {
    return instance.relates(instance.text[x.l - 1], instance.text[x.r - 1]);
  };
  for (std::size_t j = 0; j < list.size(); ++j) {
    const Triple& t = list[j];
    if (!is_well_ordered(t)) return false;
    if (!whole.contains(t.outer) || !inner.contains(t.heavy) || !inner.contains(t.light))
      return false;
    if (!paired(t.heavy)) return false;
    if (!t.light.empty() && (t.light.l >= t.light.r || !paired(t.light))) return false;
    if (j + 1 < list.size() && (t.light.empty() || !t.light.contains(list[j + 1].outer)))
      return false;
  }
  return true;
}

std::vector<int> encode_list(const TripleList& list) {
  std::vector<int> out;
  out.reserve(list.size() * 6);
  for (const auto& t : list) {
    for (const auto* x : {&t.outer, &t.heavy, &t.light}) {
      out.push_back(x->l);
      out.push_back(x->r);
    }
  }
  return out;
}

TripleList decode_list(const std::vector<int>& label) {
  if (label.size() % 6 != 0) throw InvalidArgument("malformed triple-list label");
  TripleList out;
  for (std::size_t p = 0; p < label.size(); p += 6) {
    out.push_back({PseudoInterval{label[p], label[p + 1]},
                   PseudoInterval{label[p + 2], label[p + 3]},
                   PseudoInterval{label[p + 4], label[p + 5]}});
  }
  return out;
}

std::vector<Triple> all_well_ordered_triples(int n) {
  std::vector<PseudoInterval> intervals;
  for (int l = 0; l <= n + 1; ++l)
    for (int r = l; r <= n + 1; ++r) intervals.push_back(PseudoInterval::of(l, r));
  std::vector<Triple> out;
  for (const auto& I : intervals) {
    for (const auto& H : intervals) {
      Triple t{I, H, PseudoInterval::none()};
      if (is_well_ordered(t)) out.push_back(t);
      for (const auto& L : intervals) {
        t.light = L;
        if (is_well_ordered(t)) out.push_back(t);
      }
    }
  }
  return out;
}

std::optional<VertexId> RnaGraph::find(const TripleList& list) const {
  const auto it = index.find(encode_list(list));
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::vector<TripleList> enumerate_rna_vertices(const RnaInstance& instance, int list_bound,
                                              const SizeCaps& caps) {
  const int n = static_cast<int>(instance.text.size());
  if (n > caps.max_rna_length) {
    throw InstanceTooLarge("RNA length " + std::to_string(n) + " exceeds cap " +
                           std::to_string(caps.max_rna_length));
  }
  const auto& a = instance.text;
  std::vector<PseudoInterval> pairable;
  for (int l = 1; l <= n; ++l)
    for (int r = l + 1; r <= n; ++r)
      if (instance.relates(a[l - 1], a[r - 1])) pairable.push_back(PseudoInterval::of(l, r));

  // Triples by outer interval.
  std::map<std::pair<int, int>, std::vector<Triple>> by_outer;
  auto triples_of = [&](const PseudoInterval& I) -> const std::vector<Triple>& {
    auto [it, fresh] = by_outer.try_emplace({I.l, I.r});
    if (fresh) {
      for (const auto& H : pairable) {
        if (!I.strictly_contains(H)) continue;
        it->second.push_back({I, H, PseudoInterval::none()});
        for (const auto& L : pairable)
          if (I.strictly_contains(L) && H.disjoint(L)) it->second.push_back({I, H, L});
      }
    }
    return it->second;
  };

  std::vector<TripleList> out;
  TripleList current;
  std::function<void(const PseudoInterval&)> grow = [&](const PseudoInterval& region) {
    for (int l = region.l; l <= region.r; ++l) {
      for (int r = l + 1; r <= region.r; ++r) {
        for (const Triple& t : triples_of(PseudoInterval::of(l, r))) {
          current.push_back(t);
          out.push_back(current);
          if (out.size() > caps.max_states) {
            throw InstanceTooLarge("RNA graph exceeds " + std::to_string(caps.max_states) +
                                   " vertices");
          }
          if (!t.light.empty() && static_cast<int>(current.size()) < list_bound) grow(t.light);
          current.pop_back();
        }
      }
    }
  };
  if (n >= 2 && list_bound >= 1) grow(PseudoInterval::of(0, n + 1));
  std::sort(out.begin(), out.end(), [](const TripleList& x, const TripleList& y) {
    return encode_list(x) < encode_list(y);
  });
  return out;
}

RnaGraph build_rna_graph(const RnaInstance& instance, double list_bound,
                         const SizeCaps& caps) {
  if (!(list_bound >= 1.0)) throw InvalidArgument("list-length bound must be >= 1");
  const int n = static_cast<int>(instance.text.size());
  RnaGraph g;
  g.list_bound = static_cast<int>(std::floor(list_bound));
  g.vertices = enumerate_rna_vertices(instance, g.list_bound, caps);
  const std::size_t m = g.vertices.size();
  for (std::size_t v = 0; v < m; ++v) {
    g.reduction.labels.push_back(encode_list(g.vertices[v]));
    g.index.emplace(g.reduction.labels.back(), static_cast<VertexId>(v));
  }

  std::vector<std::vector<VertexId>> succ(m);
  for (std::size_t x = 0; x < m; ++x)
    for (std::size_t y = 0; y < m; ++y)
      if (x != y && compare_lists(g.vertices[x], g.vertices[y]) == ListOrder::kLess)
        succ[x].push_back(static_cast<VertexId>(y));
  g.reduction.kind = ProblemKind::kRna;
  g.reduction.dag = TransitiveDag::from_closed_successors(std::vector<double>(m, 1.0),
                                                          std::move(succ), caps.dense_cap);

  std::vector<std::vector<VertexId>> sets(n);
  int multiplicity = 1;
  for (std::size_t v = 0; v < m; ++v) {
    std::vector<int> ends;
    for (const Triple& t : g.vertices[v])
      for (const auto* x : {&t.outer, &t.heavy, &t.light})
        if (!x->empty()) {
          ends.push_back(x->l);
          ends.push_back(x->r);
        }
    std::sort(ends.begin(), ends.end());
    ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
    int count = 0;
    for (int i : ends) {
      if (i < 1 || i > n) continue;
      sets[i - 1].push_back(static_cast<VertexId>(v));
      ++count;
    }
    multiplicity = std::max(multiplicity, count);
  }
  g.reduction.family = AntichainFamily(g.reduction.dag, std::move(sets), multiplicity,
                                       AntichainFamily::Mode::kPseudoAntichain);
  return g;
}

FoldSolution chain_to_pairs(const std::vector<TripleList>& chain) {
  FoldSolution out;
  for (const auto& list : chain) {
    if (list.empty()) throw InfeasibleChain("empty triple list");
    const Triple& last = list.back();
    const PseudoInterval& x = last.light.empty() ? last.heavy : last.light;
    out.emplace_back(x.l, x.r);
  }
  std::sort(out.begin(), out.end());
  try {
    if (!is_pseudoknot_free(out)) throw InfeasibleChain("decoded pairs cross");
  } catch (const DuplicateIndex&) {
    throw InfeasibleChain("decoded pairs share an index");
  }
  return out;
}

Solution to_solution(const FoldSolution& pairs) {
  Solution s;
  for (const auto& [l, r] : pairs) s.push_back({l, r});
  normalize(s);
  return s;
}

FoldSolution to_pairs(const Solution& solution) {
  FoldSolution out;
  for (const auto& e : solution) out.emplace_back(e.at(0), e.at(1));
  std::sort(out.begin(), out.end());
  return out;
}

PairTree build_pair_tree(const FoldSolution& solution, int n) {
  FoldSolution pairs = solution;
  for (const auto& [l, r] : pairs) {
    if (l < 1 || r > n || l >= r) {
      throw InvalidArgument("pair (" + std::to_string(l) + "," + std::to_string(r) +
                            ") outside [1," + std::to_string(n) + "]");
    }
  }
  if (!is_pseudoknot_free(pairs)) throw InvalidArgument("solution contains a pseudoknot");
  std::sort(pairs.begin(), pairs.end());

  PairTree tree;
  tree.n = n;
  tree.nodes.push_back({0, n + 1});
  tree.nodes.insert(tree.nodes.end(), pairs.begin(), pairs.end());
  const std::size_t count = tree.nodes.size();
  tree.parent.assign(count, -1);
  tree.children.assign(count, {});
  std::vector<int> stack{0};
  for (std::size_t v = 1; v < count; ++v) {
    while (tree.nodes[stack.back()].second < tree.nodes[v].first) stack.pop_back();
    tree.parent[v] = stack.back();
    tree.children[stack.back()].push_back(static_cast<int>(v));
    stack.push_back(static_cast<int>(v));
  }
  tree.subtree_size.assign(count, 1);
  for (std::size_t v = count; v-- > 1;) tree.subtree_size[tree.parent[v]] += tree.subtree_size[v];
  tree.heavy.assign(count, -1);
  for (std::size_t v = 0; v < count; ++v) {
    for (int c : tree.children[v]) {
      if (tree.heavy[v] < 0 || tree.subtree_size[c] > tree.subtree_size[tree.heavy[v]])
        tree.heavy[v] = c;
    }
  }
  return tree;
}

std::vector<TripleList> make_chain(const PairTree& tree) {
  std::vector<TripleList> chain;
  TripleList current;
  auto interval = [&](int node) {
    return PseudoInterval::of(tree.nodes[node].first, tree.nodes[node].second);
  };
  std::function<void(int)> dfs = [&](int node) {
    if (tree.children[node].empty()) return;
    const int h = tree.heavy[node];
    current.push_back({interval(node), interval(h), PseudoInterval::none()});
    chain.push_back(current);
    current.pop_back();
    for (int c : tree.children[node]) {
      if (c == h) continue;
      current.push_back({interval(node), interval(h), interval(c)});
      chain.push_back(current);
      dfs(c);
      current.pop_back();
    }
    dfs(h);
  };
  if (!tree.nodes.empty()) dfs(0);
  return chain;
}

std::pair<double, double> list_bound_range(int n) {
  const double lo = std::max(1.0, std::log2(static_cast<double>(std::max(n, 1))));
  return {lo, 2.0 * lo};
}

RnaFolder::RnaFolder(RnaInstance instance, SizeCaps caps)
    : instance_(std::move(instance)), caps_(caps) {
  if (static_cast<int>(instance_.text.size()) > caps_.max_rna_length) {
    throw InstanceTooLarge("RNA length " + std::to_string(instance_.text.size()) +
                           " exceeds cap " + std::to_string(caps_.max_rna_length));
  }
}

const RnaGraph& RnaFolder::graph_for(int list_bound) {
  auto it = graphs_.find(list_bound);
  if (it == graphs_.end()) {
    it = graphs_.emplace(list_bound, build_rna_graph(instance_, list_bound, caps_)).first;
  }
  return it->second;
}

FoldSolution RnaFolder::sample(double delta, RandomStream& rng) {
  const int n = static_cast<int>(instance_.text.size());
  if (n < 2) return {};
  const auto [lo, hi] = list_bound_range(n);
  const int bound = static_cast<int>(std::floor(rng.uniform(lo, hi)));
  const RnaGraph& g = graph_for(bound);
  if (g.vertices.empty()) return {};
  StableSolverConfig cfg;
  cfg.delta = delta;
  const MwcResult res = mwc(g.reduction.dag, cfg, rng.child(rng.next_u64()));
  std::vector<TripleList> lists;
  for (VertexId v : res.chain.vertices) lists.push_back(g.vertices[v]);
  return chain_to_pairs(lists);
}

FoldSolution rna_fold(const RnaInstance& instance, double delta, RandomStream& rng,
                      const SizeCaps& caps) {
  RnaFolder folder(instance, caps);
  return folder.sample(delta, rng);
}

namespace {

// Indices touched by some predecessor and by some successor of v.
std::vector<int> both_sides(const RnaGraph& graph, VertexId v) {
  const auto& dag = graph.reduction.dag;
  const auto& fam = graph.reduction.family;
  std::vector<char> below(fam.size(), 0), above(fam.size(), 0);
  for (VertexId u : dag.predecessors(v))
    for (int i : fam.membership(u)) below[i] = 1;
  for (VertexId u : dag.successors(v))
    for (int i : fam.membership(u)) above[i] = 1;
  std::vector<int> out;
  for (std::size_t i = 0; i < fam.size(); ++i)
    if (below[i] && above[i]) out.push_back(static_cast<int>(i));
  return out;
}

}  // namespace

int both_sides_index_count(const RnaGraph& graph, VertexId v) {
  return static_cast<int>(both_sides(graph, v).size());
}

int crossing_index_count(const RnaGraph& graph, VertexId v) {
  const auto& own = graph.reduction.family.membership(v);
  int count = 0;
  for (int i : both_sides(graph, v))
    if (std::find(own.begin(), own.end(), i) == own.end()) ++count;
  return count;
}

}  // namespace stabledp
