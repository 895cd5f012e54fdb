#include "stabledp/stable_mwc.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <string>

#include "stabledp/errors.hpp"

namespace stabledp {

double PivotDistribution::probability_of(VertexId v) const {
  for (std::size_t i = 0; i < support.size(); ++i)
    if (support[i] == v) return probabilities[i];
  return 0.0;
}

int RecursionTrace::depth() const {
  int k = 0;
  for (const auto& e : entries) k = std::max(k, e.depth + 1);
  return k;
}

std::vector<std::vector<const TraceEntry*>> RecursionTrace::by_depth() const {
  std::vector<std::vector<const TraceEntry*>> levels(depth());
  for (const auto& e : entries) levels[e.depth].push_back(&e);
  return levels;
}

std::vector<double> exp_mechanism_probabilities(std::span<const double> scores,
                                                double c) {
  if (scores.empty()) throw EmptySupport("exponential mechanism needs a candidate");
  const double top = *std::max_element(scores.begin(), scores.end());
  std::vector<double> p(scores.size());
  double total = 0.0;
  if (!(c > 0.0) || !std::isfinite(c)) {
    for (std::size_t i = 0; i < scores.size(); ++i) {
      p[i] = scores[i] == top ? 1.0 : 0.0;
      total += p[i];
    }
  } else {
    for (std::size_t i = 0; i < scores.size(); ++i) {
      p[i] = std::exp((scores[i] - top) / c);
      total += p[i];
    }
  }
  for (double& x : p) x /= total;
  return p;
}

std::size_t exp_mechanism_sample(std::span<const double> scores, double c,
                                 RandomStream& rng) {
  const std::vector<double> p = exp_mechanism_probabilities(scores, c);
  const double u = rng.uniform01();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    cumulative += p[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  return last_positive;
}

namespace {

double scale_base(double eps, double opt, std::size_t n) {
  return eps * opt / std::log(static_cast<double>(n) / eps);
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw InvalidArgument("eps must lie in (0,1), got " + std::to_string(eps));
  }
}

ChainSolution rec_impl(const SubUniverse& universe, double eps, RandomStream rng,
                       RecursionTrace* trace, int depth) {
  ChainSolution out;
  if (universe.empty()) return out;
  const TransitiveDag& dag = universe.dag();
  const auto& members = universe.members();
  const std::size_t n = members.size();
  const UniverseProfile profile = universe_profile(universe);

  const double base = scale_base(eps, profile.opt, n);
  RecParams params{eps, rng.uniform(base, 2.0 * base),
                   rng.uniform(0.5 * static_cast<double>(n), 0.75 * static_cast<double>(n))};

  std::vector<std::size_t> candidates;
  std::vector<double> scores;
  for (std::size_t j = 0; j < n; ++j) {
    if (profile.spread(j) <= params.d) {
      candidates.push_back(j);
      scores.push_back(profile.r[j]);
    }
  }
  const std::size_t pick = candidates[exp_mechanism_sample(scores, params.c, rng)];
  const VertexId pivot = members[pick];

  if (trace) {
    TraceEntry entry;
    entry.depth = depth;
    entry.universe = members;
    entry.params = params;
    entry.opt = profile.opt;
    entry.pivot = pivot;
    entry.pivot_r = profile.r[pick];
    entry.max_r_candidates = *std::max_element(scores.begin(), scores.end());
    entry.candidate_count = candidates.size();
    trace->entries.push_back(std::move(entry));
  }

  const SubUniverse below =
      universe.filtered([&](VertexId u) { return dag.has_edge(u, pivot); });
  const SubUniverse above =
      universe.filtered([&](VertexId u) { return dag.has_edge(pivot, u); });
  ChainSolution left = rec_impl(below, eps, rng.child(0), trace, depth + 1);
  ChainSolution right = rec_impl(above, eps, rng.child(1), trace, depth + 1);

  out.vertices = std::move(left.vertices);
  out.vertices.push_back(pivot);
  out.vertices.insert(out.vertices.end(), right.vertices.begin(), right.vertices.end());
  out.total_weight = left.total_weight + dag.weight(pivot) + right.total_weight;
  return out;
}

}  // namespace

ChainSolution rec(const SubUniverse& universe, double eps, RandomStream rng,
                  RecursionTrace* trace) {
  check_eps(eps);
  return rec_impl(universe, eps, rng, trace, 0);
}

std::pair<double, double> inverse_eps_range(std::size_t vertex_count,
                                            double delta) {
  const double lo = 17.0 / delta * std::log(static_cast<double>(vertex_count));
  return {lo, 2.0 * lo};
}

MwcResult mwc(const TransitiveDag& dag, const StableSolverConfig& config) {
  return mwc(dag, config, RandomStream(config.seed));
}

MwcResult mwc(const TransitiveDag& dag, const StableSolverConfig& config,
              RandomStream rng) {
  if (!(config.delta > 0.0 && config.delta < 1.0)) {
    throw InvalidArgument("delta must lie in (0,1)");
  }
  MwcResult result;
  if (config.record_trace) result.trace.emplace();
  result.eps = std::numeric_limits<double>::quiet_NaN();
  if (dag.size() <= 1 && !config.eps_override) {
    if (dag.size() == 1) {
      result.chain.vertices = {0};
      result.chain.total_weight = dag.weight(0);
    }
    return result;
  }
  if (config.eps_override) {
    result.eps = *config.eps_override;
  } else {
    const auto [lo, hi] = inverse_eps_range(dag.size(), config.delta);
    result.eps = 1.0 / rng.uniform(lo, hi);
  }
  result.chain = rec(SubUniverse::all(dag), result.eps, rng.child(1),
                     result.trace ? &*result.trace : nullptr);
  return result;
}

PivotDistribution pivot_marginal(const SubUniverse& universe, double eps) {
  check_eps(eps);
  if (universe.empty()) throw EmptySupport("pivot marginal of an empty universe");
  const auto& members = universe.members();
  const std::size_t n = members.size();
  const UniverseProfile profile = universe_profile(universe);

  const double lo = 0.5 * static_cast<double>(n);
  const double hi = 0.75 * static_cast<double>(n);
  std::vector<double> cuts{lo, hi};
  for (std::size_t j = 0; j < n; ++j) {
    const double t = profile.spread(j);
    if (t > lo && t < hi) cuts.push_back(t);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double base = scale_base(eps, profile.opt, n);
  using Quadrature = boost::math::quadrature::gauss<double, 64>;
  const auto& nodes = Quadrature::abscissa();
  const auto& node_weights = Quadrature::weights();

  PivotDistribution out;
  out.support = members;
  out.probabilities.assign(n, 0.0);
  std::vector<std::size_t> candidates;
  std::vector<double> scores;
  for (std::size_t piece = 0; piece + 1 < cuts.size(); ++piece) {
    const double piece_weight = (cuts[piece + 1] - cuts[piece]) / (hi - lo);
    const double mid = 0.5 * (cuts[piece] + cuts[piece + 1]);
    candidates.clear();
    scores.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (profile.spread(j) <= mid) {
        candidates.push_back(j);
        scores.push_back(profile.r[j]);
      }
    }
    auto accumulate = [&](double c, double weight) {
      const std::vector<double> p = exp_mechanism_probabilities(scores, c);
      for (std::size_t k = 0; k < candidates.size(); ++k)
        out.probabilities[candidates[k]] += weight * p[k];
    };
    if (base == 0.0) {
      accumulate(0.0, piece_weight);
      continue;
    }
    // Average over c uniform on [base, 2 base]; nodes are stored for [0,1]
    // of the symmetric rule on [-1,1].
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double w = piece_weight * 0.5 * node_weights[k];
      const double half = 0.5 * base * nodes[k];
      if (nodes[k] == 0.0) {
        accumulate(1.5 * base, w);
      } else {
        accumulate(1.5 * base - half, w);
        accumulate(1.5 * base + half, w);
      }
    }
  }
  return out;
}

double total_variation(const PivotDistribution& a, const PivotDistribution& b) {
  std::vector<std::pair<VertexId, double>> mass;
  mass.reserve(a.support.size() + b.support.size());
  for (std::size_t i = 0; i < a.support.size(); ++i)
    mass.emplace_back(a.support[i], a.probabilities[i]);
  for (std::size_t i = 0; i < b.support.size(); ++i)
    mass.emplace_back(b.support[i], -b.probabilities[i]);
  std::sort(mass.begin(), mass.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  double l1 = 0.0;
  for (std::size_t i = 0; i < mass.size();) {
    double diff = 0.0;
    std::size_t j = i;
    for (; j < mass.size() && mass[j].first == mass[i].first; ++j) diff += mass[j].second;
    l1 += std::abs(diff);
    i = j;
  }
  return 0.5 * l1;
}

double pivot_tv_bound(std::size_t n, int multiplicity, std::size_t vertex_count,
                      double eps) {
  if (n == 0) return 0.0;
  return 3.0 * multiplicity / eps *
         std::log(static_cast<double>(vertex_count) / eps) / static_cast<double>(n);
}

PivotTvReport average_pivot_tv(const TransitiveDag& dag,
                               const AntichainFamily& family, double eps) {
  check_eps(eps);
  PivotTvReport report;
  report.per_set.assign(family.size(), 0.0);
  if (dag.size() == 0) return report;
  const SubUniverse all = SubUniverse::all(dag);
  const PivotDistribution base = pivot_marginal(all, eps);
  double sum = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    if (family.set(i).empty()) continue;
    ++report.intersecting_sets;
    const SubUniverse rest = all.without(family.set(i));
    double tv;
    if (rest.empty()) {
      ++report.degenerate_deletions;
      tv = 1.0;
    } else {
      tv = total_variation(base, pivot_marginal(rest, eps));
    }
    report.per_set[i] = tv;
    sum += tv;
  }
  if (report.intersecting_sets > 0) {
    report.average = sum / static_cast<double>(report.intersecting_sets);
  }
  report.bound = pivot_tv_bound(report.intersecting_sets, family.multiplicity(),
                                dag.size(), eps);
  return report;
}

}  // namespace stabledp
