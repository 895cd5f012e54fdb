#include "stabledp/sensitivity.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

#include "stabledp/errors.hpp"
#include "stabledp/reductions.hpp"
#include "stabledp/rna.hpp"
#include "stabledp/stable_mwc.hpp"
#include "stabledp/transport.hpp"

namespace stabledp {

std::size_t sym_diff_distance(const Solution& x, const Solution& y) {
  std::size_t i = 0, j = 0, common = 0;
  while (i < x.size() && j < y.size()) {
    if (x[i] < y[j]) {
      ++i;
    } else if (y[j] < x[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return x.size() + y.size() - 2 * common;
}

namespace {

std::vector<std::vector<double>> cost_matrix(const std::vector<const Solution*>& a,
                                             const std::vector<const Solution*>& b) {
  std::vector<std::vector<double>> c(a.size(), std::vector<double>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i][j] = static_cast<double>(sym_diff_distance(*a[i], *b[j]));
  return c;
}

}  // namespace

double exact_em(const Distribution& a, const Distribution& b, std::size_t support_cap) {
  if (a.size() > support_cap || b.size() > support_cap) {
    throw SupportTooLarge("distribution support exceeds " + std::to_string(support_cap));
  }
  auto masses = [](const Distribution& d) {
    std::vector<double> m;
    double total = 0.0;
    for (const auto& x : d) {
      if (!(x.mass >= 0.0) || !std::isfinite(x.mass))
        throw InvalidArgument("masses must be finite and nonnegative");
      m.push_back(x.mass);
      total += x.mass;
    }
    if (!(total > 0.0)) throw EmptySupport("distribution has no mass");
    for (double& x : m) x /= total;
    return m;
  };
  std::vector<double> ma = masses(a), mb = masses(b);
  // Both sides sum to 1 up to rounding; rescale b onto a's exact total.
  const double ta = std::accumulate(ma.begin(), ma.end(), 0.0);
  const double tb = std::accumulate(mb.begin(), mb.end(), 0.0);
  for (double& x : mb) x *= ta / tb;
  std::vector<const Solution*> pa, pb;
  for (const auto& x : a) pa.push_back(&x.solution);
  for (const auto& x : b) pb.push_back(&x.solution);
  return min_cost_transport<double>(cost_matrix(pa, pb), ma, mb);
}

double empirical_em(const std::vector<Solution>& a, const std::vector<Solution>& b) {
  if (a.empty() || b.empty()) throw EmptySupport("empirical EM needs samples on both sides");
  auto group = [](const std::vector<Solution>& s) {
    std::map<Solution, long long> counts;
    for (const auto& x : s) ++counts[x];
    return counts;
  };
  const auto ga = group(a), gb = group(b);
  // Scale counts so both sides total |a|*|b|.
  const long long wa = static_cast<long long>(b.size());
  const long long wb = static_cast<long long>(a.size());
  std::vector<const Solution*> pa, pb;
  std::vector<long long> sa, sb;
  for (const auto& [sol, c] : ga) {
    pa.push_back(&sol);
    sa.push_back(c * wa);
  }
  for (const auto& [sol, c] : gb) {
    pb.push_back(&sol);
    sb.push_back(c * wb);
  }
  const double total = static_cast<double>(a.size()) * static_cast<double>(b.size());
  return min_cost_transport<long long>(cost_matrix(pa, pb), sa, sb) / total;
}

double empirical_em(const Sampler& a, const Sampler& b, std::size_t m, RandomStream& rng) {
  if (m == 0) throw InvalidArgument("sample count must be >= 1");
  const RandomStream ra = rng.child(rng.next_u64());
  const RandomStream rb = rng.child(rng.next_u64());
  std::vector<Solution> xs, ys;
  for (std::size_t j = 0; j < m; ++j) {
    RandomStream sa = ra.child(j), sb = rb.child(j);
    xs.push_back(a(sa));
    ys.push_back(b(sb));
  }
  return empirical_em(xs, ys);
}

// ---------------------------------------------------------------------------

namespace {

class StableSampler : public SolutionSampler {
 public:
  StableSampler(const ProblemInstance& instance, double delta, SizeCaps caps,
                std::optional<double> eps)
      : delta_(delta), eps_(eps), reduction_(build_reduction(instance, caps)) {}

  Solution sample(RandomStream& rng) override {
    StableSolverConfig cfg;
    cfg.delta = delta_;
    cfg.eps_override = eps_;
    const MwcResult res = mwc(reduction_.dag, cfg, rng.child(rng.next_u64()));
    return decode(reduction_, res.chain);
  }
  std::size_t vertex_count() const override { return reduction_.dag.size(); }
  int multiplicity() const override { return reduction_.family.multiplicity(); }

 private:
  double delta_;
  std::optional<double> eps_;
  Reduction reduction_;
};

class RnaSampler : public SolutionSampler {
 public:
  RnaSampler(const RnaInstance& instance, double delta, SizeCaps caps)
      : delta_(delta), folder_(instance, caps) {}

  Solution sample(RandomStream& rng) override { return to_solution(folder_.sample(delta_, rng)); }

  // Reported against the largest list bound the sampler can draw.
  std::size_t vertex_count() const override { return widest().vertices.size(); }
  int multiplicity() const override {
    const RnaGraph& g = widest();
    return g.vertices.empty() ? 0 : g.reduction.family.multiplicity();
  }

 private:
  const RnaGraph& widest() const {
    const int n = static_cast<int>(folder_.instance().text.size());
    const auto [lo, hi] = list_bound_range(n);
    return folder_.graph_for(std::max(static_cast<int>(std::floor(lo)), static_cast<int>(std::ceil(hi)) - 1));
  }

  double delta_;
  mutable RnaFolder folder_;
};

class FixedSampler : public SolutionSampler {
 public:
  explicit FixedSampler(Solution s) : s_(std::move(s)) {}
  Solution sample(RandomStream&) override { return s_; }

 private:
  Solution s_;
};

}  // namespace

SolverFactory stable_solver(double delta, SizeCaps caps, std::optional<double> eps) {
  return [=](const ProblemInstance& instance) -> std::unique_ptr<SolutionSampler> {
    if (kind_of(instance) == ProblemKind::kRna) {
      return std::make_unique<RnaSampler>(std::get<RnaInstance>(instance), delta, caps);
    }
    return std::make_unique<StableSampler>(instance, delta, caps, eps);
  };
}

SolverFactory naive_solver(SizeCaps caps) {
  return [=](const ProblemInstance& instance) -> std::unique_ptr<SolutionSampler> {
    return std::make_unique<FixedSampler>(exact_oracle(instance, caps).solution);
  };
}

SolverFactory constant_solver() {
  return [](const ProblemInstance&) -> std::unique_ptr<SolutionSampler> {
    return std::make_unique<FixedSampler>(Solution{});
  };
}

SolverFactory solver_by_name(const SensitivityConfig& config) {
  if (config.solver == "stable") return stable_solver(config.delta, config.caps, config.eps);
  if (config.solver == "naive") return naive_solver(config.caps);
  if (config.solver == "constant") return constant_solver();
  throw InvalidArgument("unknown solver '" + config.solver + "'");
}

double stability_bound(std::size_t vertex_count, int multiplicity, double delta) {
  if (vertex_count <= 1) return 0.0;
  const double l = std::log(static_cast<double>(vertex_count));
  return 54.0 * multiplicity / delta * l * l * l;
}

namespace {

RatioStats ratio_stats_of(const ProblemInstance& instance, const std::vector<Solution>& samples,
                          double opt) {
  RatioStats r;
  r.trials = samples.size();
  r.opt = opt;
  if (samples.empty()) return r;
  double sum = 0, sum2 = 0, lo = std::numeric_limits<double>::infinity();
  for (const auto& s : samples) {
    const double ratio = opt > 0 ? objective(instance, s) / opt : 1.0;
    sum += ratio;
    sum2 += ratio * ratio;
    lo = std::min(lo, ratio);
  }
  const double t = static_cast<double>(samples.size());
  r.mean = sum / t;
  r.min = lo;
  r.sem = samples.size() > 1
              ? std::sqrt(std::max(0.0, (sum2 - t * r.mean * r.mean) / (t - 1)) / t)
              : 0.0;
  return r;
}

std::vector<Solution> draw(SolutionSampler& sampler, const RandomStream& stream, std::size_t m) {
  std::vector<Solution> out;
  out.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    RandomStream s = stream.child(j);
    out.push_back(sampler.sample(s));
  }
  return out;
}

}  // namespace

SensitivityReport average_sensitivity(const ProblemInstance& instance,
                                      const SolverFactory& solver,
                                      const SensitivityConfig& config) {
  if (config.samples == 0) throw InvalidArgument("sample count must be >= 1");
  if (!(config.delta > 0.0 && config.delta < 1.0)) throw InvalidArgument("delta must lie in (0,1)");
  SensitivityReport rep;
  rep.problem = problem_name(kind_of(instance));
  rep.solver = config.solver;
  rep.delta = config.delta;
  rep.eps = config.eps;
  rep.m = config.samples;
  rep.seed = config.seed;

  const RandomStream master(config.seed);
  const auto dels = deletions_of(instance);
  rep.n = dels.size();

  auto base_sampler = solver(instance);
  const std::vector<Solution> base = draw(*base_sampler, master.child(0), config.samples);
  rep.per_deletion.assign(dels.size(), 0.0);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= dels.size()) return;
      try {
        const ProblemInstance reduced = apply_deletion(instance, dels[i]);
        auto sampler = solver(reduced);
        std::vector<Solution> other = draw(*sampler, master.child(i + 1), config.samples);
        for (auto& s : other) s = restore_indices(instance, s, dels[i]);
        rep.per_deletion[i] = empirical_em(base, other);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(dels.size());
      }
    }
  };
  const unsigned jobs = std::max(1U, std::min<unsigned>(config.jobs, static_cast<unsigned>(dels.size())));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  double sum = 0.0;
  for (double x : rep.per_deletion) sum += x;
  rep.average = dels.empty() ? 0.0 : sum / static_cast<double>(dels.size());

  rep.vertex_count = base_sampler->vertex_count();
  rep.multiplicity = base_sampler->multiplicity();
  rep.paper_bound = stability_bound(rep.vertex_count, rep.multiplicity, config.delta);
  const double opt = exact_oracle(instance, config.caps).objective;
  rep.ratio_stats = ratio_stats_of(instance, base, opt);
  return rep;
}

SensitivityReport average_sensitivity(const ProblemInstance& instance,
                                      const SensitivityConfig& config) {
  return average_sensitivity(instance, solver_by_name(config), config);
}

RatioStats approximation_experiment(const ProblemInstance& instance, double delta,
                                    std::size_t trials, std::uint64_t seed,
                                    const SizeCaps& caps) {
  auto sampler = stable_solver(delta, caps)(instance);
  const auto samples = draw(*sampler, RandomStream(seed), trials);
  return ratio_stats_of(instance, samples, exact_oracle(instance, caps).objective);
}

SensitivityComparison naive_vs_stable_comparison(const ProblemInstance& instance,
                                                 const SensitivityConfig& config) {
  SensitivityConfig naive = config;
  naive.solver = "naive";
  SensitivityConfig stable = config;
  stable.solver = "stable";
  return {average_sensitivity(instance, naive), average_sensitivity(instance, stable)};
}

}  // namespace stabledp
