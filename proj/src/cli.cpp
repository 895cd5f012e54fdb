#include "stabledp/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <optional>
#include <thread>

#include "stabledp/errors.hpp"
#include "stabledp/generators.hpp"
#include "stabledp/io.hpp"
#include "stabledp/reductions.hpp"
#include "stabledp/sensitivity.hpp"

namespace stabledp {

namespace {

struct Options {
  std::string problem;
  std::string in;
  std::string out;
  std::string format = "json";
  std::string family;
  std::string solver = "stable";
  std::size_t size = 10;
  double delta = 0.3;
  std::optional<double> eps;
  std::size_t trials = 0;
  std::size_t samples = 200;
  std::uint64_t seed = 0;
  std::size_t cap = 0;
  unsigned jobs = 0;
  bool timing = false;
};

SizeCaps caps_of(const Options& o) {
  SizeCaps caps = SizeCaps::from_environment();
  if (o.cap > 0) caps.override_with(o.cap);
  return caps;
}

ProblemInstance load_instance(const Options& o) {
  ProblemInstance inst;
  if (!o.in.empty()) {
    inst = read_instance_file(o.in);
  } else if (!o.family.empty()) {
    GeneratorSpec spec{o.family, o.size, o.seed, std::nullopt};
    if (!o.problem.empty()) spec.problem = problem_from_name(o.problem);
    inst = generate(spec);
  } else {
    throw ParseError("give an instance with --in or a generator with --family");
  }
  if (!o.problem.empty() && problem_from_name(o.problem) != kind_of(inst)) {
    throw ParseError(std::string("instance is '") + problem_name(kind_of(inst)) +
                     "', not '" + o.problem + "'");
  }
  return inst;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.out.empty() || o.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw ParseError("cannot write '" + o.out + "'");
  f << text;
}

void require_json(const Options& o) {
  if (o.format != "json") throw ParseError("--format csv is only available for sensitivity");
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

void cmd_generate(const Options& o, std::ostream& out) {
  require_json(o);
  if (o.family.empty()) throw ParseError("generate needs --family");
  GeneratorSpec spec{o.family, o.size, o.seed, std::nullopt};
  if (!o.problem.empty()) spec.problem = problem_from_name(o.problem);
  emit(o, dump(instance_to_json(generate(spec))), out);
}

void cmd_solve(const Options& o, std::ostream& out) {
  require_json(o);
  const ProblemInstance inst = load_instance(o);
  const SizeCaps caps = caps_of(o);
  const ProblemKind kind = kind_of(inst);
  auto sampler = stable_solver(o.delta, caps, o.eps)(inst);
  RandomStream rng(o.seed);
  const Solution sol = sampler->sample(rng);

  Json j;
  j["problem"] = problem_name(kind);
  j["seed"] = o.seed;
  j["delta"] = o.delta;
  j["eps"] = optional_number(o.eps);
  j[kind == ProblemKind::kRna ? "pairs" : "solution"] = solution_to_json(kind, sol);
  j["objective"] = objective(inst, sol);
  std::optional<double> opt;
  try {
    opt = exact_oracle(inst, caps).objective;
  } catch (const InstanceTooLarge&) {
  }
  j["opt"] = optional_number(opt);
  if (o.trials > 0) {
    j["ratio_stats"] = ratio_stats_to_json(approximation_experiment(inst, o.delta, o.trials, o.seed, caps));
  }
  emit(o, dump(j), out);
}

void cmd_oracle(const Options& o, std::ostream& out) {
  require_json(o);
  const ProblemInstance inst = load_instance(o);
  const ProblemKind kind = kind_of(inst);
  const OracleResult r = exact_oracle(inst, caps_of(o));
  Json j;
  j["problem"] = problem_name(kind);
  j[kind == ProblemKind::kRna ? "pairs" : "solution"] = solution_to_json(kind, r.solution);
  j["objective"] = r.objective;
  emit(o, dump(j), out);
}

void cmd_sensitivity(const Options& o, std::ostream& out) {
  if (o.format != "json" && o.format != "csv") throw ParseError("--format must be json or csv");
  const ProblemInstance inst = load_instance(o);
  SensitivityConfig cfg;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.jobs = o.jobs > 0 ? o.jobs : std::max(1U, std::thread::hardware_concurrency());
  cfg.delta = o.delta;
  cfg.eps = o.eps;
  cfg.solver = o.solver;
  cfg.caps = caps_of(o);

  const auto start = std::chrono::steady_clock::now();
  SensitivityReport rep = average_sensitivity(inst, cfg);
  if (o.trials > 0) {
    rep.ratio_stats = approximation_experiment(inst, o.delta, o.trials, o.seed, cfg.caps);
  }
  if (o.timing) {
    rep.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  }
  emit(o, o.format == "csv" ? report_to_csv(rep) : dump(report_to_json(rep)), out);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInstanceTooLarge:
    case ErrorKind::kSupportTooLarge: return 3;
    default: return 2;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Stable-on-average dynamic programming via maximum weight chains", "stabledp"};
  app.require_subcommand(1);

  auto instance_flags = [&](CLI::App* sub) {
    sub->add_option("--in", o.in, "Instance JSON file");
    sub->add_option("--family", o.family, "Generate the instance instead of reading it");
    sub->add_option("--size", o.size, "Generator size");
  };
  auto common_flags = [&](CLI::App* sub) {
    sub->add_option("--problem", o.problem, "Problem name (lis, intervals, lcs, lps, knapsack, rna, dag)");
    sub->add_option("--out", o.out, "Output file (default stdout)");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--cap", o.cap, "Override the state-count cap")->check(CLI::PositiveNumber);
  };
  auto solver_flags = [&](CLI::App* sub) {
    sub->add_option("--delta", o.delta, "Approximation slack in (0,1)")
        ->check(CLI::Range(0.0, 1.0));
    sub->add_option("--eps", o.eps, "Fix the recursion parameter instead of sampling it");
    sub->add_option("--trials", o.trials, "Independent runs for approximation statistics");
  };

  CLI::App* gen = app.add_subcommand("generate", "Write a generated instance");
  common_flags(gen);
  gen->add_option("--family", o.family, "Generator family")->required();
  gen->add_option("--size", o.size, "Instance size");

  CLI::App* solve = app.add_subcommand("solve", "Run the stable solver once");
  common_flags(solve);
  instance_flags(solve);
  solver_flags(solve);

  CLI::App* oracle = app.add_subcommand("oracle", "Exact optimum via the textbook DP");
  common_flags(oracle);
  instance_flags(oracle);

  CLI::App* sens = app.add_subcommand("sensitivity", "Measure average sensitivity");
  common_flags(sens);
  instance_flags(sens);
  solver_flags(sens);
  sens->add_option("--samples", o.samples, "Samples per output distribution")
      ->check(CLI::PositiveNumber);
  sens->add_option("--jobs", o.jobs, "Worker threads (default: all cores)");
  sens->add_option("--solver", o.solver, "stable, naive or constant")
      ->check(CLI::IsMember({"stable", "naive", "constant"}));
  sens->add_flag("--timing", o.timing, "Record wall-clock runtime in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  if (!(o.delta > 0.0 && o.delta < 1.0)) {
    err << "error: --delta must lie strictly between 0 and 1\n";
    return 2;
  }
  if (o.eps && !(*o.eps > 0.0 && *o.eps < 1.0)) {
    err << "error: --eps must lie strictly between 0 and 1\n";
    return 2;
  }

  try {
    if (gen->parsed()) cmd_generate(o, out);
    if (solve->parsed()) cmd_solve(o, out);
    if (oracle->parsed()) cmd_oracle(o, out);
    if (sens->parsed()) cmd_sensitivity(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace stabledp
