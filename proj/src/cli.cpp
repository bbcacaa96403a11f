#include "gesp/cli.hpp"

#include <cmath>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gesp/bench.hpp"
#include "gesp/errors.hpp"
#include "gesp/numerics.hpp"
#include "gesp/spectrum.hpp"

namespace gesp {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

std::string fmt(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string join(const IndexSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(s[i]);
  }
  return out + "}";
}

struct RunArgs {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> threads;
  bool timing = false;
};

struct SingleArgs {
  std::string config;
  double ratio = 0.0;
  std::size_t trial = 0;
  bool verbose = false;
};

struct OracleArgs {
  std::size_t n = 16;
  std::size_t k = 4;
  std::size_t m = 50000;
  std::uint64_t seed = 0;
};

int cmd_run(const RunArgs& args, std::ostream& out) {
  BenchConfig config = load_config(args.config);
  if (args.out) config.out_path = *args.out;
  if (args.seed) config.base_seed = *args.seed;
  if (args.threads) config.threads = *args.threads;
  if (args.timing) config.timing = true;
  config.validate();

  const std::vector<TrialRecord> records = run_sweep(config);
  write_csv(records, config.out_path);
  const std::vector<AggregateRow> rows = aggregate(records);
  if (config.summary_path) write_summary_csv(rows, *config.summary_path);
  if (config.plot_path) write_plot_data(rows, *config.plot_path);

  std::size_t errors = 0;
  for (const TrialRecord& r : records) errors += r.error_flag ? 1 : 0;
  out << "wrote " << records.size() << " records to " << config.out_path.string();
  if (errors) out << " (" << errors << " flagged errors)";
  out << '\n';
  out << std::left << std::setw(16) << "algorithm" << std::setw(28) << "strategy" << std::setw(8)
      << "ratio" << std::setw(12) << "mean_err" << std::setw(12) << "sd_err" << "support\n";
  for (const AggregateRow& r : rows) {
    out << std::left << std::setw(16) << r.algorithm << std::setw(28) << r.strategy
        << std::setw(8) << fmt(r.ratio, 4) << std::setw(12) << fmt(r.relative_error.mean, 5)
        << std::setw(12) << fmt(r.relative_error.sd, 5) << fmt(r.support_fraction.mean, 5)
        << '\n';
  }
  return kExitOk;
}

int cmd_single(const SingleArgs& args, std::ostream& out) {
  const BenchConfig config = load_config(args.config);
  const std::vector<ResolvedRatio> ratios = resolve_ratios(config);
  const auto m = static_cast<std::size_t>(std::llround(args.ratio * static_cast<double>(config.n)));
  std::optional<std::size_t> ratio_index;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (ratios[i].m == m) ratio_index = i;
  }
  if (!ratio_index) {
    throw ConfigError("--ratio " + fmt(args.ratio) + " (m = " + std::to_string(m) +
                      ") is not one of the configured ratios");
  }
  if (args.trial >= config.trials) {
    throw ConfigError("--trial " + std::to_string(args.trial) + " exceeds configured trials");
  }

  const TrialInstance trial = make_trial(config, *ratio_index, args.trial);
  const SparseSignal& x = trial.signal;
  const double energy = norm_sq(x.vector);
  out << "trial " << args.trial << "  ratio " << fmt(ratios[*ratio_index].ratio) << "  n "
      << config.n << "  k " << config.k << "  m " << ratios[*ratio_index].m << "  seed "
      << trial.seed << '\n';
  out << "sensing fingerprint " << std::hex << std::setw(16) << std::setfill('0')
      << sensing_fingerprint(trial.measurements.sensing()) << std::dec << std::setfill(' ')
      << '\n';
  out << "lambda^2 / ||x||^2 = " << fmt(trial.measurements.lambda_sq() / energy, 8) << '\n';
  if (args.verbose) out << "supp(x) = " << join(x.support) << '\n';

  for (const AlgorithmSpec& algo : config.algorithms) {
    out << "\n[" << algo.name() << ' ' << algo.strategy_label() << "]\n";
    try {
      const InitEstimate est = run_algorithm(algo, trial.measurements, config.k, x);
      const std::size_t hits = overlap(est.support, x.support);
      out << "  p_used           " << est.p_used << '\n';
      out << "  relative_error   " << fmt(relative_error(est.z, x.vector), 8) << '\n';
      out << "  support_fraction " << fmt(static_cast<double>(hits) / config.k, 8) << '\n';
      if (args.verbose) {
        double s0_energy = 0.0;
        for (std::size_t j : est.s0) s0_energy += std::norm(x.vector[j]);
        out << "  S0               " << join(est.s0) << '\n';
        out << "  |x_S0|^2/|x|^2   " << fmt(s0_energy / energy, 8) << '\n';
        if (!est.diagnostics.e0.empty()) {
          out << "  |x* e0|          " << fmt(std::abs(inner(x.vector, est.diagnostics.e0)), 8)
              << '\n';
        }
        out << "  S1               " << join(est.support) << '\n';
        out << "  |S1 & supp(x)|   " << hits << " / " << config.k << '\n';
        out << "  dist(z, x)       " << fmt(dist(est.z, x.vector), 8) << '\n';
        out << "  residual_score   " << fmt(est.diagnostics.residual_score, 8) << '\n';
        out << "  eigen iterations " << est.diagnostics.eigen_iterations << '\n';
      }
    } catch (const Error& e) {
      out << "  error: " << e.what() << '\n';
    }
  }
  return kExitOk;
}

int cmd_signal(const std::string& config_path, std::ostream& out) {
  const BenchConfig config = load_config(config_path);
  Rng rng(derive_seed(config.base_seed, 0, 0));
  const SparseSignal x = generate(config.signal, rng);
  const std::size_t k = config.k;
  const std::size_t cor3_max = max_p(ObjectiveVariant::corollary3, k);

  out << "signal " << to_string(config.signal.model) << "  n " << config.n << "  k " << k
      << '\n';
  out << std::left << std::setw(6) << "p" << std::setw(20) << "s(p)" << std::setw(20)
      << "theorem1" << "corollary3\n";
  for (std::size_t p = 1; p <= k; ++p) {
    out << std::left << std::setw(6) << p << std::setw(20)
        << fmt(structure_function(x.profile, p), 12) << std::setw(20)
        << fmt(p_objective(x.profile, k, p, ObjectiveVariant::theorem1), 12);
    if (p <= cor3_max) out << fmt(p_objective(x.profile, k, p, ObjectiveVariant::corollary3), 12);
    out << '\n';
  }
  const std::size_t t1 = p_opt(x.profile, k, ObjectiveVariant::theorem1);
  const std::size_t c3 = p_opt(x.profile, k, ObjectiveVariant::corollary3);
  out << "p_opt theorem1   = " << t1 << "  (objective "
      << fmt(p_objective(x.profile, k, t1, ObjectiveVariant::theorem1), 12) << ")\n";
  out << "p_opt corollary3 = " << c3 << "  (objective "
      << fmt(p_objective(x.profile, k, c3, ObjectiveVariant::corollary3), 12) << ")\n";
  return kExitOk;
}

double frobenius_gap(const CMatrix& a, const CMatrix& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) acc += std::norm(a.data()[i] - b.data()[i]);
  return std::sqrt(acc);
}

int cmd_oracle(const OracleArgs& args, std::ostream& out) {
  if (args.n > 64) throw ConfigError("--n is limited to 64 (dense comparison)");
  if (args.k < 1 || args.k > args.n) throw ConfigError("--k must satisfy 1 <= k <= n");
  if (args.m < 1) throw ConfigError("--m must be positive");

  Rng rng(args.seed);
  const SparseSignal x = generate({SignalModel::gaussian, args.n, args.k, 0.7, 1.0}, rng);
  const CMatrix expected = expectation_oracle(x.vector);
  const IndexSet all = IndexSet::range(args.n);
  const double energy = norm_sq(x.vector);

  out << "expectation oracle x x*/(4|x|^2), n " << args.n << "  k " << args.k << "  seed "
      << args.seed << '\n';
  out << std::left << std::setw(10) << "m" << std::setw(18) << "|Z - E|_F" << "|Z~ - E|_F\n";
  std::vector<double> errors;
  for (std::size_t m : {args.m, 4 * args.m}) {
    auto sensing = std::make_shared<const CMatrix>(sample_sensing(args.n, m, rng));
    const MeasurementSet meas = measure(x, sensing);
    const double err =
        frobenius_gap(SpectrumOperator::build(meas, Weighting::exponential).submatrix(all),
                      expected);
    const double err_true =
        frobenius_gap(SpectrumOperator::build_with_energy(meas, energy).submatrix(all), expected);
    errors.push_back(err);
    out << std::left << std::setw(10) << m << std::setw(18) << fmt(err, 8) << fmt(err_true, 8)
        << '\n';
  }
  out << "error ratio (m vs 4m) = " << fmt(errors[0] / errors[1], 6) << "  (1/sqrt(m) predicts 2)\n";
  return kExitOk;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"gESP sparse phase retrieval initialization benchmark"};
  app.name("gesp_bench");
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Monte Carlo sweep over sampling ratios");
  run->add_option("--config", run_args.config, "JSON config")->required();
  run->add_option("--out", run_args.out, "records CSV (overrides out_path)");
  run->add_option("--seed", run_args.seed, "base seed (overrides base_seed)");
  run->add_option("--threads", run_args.threads, "worker threads")->check(CLI::PositiveNumber);
  run->add_flag("--timing", run_args.timing, "record wall-clock runtime_ms");

  SingleArgs single_args;
  auto* single = app.add_subcommand("single", "one trial with step-by-step diagnostics");
  single->add_option("--config", single_args.config, "JSON config")->required();
  single->add_option("--ratio", single_args.ratio, "sampling ratio m/n")->required();
  single->add_option("--trial", single_args.trial, "trial index")->required();
  single->add_flag("--verbose", single_args.verbose, "print S0, e0 and S1 diagnostics");

  std::string signal_config;
  auto* signal = app.add_subcommand("signal", "structure function and p_opt table");
  signal->add_option("--config", signal_config, "JSON config")->required();

  OracleArgs oracle_args;
  auto* oracle = app.add_subcommand("oracle", "empirical spectrum vs its expectation");
  oracle->add_option("--n", oracle_args.n, "dimension (<= 64)")->required();
  oracle->add_option("--k", oracle_args.k, "sparsity")->required();
  oracle->add_option("--m", oracle_args.m, "measurements (also runs 4m)")->required();
  oracle->add_option("--seed", oracle_args.seed, "seed")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  try {
    if (*run) return cmd_run(run_args, out);
    if (*single) return cmd_single(single_args, out);
    if (*signal) return cmd_signal(signal_config, out);
    if (*oracle) return cmd_oracle(oracle_args, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  err << app.help();
  return kExitConfig;
}

}  // namespace gesp
