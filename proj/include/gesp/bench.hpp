#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gesp/baselines.hpp"
#include "gesp/gesp_init.hpp"
#include "gesp/measurement.hpp"
#include "gesp/signal_models.hpp"

namespace gesp {

/// One entry of the algorithm list: either gesp with a p strategy or a baseline.
struct AlgorithmSpec {
  bool is_gesp = true;
  PStrategy strategy;
  BaselineKind baseline = BaselineKind::esp;
  std::size_t tpm_iters = 50;

  static AlgorithmSpec gesp_with(PStrategy s) { return {true, s, {}, 50}; }
  static AlgorithmSpec baseline_of(BaselineKind b, std::size_t iters = 50) {
    return {false, {}, b, iters};
  }

  /// "gesp" or the baseline name.
  std::string name() const;
  /// Strategy label for gesp, "none" for baselines.
  std::string strategy_label() const;
};

struct BenchConfig {
  static constexpr int kSchemaVersion = 1;

  std::size_t n = 200;
  std::size_t k = 10;
  std::vector<double> ratios;
  std::size_t trials = 100;
  std::uint64_t base_seed = 0;
  SignalModelSpec signal;  // n and k mirror the fields above
  std::vector<AlgorithmSpec> algorithms;
  std::size_t threads = 1;
  std::filesystem::path out_path = "results.csv";
  std::optional<std::filesystem::path> summary_path;
  std::optional<std::filesystem::path> plot_path;
  bool timing = false;  // runtime_ms is written as 0 unless enabled

  /// Throws ConfigError.
  void validate() const;
};

BenchConfig parse_config(const nlohmann::json& doc);
BenchConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const BenchConfig& config);

struct ResolvedRatio {
  double ratio;
  std::size_t m;
};

/// Ratios sorted ascending, m = round(ratio n), later ratios mapping to an
/// already-seen m dropped. Index into this list is the ratio_index.
std::vector<ResolvedRatio> resolve_ratios(const BenchConfig& config);

struct TrialRecord {
  std::string signal_model;
  std::string algorithm;
  std::string strategy;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  double ratio = 0.0;
  std::size_t trial_index = 0;
  std::uint64_t seed = 0;
  std::size_t p_used = 0;
  double relative_error = 0.0;  // phase-aligned
  double raw_error = 0.0;       // ||z - x|| / ||x||
  double support_fraction = 0.0;
  double runtime_ms = 0.0;
  bool error_flag = false;
  std::string error_message;  // not written to CSV
};

/// Signal and measurements of one (ratio, trial) cell. Every algorithm in the
/// cell runs on this same instance.
struct TrialInstance {
  std::uint64_t seed = 0;
  SparseSignal signal;
  MeasurementSet measurements;
};

TrialInstance make_trial(const BenchConfig& config, std::size_t ratio_index,
                         std::size_t trial_index);

InitEstimate run_algorithm(const AlgorithmSpec& algo, const MeasurementSet& meas, std::size_t k,
                           const SparseSignal& truth);

/// Record for one algorithm on one instance. Algorithm errors are caught and
/// reported through error_flag.
TrialRecord evaluate(const BenchConfig& config, const AlgorithmSpec& algo,
                     const TrialInstance& trial, const ResolvedRatio& ratio,
                     std::size_t trial_index);

/// All (ratio, trial, algorithm) records ordered by ratio index, trial index,
/// then algorithm order, independent of config.threads.
std::vector<TrialRecord> run_sweep(const BenchConfig& config);

struct SummaryStats {
  double mean = 0.0;
  double median = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
};

SummaryStats summarize(std::vector<double> values);

struct AggregateRow {
  std::string algorithm;
  std::string strategy;
  double ratio = 0.0;
  std::size_t m = 0;
  std::size_t count = 0;   // successful trials
  std::size_t errors = 0;  // flagged trials, excluded from the statistics
  SummaryStats relative_error;
  SummaryStats support_fraction;
};

/// Rows grouped by (algorithm, strategy) in first-appearance order, ratios ascending.
std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records);

void write_csv(const std::vector<TrialRecord>& records, std::ostream& out);
void write_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path);

void write_summary_csv(const std::vector<AggregateRow>& rows, std::ostream& out);
void write_summary_csv(const std::vector<AggregateRow>& rows, const std::filesystem::path& path);

/// One block per (algorithm, strategy): "# algorithm strategy" then lines of
/// `ratio mean_rel_err sd_rel_err mean_support_frac`; blocks separated by two
/// blank lines (gnuplot `index` convention).
void write_plot_data(const std::vector<AggregateRow>& rows, std::ostream& out);
void write_plot_data(const std::vector<AggregateRow>& rows, const std::filesystem::path& path);

/// printf("%.17g"), with "nan"/"inf"/"-inf" spelled out.
std::string format_double(double v);

}  // namespace gesp
