#include "gesp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <thread>

#include "gesp/errors.hpp"
#include "gesp/numerics.hpp"
#include "gesp/rng.hpp"

namespace gesp {

using nlohmann::json;

std::string AlgorithmSpec::name() const {
  return is_gesp ? std::string("gesp") : std::string(to_string(baseline));
}

std::string AlgorithmSpec::strategy_label() const {
  return is_gesp ? strategy.label() : std::string("none");
}

// ---------------------------------------------------------------------------
// config

void BenchConfig::validate() const {
  if (n < 1) throw ConfigError("n must be positive");
  if (k < 1 || k > n) throw ConfigError("k must satisfy 1 <= k <= n");
  if (ratios.empty()) throw ConfigError("ratios must be non-empty");
  for (double r : ratios) {
    if (!(r > 0.0 && r <= 2.0)) throw ConfigError("every ratio must lie in (0, 2]");
    if (std::llround(r * static_cast<double>(n)) < 1) {
      throw ConfigError("ratio " + format_double(r) + " resolves to m = 0");
    }
  }
  if (trials < 1) throw ConfigError("trials must be positive");
  if (threads < 1) throw ConfigError("threads must be positive");
  if (algorithms.empty()) throw ConfigError("algorithms must be non-empty");
  for (const AlgorithmSpec& a : algorithms) {
    if (a.is_gesp && a.strategy.kind == StrategyKind::fixed &&
        (a.strategy.p_value < 1 || a.strategy.p_value > k)) {
      throw ConfigError("gesp fixed strategy needs 1 <= p <= k");
    }
  }
  try {
    signal.validate();
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ConfigError("unknown key '" + it.key() + "' in " + where);
  }
}

AlgorithmSpec parse_algorithm(const json& entry) {
  if (!entry.is_object() || !entry.contains("name")) {
    throw ConfigError("each algorithm needs a \"name\"");
  }
  const std::string name = entry.at("name").get<std::string>();
  if (name == "gesp") {
    reject_unknown_keys(entry, {"name", "strategy", "p", "variant"}, "gesp algorithm");
    const std::string strategy = entry.value("strategy", std::string("full_k"));
    PStrategy s;
    s.kind = parse_strategy_kind(strategy);
    if (s.kind == StrategyKind::fixed) {
      if (!entry.contains("p")) throw ConfigError("gesp fixed strategy needs \"p\"");
      s.p_value = entry.at("p").get<std::size_t>();
    }
    if (s.kind == StrategyKind::known_structure) {
      s.variant = parse_objective_variant(entry.value("variant", std::string("theorem1")));
    }
    return AlgorithmSpec::gesp_with(s);
  }
  reject_unknown_keys(entry, {"name", "iters"}, "baseline '" + name + "'");
  const BaselineKind kind = parse_baseline_kind(name);
  return AlgorithmSpec::baseline_of(kind, entry.value("iters", std::size_t{50}));
}

}  // namespace

BenchConfig parse_config(const json& doc) {
  try {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    reject_unknown_keys(doc,
                        {"schema_version", "n", "k", "ratios", "trials", "base_seed", "signal",
                         "algorithms", "threads", "out_path", "summary_path", "plot_path",
                         "timing"},
                        "config");
    if (!doc.contains("schema_version")) throw ConfigError("missing schema_version");
    const int version = doc.at("schema_version").get<int>();
    if (version != BenchConfig::kSchemaVersion) {
      throw ConfigError("unsupported schema_version " + std::to_string(version));
    }

    BenchConfig c;
    c.n = doc.value("n", c.n);
    c.k = doc.value("k", c.k);
    c.ratios = doc.value("ratios", std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8,
                                                       0.9, 1.0});
    c.trials = doc.value("trials", c.trials);
    c.base_seed = doc.value("base_seed", c.base_seed);
    c.threads = doc.value("threads", c.threads);
    c.out_path = doc.value("out_path", c.out_path.string());
    if (doc.contains("summary_path")) c.summary_path = doc.at("summary_path").get<std::string>();
    if (doc.contains("plot_path")) c.plot_path = doc.at("plot_path").get<std::string>();
    c.timing = doc.value("timing", c.timing);

    const json signal = doc.value("signal", json::object());
    reject_unknown_keys(signal, {"model", "decay", "target_norm"}, "signal");
    c.signal.model = parse_signal_model(signal.value("model", std::string("gaussian")));
    c.signal.decay = signal.value("decay", c.signal.decay);
    c.signal.target_norm = signal.value("target_norm", c.signal.target_norm);
    c.signal.n = c.n;
    c.signal.k = c.k;

    if (!doc.contains("algorithms") || !doc.at("algorithms").is_array()) {
      throw ConfigError("missing \"algorithms\" array");
    }
    for (const json& entry : doc.at("algorithms")) c.algorithms.push_back(parse_algorithm(entry));

    c.validate();
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  } catch (const InvalidInput& e) {
    throw ConfigError(e.what());
  }
}

BenchConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const BenchConfig& c) {
  json algos = json::array();
  for (const AlgorithmSpec& a : c.algorithms) {
    json entry{{"name", a.name()}};
    if (a.is_gesp) {
      entry["strategy"] = std::string(to_string(a.strategy.kind));
      if (a.strategy.kind == StrategyKind::fixed) entry["p"] = a.strategy.p_value;
      if (a.strategy.kind == StrategyKind::known_structure) {
        entry["variant"] = std::string(to_string(a.strategy.variant));
      }
    } else if (a.baseline == BaselineKind::truncated_power) {
      entry["iters"] = a.tpm_iters;
    }
    algos.push_back(entry);
  }
  json doc{{"schema_version", BenchConfig::kSchemaVersion},
           {"n", c.n},
           {"k", c.k},
           {"ratios", c.ratios},
           {"trials", c.trials},
           {"base_seed", c.base_seed},
           {"threads", c.threads},
           {"out_path", c.out_path.string()},
           {"timing", c.timing},
           {"signal",
            {{"model", std::string(to_string(c.signal.model))},
             {"decay", c.signal.decay},
             {"target_norm", c.signal.target_norm}}},
           {"algorithms", algos}};
  if (c.summary_path) doc["summary_path"] = c.summary_path->string();
  if (c.plot_path) doc["plot_path"] = c.plot_path->string();
  return doc;
}

std::vector<ResolvedRatio> resolve_ratios(const BenchConfig& config) {
  std::vector<double> sorted = config.ratios;
  std::stable_sort(sorted.begin(), sorted.end());
  std::vector<ResolvedRatio> out;
  std::set<std::size_t> seen;
  for (double r : sorted) {
    const auto m = static_cast<std::size_t>(std::llround(r * static_cast<double>(config.n)));
    if (m < 1 || !seen.insert(m).second) continue;
    out.push_back({r, m});
  }
  return out;
}

// ---------------------------------------------------------------------------
// execution

TrialInstance make_trial(const BenchConfig& config, std::size_t ratio_index,
                         std::size_t trial_index) {
  const std::vector<ResolvedRatio> ratios = resolve_ratios(config);
  if (ratio_index >= ratios.size()) throw InvalidInput("make_trial: ratio index out of range");
  const std::uint64_t seed = derive_seed(config.base_seed, ratio_index, trial_index);
  Rng rng(seed);
  SignalModelSpec spec = config.signal;
  spec.n = config.n;
  spec.k = config.k;
  SparseSignal signal = generate(spec, rng);
  auto sensing =
      std::make_shared<const CMatrix>(sample_sensing(config.n, ratios[ratio_index].m, rng));
  MeasurementSet meas = measure(signal, std::move(sensing));
  return TrialInstance{seed, std::move(signal), std::move(meas)};
}

InitEstimate run_algorithm(const AlgorithmSpec& algo, const MeasurementSet& meas, std::size_t k,
                           const SparseSignal& truth) {
  if (algo.is_gesp) return gesp(meas, k, algo.strategy, &truth.profile);
  switch (algo.baseline) {
    case BaselineKind::esp:
      return esp_init(meas, k);
    case BaselineKind::diag_two_step:
      return diag_two_step_init(meas, k);
    case BaselineKind::truncated_power:
      return truncated_power_init(meas, k, algo.tpm_iters);
  }
  throw InvalidInput("run_algorithm: unknown baseline");
}

TrialRecord evaluate(const BenchConfig& config, const AlgorithmSpec& algo,
                     const TrialInstance& trial, const ResolvedRatio& ratio,
                     std::size_t trial_index) {
  TrialRecord rec;
  rec.signal_model = std::string(to_string(config.signal.model));
  rec.algorithm = algo.name();
  rec.strategy = algo.strategy_label();
  rec.n = config.n;
  rec.k = config.k;
  rec.m = ratio.m;
  rec.ratio = ratio.ratio;
  rec.trial_index = trial_index;
  rec.seed = trial.seed;

  const auto start = std::chrono::steady_clock::now();
  try {
    const InitEstimate est = run_algorithm(algo, trial.measurements, config.k, trial.signal);
    const auto stop = std::chrono::steady_clock::now();
    rec.p_used = est.p_used;
    rec.relative_error = relative_error(est.z, trial.signal.vector);
    rec.raw_error = raw_relative_error(est.z, trial.signal.vector);
    rec.support_fraction = static_cast<double>(overlap(est.support, trial.signal.support)) /
                           static_cast<double>(config.k);
    if (config.timing) {
      rec.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    }
  } catch (const Error& e) {
    rec.error_flag = true;
    rec.error_message = e.what();
    rec.relative_error = rec.raw_error = rec.support_fraction =
        std::numeric_limits<double>::quiet_NaN();
  }
  return rec;
}

std::vector<TrialRecord> run_sweep(const BenchConfig& config) {
  config.validate();
  const std::vector<ResolvedRatio> ratios = resolve_ratios(config);
  const std::size_t n_algos = config.algorithms.size();
  const std::size_t cells = ratios.size() * config.trials;
  std::vector<TrialRecord> records(cells * n_algos);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t cell = next++; cell < cells; cell = next++) {
      const std::size_t ri = cell / config.trials;
      const std::size_t ti = cell % config.trials;
      TrialRecord* slot = &records[cell * n_algos];
      try {
        const TrialInstance trial = make_trial(config, ri, ti);
        for (std::size_t a = 0; a < n_algos; ++a) {
          slot[a] = evaluate(config, config.algorithms[a], trial, ratios[ri], ti);
        }
      } catch (const Error& e) {
        for (std::size_t a = 0; a < n_algos; ++a) {
          TrialRecord& rec = slot[a];
          rec = TrialRecord{};
          rec.signal_model = std::string(to_string(config.signal.model));
          rec.algorithm = config.algorithms[a].name();
          rec.strategy = config.algorithms[a].strategy_label();
          rec.n = config.n;
          rec.k = config.k;
          rec.m = ratios[ri].m;
          rec.ratio = ratios[ri].ratio;
          rec.trial_index = ti;
          rec.seed = derive_seed(config.base_seed, ri, ti);
          rec.error_flag = true;
          rec.error_message = e.what();
          rec.relative_error = rec.raw_error = rec.support_fraction =
              std::numeric_limits<double>::quiet_NaN();
        }
      }
    }
  };

  const std::size_t n_threads = std::min(config.threads, std::max<std::size_t>(cells, 1));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  }
  return records;
}

// ---------------------------------------------------------------------------
// aggregation

SummaryStats summarize(std::vector<double> values) {
  SummaryStats s;
  if (values.empty()) {
    s.mean = s.median = s.sd = std::numeric_limits<double>::quiet_NaN();
    return s;
  }
  const double count = static_cast<double>(values.size());
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / count;
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.sd = std::sqrt(ss / (count - 1.0));
  }
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  s.median = values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
  return s;
}

std::vector<AggregateRow> aggregate(const std::vector<TrialRecord>& records) {
  struct Bucket {
    std::size_t m = 0;
    std::size_t errors = 0;
    std::vector<double> rel;
    std::vector<double> sup;
  };
  std::vector<std::pair<std::string, std::string>> label_order;
  std::map<std::pair<std::string, std::string>, std::map<double, Bucket>> buckets;
  for (const TrialRecord& r : records) {
    const auto label = std::make_pair(r.algorithm, r.strategy);
    if (!buckets.contains(label)) label_order.push_back(label);
    Bucket& b = buckets[label][r.ratio];
    b.m = r.m;
    if (r.error_flag) {
      ++b.errors;
      continue;
    }
    b.rel.push_back(r.relative_error);
    b.sup.push_back(r.support_fraction);
  }

  std::vector<AggregateRow> rows;
  for (const auto& label : label_order) {
    for (auto& [ratio, b] : buckets[label]) {
      AggregateRow row;
      row.algorithm = label.first;
      row.strategy = label.second;
      row.ratio = ratio;
      row.m = b.m;
      row.count = b.rel.size();
      row.errors = b.errors;
      row.relative_error = summarize(std::move(b.rel));
      row.support_fraction = summarize(std::move(b.sup));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// output

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish_write(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

void write_csv(const std::vector<TrialRecord>& records, std::ostream& out) {
  out << "signal_model,algorithm,strategy,n,k,m,ratio,trial_index,seed,p_used,relative_error,"
         "raw_error,support_fraction,runtime_ms,error_flag\n";
  for (const TrialRecord& r : records) {
    out << r.signal_model << ',' << r.algorithm << ',' << r.strategy << ',' << r.n << ',' << r.k
        << ',' << r.m << ',' << format_double(r.ratio) << ',' << r.trial_index << ',' << r.seed
        << ',' << r.p_used << ',' << format_double(r.relative_error) << ','
        << format_double(r.raw_error) << ',' << format_double(r.support_fraction) << ','
        << format_double(r.runtime_ms) << ',' << (r.error_flag ? 1 : 0) << '\n';
  }
}

void write_csv(const std::vector<TrialRecord>& records, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  write_csv(records, out);
  finish_write(out, path);
}

void write_summary_csv(const std::vector<AggregateRow>& rows, std::ostream& out) {
  out << "algorithm,strategy,ratio,m,count,errors,mean_rel_err,median_rel_err,sd_rel_err,"
         "mean_support_frac,median_support_frac,sd_support_frac\n";
  for (const AggregateRow& r : rows) {
    out << r.algorithm << ',' << r.strategy << ',' << format_double(r.ratio) << ',' << r.m << ','
        << r.count << ',' << r.errors << ',' << format_double(r.relative_error.mean) << ','
        << format_double(r.relative_error.median) << ',' << format_double(r.relative_error.sd)
        << ',' << format_double(r.support_fraction.mean) << ','
        << format_double(r.support_fraction.median) << ','
        << format_double(r.support_fraction.sd) << '\n';
  }
}

void write_summary_csv(const std::vector<AggregateRow>& rows, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  write_summary_csv(rows, out);
  finish_write(out, path);
}

void write_plot_data(const std::vector<AggregateRow>& rows, std::ostream& out) {
  std::string current;
  bool first = true;
  for (const AggregateRow& r : rows) {
    const std::string label = r.algorithm + " " + r.strategy;
    if (first || label != current) {
      if (!first) out << "\n\n";
      out << "# " << label << '\n';
      current = label;
      first = false;
    }
    out << format_double(r.ratio) << ' ' << format_double(r.relative_error.mean) << ' '
        << format_double(r.relative_error.sd) << ' ' << format_double(r.support_fraction.mean)
        << '\n';
  }
}

void write_plot_data(const std::vector<AggregateRow>& rows, const std::filesystem::path& path) {
  std::ofstream out = open_for_write(path);
  write_plot_data(rows, out);
  finish_write(out, path);
}

}  // namespace gesp
