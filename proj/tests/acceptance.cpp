// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gesp/baselines.hpp"
#include "gesp/bench.hpp"
#include "gesp/gesp_init.hpp"
#include "gesp/spectrum.hpp"
#include "oracles/dense_oracle.hpp"

using namespace gesp;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kBaseSeed = 20240601;

struct Verdict {
  bool pass;
  std::string detail;
};

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

SparseSignal make_signal(SignalModel model, std::size_t n, std::size_t k, Rng& rng,
                         double decay = 0.7) {
  SignalModelSpec spec;
  spec.model = model;
  spec.n = n;
  spec.k = k;
  spec.decay = decay;
  return generate(spec, rng);
}

MeasurementSet make_meas(const SparseSignal& x, std::size_t m, Rng& rng) {
  return measure(x, std::make_shared<const CMatrix>(sample_sensing(x.vector.size(), m, rng)));
}

std::vector<oracle::CVec> rows_of(const MeasurementSet& meas) {
  std::vector<oracle::CVec> rows;
  for (std::size_t i = 0; i < meas.m(); ++i) {
    const auto r = meas.sensing().row(i);
    rows.emplace_back(r.begin(), r.end());
  }
  return rows;
}

// 1 -------------------------------------------------------------------------

Verdict expectation_oracle_scaling() {
  const std::size_t n = 16, k = 4;
  std::vector<double> ratio_tilde, err_tilde_large, ratio_lambda, err_lambda_large;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(derive_seed(kBaseSeed, 1, seed));
    const SparseSignal x = make_signal(SignalModel::gaussian, n, k, rng);
    const CMatrix expected = expectation_oracle(x.vector);
    double tilde[2], lambda[2];
    const std::size_t ms[2] = {50000, 200000};
    for (int i = 0; i < 2; ++i) {
      const MeasurementSet meas = make_meas(x, ms[i], rng);
      const auto frob = [&](const SpectrumOperator& op) {
        const CMatrix z = op.submatrix(IndexSet::range(n));
        double e = 0.0;
        for (std::size_t u = 0; u < n; ++u) {
          for (std::size_t v = 0; v < n; ++v) e += std::norm(z(u, v) - expected(u, v));
        }
        return std::sqrt(e);
      };
      tilde[i] = frob(SpectrumOperator::build_with_energy(meas, norm_sq(x.vector)));
      lambda[i] = frob(SpectrumOperator::build(meas, Weighting::exponential));
    }
    ratio_tilde.push_back(tilde[0] / tilde[1]);
    err_tilde_large.push_back(tilde[1]);
    ratio_lambda.push_back(lambda[0] / lambda[1]);
    err_lambda_large.push_back(lambda[1]);
  }
  const double r = median(ratio_tilde);
  const double e = median(err_tilde_large);
  const bool pass = r >= 1.4 && r <= 2.9 && e <= 0.02;
  return {pass, "Z~ median ratio " + fmt(r) + ", median err at 200k " + fmt(e) +
                    " (lambda-normalized Z: ratio " + fmt(median(ratio_lambda)) + ", err " +
                    fmt(median(err_lambda_large)) + ")"};
}

// 2 -------------------------------------------------------------------------

Verdict structure_function_exactness() {
  Rng rng(derive_seed(kBaseSeed, 2, 0));
  const SparseSignal e1 = make_signal(SignalModel::example1, 256, 64, rng);
  const SparseSignal e2 = make_signal(SignalModel::example2, 128, 16, rng);
  const auto s1 = [&](std::size_t p) { return structure_function(e1.profile, p); };
  const auto s2 = [&](std::size_t p) { return structure_function(e2.profile, p); };
  double worst1 = 0.0;
  worst1 = std::max(worst1, std::abs(s1(1) - 8.0));
  worst1 = std::max(worst1, std::abs(s1(8) - 2.0));
  worst1 = std::max(worst1, std::abs(s1(64) - 1.0));
  double worst2 = 0.0;
  worst2 = std::max(worst2, std::abs(s2(1) - 8.0));
  worst2 = std::max(worst2, std::abs(s2(2) - 4.0));
  worst2 = std::max(worst2, std::abs(s2(4) - std::cbrt(16.0)));
  const std::size_t p = p_opt(e2.profile, 16, ObjectiveVariant::theorem1);
  const double obj = p_objective(e2.profile, 16, p, ObjectiveVariant::theorem1);
  const bool pass = worst1 <= 1e-12 && worst2 <= 1e-10 && p == 2 && std::abs(obj - 64.0) <= 1e-10;
  return {pass, "example1 max dev " + fmt(worst1, 3) + ", example2 max dev " + fmt(worst2, 3) +
                    ", p_opt " + std::to_string(p) + " objective " + fmt(obj, 12)};
}

// 3 -------------------------------------------------------------------------

Verdict structure_function_bounds() {
  Rng rng(derive_seed(kBaseSeed, 3, 0));
  std::size_t violations = 0, checks = 0;
  const double tol = 1e-12;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 16 + rng.below(241);
    const std::size_t k = 1 + rng.below(n / 4);
    const SignalModel model = std::array{SignalModel::gaussian, SignalModel::binary,
                                         SignalModel::exp_decay}[rng.below(3)];
    const SparseSignal x = make_signal(model, n, k, rng, 0.05 + 0.9 * rng.uniform01());
    double prev_s = 0.0, prev_ps = 0.0;
    for (std::size_t p = 1; p <= k; ++p) {
      const double s = structure_function(x.profile, p);
      const double pd = static_cast<double>(p), kd = static_cast<double>(k);
      bool ok = s >= 1.0 - tol && s <= kd / pd * (1.0 + tol) && pd * s >= pd * (1.0 - tol) &&
                pd * s <= kd * (1.0 + tol);
      if (p > 1) ok = ok && s <= prev_s * (1.0 + tol) && pd * s >= prev_ps * (1.0 - tol);
      violations += ok ? 0 : 1;
      ++checks;
      prev_s = s;
      prev_ps = pd * s;
    }
  }
  return {violations == 0,
          std::to_string(violations) + " violations over " + std::to_string(checks) + " (signal, p) checks"};
}

// 4 and 5 -------------------------------------------------------------------

struct SmallInstance {
  SparseSignal x;
  MeasurementSet meas;
  std::size_t k;
  std::size_t p;
};

SmallInstance small_instance(std::uint64_t trial) {
  Rng rng(derive_seed(kBaseSeed, 4, trial));
  const std::size_t n = 2 + rng.below(7);
  const std::size_t k = 1 + rng.below(n);
  const std::size_t m = 2 + rng.below(63);
  const std::size_t p = 1 + rng.below(k);
  SparseSignal x = make_signal(SignalModel::gaussian, n, k, rng);
  MeasurementSet meas = make_meas(x, m, rng);
  return {std::move(x), std::move(meas), k, p};
}

Verdict dense_oracle_equivalence() {
  std::size_t mismatched_sets = 0;
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const SmallInstance inst = small_instance(t);
    const std::size_t n = inst.meas.n();
    const auto op = SpectrumOperator::build(inst.meas, Weighting::exponential);
    const auto rows = rows_of(inst.meas);
    const std::vector<double> y(inst.meas.y().begin(), inst.meas.y().end());
    const auto dense = oracle::dense_spectrum(rows, oracle::exp_weights(y));

    const auto diag = op.diagonal();
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(diag[j] - dense[j][j].real()));

    const CMatrix sub = op.submatrix(IndexSet::range(n));
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) worst = std::max(worst, std::abs(sub(u, v) - dense[u][v]));
    }

    Rng rng(t);
    ComplexVec v(n);
    for (auto& c : v) c = Complex{rng.normal(), rng.normal()};
    const auto got = op.matvec(v);
    const auto want = oracle::multiply(dense, v);
    for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(got[j] - want[j]));

    const InitEstimate est = gesp_fixed_p(op, inst.k, inst.p);
    const auto ref = oracle::dense_gesp(rows, y, inst.k, inst.p);
    if (est.s0.values() != ref.s0 || est.support.values() != ref.s1) ++mismatched_sets;
    worst = std::max(worst, oracle::aligned_diff(est.diagnostics.e0, ref.e0));
    worst = std::max(worst, oracle::aligned_diff(est.z, ref.z) / std::max(1.0, oracle::aligned_diff(ref.z, oracle::CVec(n))));
  }
  return {mismatched_sets == 0 && worst <= 1e-8,
          std::to_string(mismatched_sets) + " index-set mismatches, max deviation " + fmt(worst, 3) +
              " over 200 instances"};
}

Verdict esp_equivalence() {
  std::size_t support_mismatch = 0;
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    Rng rng(derive_seed(kBaseSeed, 5, t));
    const std::size_t n = 16 + rng.below(113);
    const std::size_t k = 1 + rng.below(std::min<std::size_t>(n, 16));
    const std::size_t m = 20 + rng.below(400);
    const SparseSignal x = make_signal(SignalModel::gaussian, n, k, rng);
    const MeasurementSet meas = make_meas(x, m, rng);
    const InitEstimate a = gesp::gesp(meas, k, PStrategy::fixed(1));
    const InitEstimate b = esp_init(meas, k);
    if (a.support != b.support) ++support_mismatch;
    worst = std::max(worst, dist(a.z, b.z));
  }

  std::size_t column_mismatch = 0;
  for (std::uint64_t t = 0; t < 200; ++t) {
    const SmallInstance inst = small_instance(t);
    const std::size_t n = inst.meas.n();
    const auto op = SpectrumOperator::build(inst.meas, Weighting::exponential);
    const std::vector<double> y(inst.meas.y().begin(), inst.meas.y().end());
    const auto dense = oracle::dense_spectrum(rows_of(inst.meas), oracle::exp_weights(y));
    std::vector<double> d(n);
    for (std::size_t j = 0; j < n; ++j) d[j] = dense[j][j].real();
    const std::size_t jmax = oracle::sorted_top_k(d, 1).front();
    std::vector<double> col(n);
    for (std::size_t u = 0; u < n; ++u) col[u] = std::abs(dense[u][jmax]);
    const auto e0 = step2_direction(op, step1_select_s0(op.diagonal(), 1));
    if (step3_select_s1(op, e0, inst.k).values() != oracle::sorted_top_k(col, inst.k)) {
      ++column_mismatch;
    }
  }
  return {support_mismatch == 0 && worst <= 1e-8 && column_mismatch == 0,
          std::to_string(support_mismatch) + "/100 S1 mismatches, max dist " + fmt(worst, 3) +
              ", " + std::to_string(column_mismatch) + "/200 column top-k mismatches"};
}

// 6 -------------------------------------------------------------------------

Verdict proposition_suite() {
  const std::size_t n = 128, k = 8, trials = 200;
  std::size_t a = 0, b = 0, c = 0, d = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    {
      Rng rng(derive_seed(kBaseSeed, 61, t));
      const SparseSignal x = make_signal(SignalModel::gaussian, n, k, rng);
      const MeasurementSet meas = make_meas(x, 2000, rng);
      const auto op = SpectrumOperator::build(meas, Weighting::exponential);
      const std::size_t p = p_opt(x.profile, k, ObjectiveVariant::theorem1);
      const IndexSet s0 = step1_select_s0(op.diagonal(), p);
      double s0_energy = 0.0;
      for (auto j : s0) s0_energy += std::norm(x.vector[j]);
      const double energy = norm_sq(x.vector);
      a += s0_energy >= energy / (2.0 * structure_function(x.profile, p));
      const ComplexVec e0 = step2_direction(op, s0);
      b += std::abs(inner(x.vector, e0)) >= 0.5 * std::sqrt(s0_energy);
    }
    {
      Rng rng(derive_seed(kBaseSeed, 63, t));
      const SparseSignal x = make_signal(SignalModel::binary, n, k, rng);
      const MeasurementSet meas = make_meas(x, 3000, rng);
      const InitEstimate est = gesp::gesp(meas, k, PStrategy::full_k());
      c += overlap(est.support, x.support) == k;
    }
    {
      Rng rng(derive_seed(kBaseSeed, 64, t));
      const SparseSignal x = make_signal(SignalModel::gaussian, n, k, rng);
      const MeasurementSet meas = make_meas(x, 3000, rng);
      const InitEstimate est = gesp::gesp(
          meas, k, PStrategy::known_structure(ObjectiveVariant::theorem1), &x.profile);
      d += dist(est.z, x.vector) <= 0.9 * norm(x.vector);
    }
  }
  const auto pct = [&](std::size_t v) { return 100.0 * static_cast<double>(v) / trials; };
  const bool pass = pct(a) >= 95.0 && pct(b) >= 90.0 && pct(c) >= 90.0 && pct(d) >= 90.0;
  return {pass, "(a) " + fmt(pct(a), 4) + "% (b) " + fmt(pct(b), 4) + "% (c) " + fmt(pct(c), 4) +
                    "% (d) " + fmt(pct(d), 4) + "%"};
}

// 7 -------------------------------------------------------------------------

using MeanTable = std::map<std::string, std::map<double, double>>;  // label -> ratio -> mean

MeanTable sweep_means(const char* config_name) {
  BenchConfig config = load_config(fs::path(GESP_CONFIG_DIR) / config_name);
  MeanTable table;
  for (const AggregateRow& row : aggregate(run_sweep(config))) {
    const std::string label =
        row.strategy == "none" ? row.algorithm : row.algorithm + " " + row.strategy;
    table[label][row.ratio] = row.relative_error.mean;
  }
  return table;
}

Verdict figure_trends() {
  std::vector<std::string> failures;
  std::ostringstream summary;

  const MeanTable g = sweep_means("desk_gaussian.json");
  for (const auto& [ratio, ks] : g.at("gesp known_structure:theorem1")) {
    if (ratio < 0.3 - 1e-9) continue;
    const double esp = g.at("esp").at(ratio);
    const double two = g.at("diag_two_step").at(ratio);
    if (!(ks <= esp && esp <= two + 0.02)) {
      failures.push_back("a@" + fmt(ratio, 2) + " ks " + fmt(ks) + " esp " + fmt(esp) + " two " + fmt(two));
    }
  }

  const MeanTable bin = sweep_means("desk_binary.json");
  for (const auto& [ratio, full] : bin.at("gesp full_k")) {
    if (ratio < 0.3 - 1e-9) continue;
    for (const char* base : {"esp", "diag_two_step", "truncated_power"}) {
      const double other = bin.at(base).at(ratio);
      if (!(full <= other)) {
        failures.push_back("b@" + fmt(ratio, 2) + " full_k " + fmt(full) + " > " + base + " " + fmt(other));
      }
    }
  }

  const MeanTable dec = sweep_means("desk_exp_decay.json");
  double worst_gap = 0.0;
  for (const auto& [ratio, sq] : dec.at("gesp sqrt_k")) {
    if (ratio < 0.5 - 1e-9) continue;
    const double gap = std::abs(sq - dec.at("esp").at(ratio));
    worst_gap = std::max(worst_gap, gap);
    if (gap > 0.1) failures.push_back("c@" + fmt(ratio, 2) + " gap " + fmt(gap));
  }

  summary << "exp-decay max gap " << fmt(worst_gap, 3);
  for (const auto& f : failures) summary << "; " << f;
  return {failures.empty(), summary.str()};
}

// 8 -------------------------------------------------------------------------

Verdict determinism() {
  BenchConfig config = load_config(fs::path(GESP_TEST_DATA_DIR) / "golden.json");
  const auto csv = [&] {
    std::ostringstream out;
    write_csv(run_sweep(config), out);
    return out.str();
  };
  config.threads = 1;
  const std::string first = csv();
  const std::string second = csv();
  config.threads = 4;
  const std::string threaded = csv();
  const bool pass = first == second && first == threaded;
  return {pass, "runs identical: " + std::string(first == second ? "yes" : "no") +
                    ", threads 1 vs 4 identical: " + (first == threaded ? "yes" : "no") + ", " +
                    std::to_string(first.size()) + " bytes"};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    std::function<Verdict()> check;
    double time_limit_s;
  };
  const double none = std::numeric_limits<double>::infinity();
  const std::vector<Criterion> criteria{
      {"1 expectation oracle 1/sqrt(m) scaling", expectation_oracle_scaling, 60.0},
      {"2 structure function exactness", structure_function_exactness, none},
      {"3 structure function bounds", structure_function_bounds, none},
      {"4 dense oracle equivalence", dense_oracle_equivalence, none},
      {"5 ESP equivalence", esp_equivalence, none},
      {"6 proposition suite", proposition_suite, none},
      {"7 figure trends", figure_trends, 15.0 * 60.0},
      {"8 determinism", determinism, none},
  };
  int failed = 0;
  for (const auto& [name, check, limit] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > limit) {
      v.pass = false;
      v.detail += "; over the " + fmt(limit, 4) + " s limit";
    }
    std::printf("%s criterion %s: %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", name.c_str(),
                v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += v.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
