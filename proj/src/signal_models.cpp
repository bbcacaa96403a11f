#include "gesp/signal_models.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "gesp/errors.hpp"

namespace gesp {

std::string_view to_string(SignalModel model) {
  switch (model) {
    case SignalModel::gaussian:
      return "gaussian";
    case SignalModel::binary:
      return "binary";
    case SignalModel::exp_decay:
      return "exp_decay";
    case SignalModel::example1:
      return "example1";
    case SignalModel::example2:
      return "example2";
  }
  return "unknown";
}

SignalModel parse_signal_model(std::string_view name) {
  for (SignalModel m : {SignalModel::gaussian, SignalModel::binary, SignalModel::exp_decay,
                        SignalModel::example1, SignalModel::example2}) {
    if (to_string(m) == name) return m;
  }
  throw InvalidInput("unknown signal model '" + std::string(name) + "'");
}

std::size_t exact_root(std::size_t value, unsigned degree) {
  auto power = [degree](std::size_t base) {
    std::size_t out = 1;
    for (unsigned i = 0; i < degree; ++i) out *= base;
    return out;
  };
  auto r = static_cast<std::size_t>(
      std::llround(std::pow(static_cast<double>(value), 1.0 / static_cast<double>(degree))));
  for (std::size_t cand = (r > 0 ? r - 1 : 0); cand <= r + 1; ++cand) {
    if (cand > 0 && power(cand) == value) return cand;
  }
  return 0;
}

void SignalModelSpec::validate() const {
  if (n < 1) throw InvalidInput("signal: n must be positive");
  if (k < 1 || k > n) {
    throw InvalidInput("signal: need 1 <= k <= n (k = " + std::to_string(k) +
                       ", n = " + std::to_string(n) + ")");
  }
  if (!(target_norm > 0.0) || !std::isfinite(target_norm)) {
    throw InvalidInput("signal: target_norm must be positive");
  }
  if (model == SignalModel::exp_decay && !(decay > 0.0 && decay < 1.0)) {
    throw InvalidInput("signal: exp_decay requires decay in (0, 1)");
  }
  if (model == SignalModel::example1 && exact_root(k, 6) == 0) {
    throw InvalidInput("signal: example1 requires k to be a perfect sixth power (got " +
                       std::to_string(k) + ")");
  }
  if (model == SignalModel::example2 && exact_root(k, 4) == 0) {
    throw InvalidInput("signal: example2 requires k to be a perfect fourth power (got " +
                       std::to_string(k) + ")");
  }
}

IndexSet sample_support(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) {
    throw InvalidInput("sample_support: k = " + std::to_string(k) + " exceeds n = " +
                       std::to_string(n));
  }
  // partial Fisher-Yates: the first k slots end up a uniform k-subset
  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.below(n - i);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return IndexSet::from_unsorted(std::move(pool));
}

std::vector<double> example1_energy_fractions(std::size_t k) {
  const std::size_t r2 = exact_root(k, 2);
  const std::size_t r6 = exact_root(k, 6);
  if (r2 == 0 || r6 == 0) throw InvalidInput("example1: k must be a perfect sixth power");
  const double kd = static_cast<double>(k);
  const double sk = static_cast<double>(r2);
  const double k6 = static_cast<double>(r6);

  std::vector<double> out(k);
  out[0] = 1.0 / sk;
  for (std::size_t i = 1; i < r2; ++i) out[i] = (1.0 / k6 - 1.0 / sk) / (sk - 1.0);
  for (std::size_t i = r2; i < k; ++i) out[i] = (1.0 - 1.0 / k6) / (kd - sk);
  return out;
}

std::vector<double> example2_energy_fractions(std::size_t k) {
  const std::size_t r2 = exact_root(k, 2);
  const std::size_t r4 = exact_root(k, 4);
  if (r2 == 0 || r4 == 0) throw InvalidInput("example2: k must be a perfect fourth power");
  const double kd = static_cast<double>(k);
  const double sk = static_cast<double>(r2);
  const double k4 = static_cast<double>(r4);
  const double k3 = std::cbrt(kd);

  std::vector<double> out(k);
  for (std::size_t i = 0; i < r4; ++i) out[i] = 1.0 / (k4 * k4 * k4);
  for (std::size_t i = r4; i < r2; ++i) out[i] = (1.0 / k3 - 1.0 / sk) / (sk - k4);
  for (std::size_t i = r2; i < k; ++i) out[i] = (1.0 - 1.0 / k3) / (kd - sk);
  return out;
}

namespace {

/// Places the given magnitudes (any order) on a random permutation of the
/// support, each with an independent uniform phase.
void place_with_random_phases(const std::vector<double>& magnitudes, const IndexSet& support,
                              Rng& rng, ComplexVec& x) {
  std::vector<std::size_t> slots(support.values());
  for (std::size_t i = slots.size(); i > 1; --i) {
    std::swap(slots[i - 1], slots[rng.below(i)]);
  }
  for (std::size_t i = 0; i < magnitudes.size(); ++i) {
    x[slots[i]] = std::polar(magnitudes[i], rng.phase());
  }
}

}  // namespace

SparseSignal generate(const SignalModelSpec& spec, Rng& rng) {
  spec.validate();
  SparseSignal signal;
  signal.support = sample_support(spec.n, spec.k, rng);
  signal.vector.assign(spec.n, Complex{0.0, 0.0});
  ComplexVec& x = signal.vector;

  switch (spec.model) {
    case SignalModel::gaussian: {
      const double scale = std::sqrt(0.5);
      for (std::size_t j : signal.support) {
        Complex c{0.0, 0.0};
        while (c == Complex{0.0, 0.0}) c = Complex{scale * rng.normal(), scale * rng.normal()};
        x[j] = c;
      }
      break;
    }
    case SignalModel::binary:
      for (std::size_t j : signal.support) x[j] = 1.0;
      break;
    case SignalModel::exp_decay: {
      std::vector<double> mags(spec.k);
      for (std::size_t i = 0; i < spec.k; ++i) {
        mags[i] = std::pow(spec.decay, 0.5 * static_cast<double>(i));
      }
      place_with_random_phases(mags, signal.support, rng, x);
      break;
    }
    case SignalModel::example1:
    case SignalModel::example2: {
      std::vector<double> mags = spec.model == SignalModel::example1
                                     ? example1_energy_fractions(spec.k)
                                     : example2_energy_fractions(spec.k);
      for (double& v : mags) v = std::sqrt(v);
      place_with_random_phases(mags, signal.support, rng, x);
      break;
    }
  }

  const double scale = spec.target_norm / norm(x);
  for (Complex& c : x) c *= scale;
  signal.profile = magnitude_profile(x);
  return signal;
}

}  // namespace gesp
