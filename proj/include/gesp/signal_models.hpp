#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "gesp/numerics.hpp"
#include "gesp/rng.hpp"
#include "gesp/types.hpp"

namespace gesp {

enum class SignalModel { gaussian, binary, exp_decay, example1, example2 };

std::string_view to_string(SignalModel model);
SignalModel parse_signal_model(std::string_view name);

struct SignalModelSpec {
  SignalModel model = SignalModel::gaussian;
  std::size_t n = 0;
  std::size_t k = 0;
  double decay = 0.7;  // exp_decay: ratio between consecutive squared magnitudes
  double target_norm = 1.0;

  /// Throws InvalidInput on k > n, bad decay/norm, or a k the example models cannot take.
  void validate() const;
};

/// k-sparse ground truth: the vector, its support, and its magnitude profile.
struct SparseSignal {
  ComplexVec vector;
  IndexSet support;
  MagnitudeProfile profile;
};

/// k distinct indices, uniform over all size-k subsets of [0, n).
IndexSet sample_support(std::size_t n, std::size_t k, Rng& rng);

/// Fractions of ||x||^2 carried by each of the k nonzeros, in descending order,
/// for the two adversarial constructions. k must be a perfect sixth power
/// (example1) or fourth power (example2).
std::vector<double> example1_energy_fractions(std::size_t k);
std::vector<double> example2_energy_fractions(std::size_t k);

SparseSignal generate(const SignalModelSpec& spec, Rng& rng);

/// Integer r with r^degree == value, if one exists; 0 otherwise.
std::size_t exact_root(std::size_t value, unsigned degree);

}  // namespace gesp
