#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>

#include "gesp/eigensolver.hpp"
#include "gesp/measurement.hpp"
#include "gesp/numerics.hpp"
#include "gesp/spectrum.hpp"
#include "gesp/types.hpp"

namespace gesp {

enum class StrategyKind { fixed, known_structure, sqrt_k, full_k, ensemble };

std::string_view to_string(StrategyKind kind);
StrategyKind parse_strategy_kind(std::string_view name);

/// How the size p of the first index set is chosen.
struct PStrategy {
  StrategyKind kind = StrategyKind::full_k;
  std::size_t p_value = 0;                               // fixed only
  ObjectiveVariant variant = ObjectiveVariant::theorem1;  // known_structure only

  static PStrategy fixed(std::size_t p) { return {StrategyKind::fixed, p, {}}; }
  static PStrategy known_structure(ObjectiveVariant v) {
    return {StrategyKind::known_structure, 0, v};
  }
  static PStrategy sqrt_k() { return {StrategyKind::sqrt_k, 0, {}}; }
  static PStrategy full_k() { return {StrategyKind::full_k, 0, {}}; }
  static PStrategy ensemble() { return {StrategyKind::ensemble, 0, {}}; }

  /// "fixed:3", "known_structure:theorem1", "sqrt_k", "full_k", "ensemble".
  std::string label() const;
};

struct InitDiagnostics {
  std::size_t eigen_iterations = 0;  // summed over every eigen solve
  double residual_score = 0.0;
  ComplexVec e0;  // step 2 direction (empty for initializers without one)
};

struct InitEstimate {
  ComplexVec z;
  IndexSet support;  // S1, |S1| = k
  std::size_t p_used = 0;
  IndexSet s0;  // |S0| = p_used
  InitDiagnostics diagnostics;
};

/// Step 1: indices of the p largest diagonal entries.
IndexSet step1_select_s0(std::span<const double> diag, std::size_t p);

/// Step 2: unit top eigenvector of Z restricted to S0, embedded in n dimensions.
ComplexVec step2_direction(const SpectrumOperator& op, const IndexSet& s0,
                           const EigOptions& eig = {});

/// Step 3: indices of the k largest |(Z e0)_j|.
IndexSet step3_select_s1(const SpectrumOperator& op, std::span<const Complex> e0, std::size_t k);

/// Step 4: top eigenvector of Z restricted to S1, embedded and scaled to norm sqrt(lambda_sq).
ComplexVec step4_estimate(const SpectrumOperator& op, const IndexSet& s1, double lambda_sq,
                          const EigOptions& eig = {});

/// Runs steps 1-4 with a given p on a prebuilt exponential spectrum.
InitEstimate gesp_fixed_p(const SpectrumOperator& op, std::size_t k, std::size_t p,
                          const EigOptions& eig = {});

/// p for a strategy. known_structure needs the true magnitude profile;
/// ensemble has no single p and is rejected here.
std::size_t resolve_p(const PStrategy& strategy, std::size_t k,
                      const MagnitudeProfile* true_profile = nullptr);

/// Full initializer. `true_profile` is an oracle input, consulted only by
/// the known_structure strategy.
InitEstimate gesp(const MeasurementSet& meas, std::size_t k, const PStrategy& strategy,
                  const MagnitudeProfile* true_profile = nullptr, const EigOptions& eig = {});

/// (1/m) sum_i (y_i - |a_i* z|)^2
double residual_score(const MeasurementSet& meas, std::span<const Complex> z);

}  // namespace gesp
