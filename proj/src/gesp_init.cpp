#include "gesp/gesp_init.hpp"

#include <cmath>
#include <string>

#include "gesp/errors.hpp"

namespace gesp {

std::string_view to_string(StrategyKind kind) {
  switch (kind) {
    case StrategyKind::fixed:
      return "fixed";
    case StrategyKind::known_structure:
      return "known_structure";
    case StrategyKind::sqrt_k:
      return "sqrt_k";
    case StrategyKind::full_k:
      return "full_k";
    case StrategyKind::ensemble:
      return "ensemble";
  }
  return "unknown";
}

StrategyKind parse_strategy_kind(std::string_view name) {
  for (StrategyKind k : {StrategyKind::fixed, StrategyKind::known_structure, StrategyKind::sqrt_k,
                         StrategyKind::full_k, StrategyKind::ensemble}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidInput("unknown p strategy '" + std::string(name) + "'");
}

std::string PStrategy::label() const {
  switch (kind) {
    case StrategyKind::fixed:
      return "fixed:" + std::to_string(p_value);
    case StrategyKind::known_structure:
      return "known_structure:" + std::string(to_string(variant));
    default:
      return std::string(to_string(kind));
  }
}

namespace {

ComplexVec embed(const IndexSet& support, const ComplexVec& local, std::size_t n) {
  ComplexVec out(n, Complex{0.0, 0.0});
  for (std::size_t u = 0; u < support.size(); ++u) out[support[u]] = local[u];
  return out;
}

struct Embedded {
  ComplexVec vector;
  std::size_t iterations;
};

Embedded restricted_top_eigvec(const SpectrumOperator& op, const IndexSet& support,
                               const EigOptions& eig) {
  const EigResult r = max_eigvec(op.submatrix(support), eig);
  return {embed(support, r.eigenvector, op.n()), r.iterations};
}

void scale_to(ComplexVec& v, double lambda_sq) {
  const double s = std::sqrt(lambda_sq);
  for (Complex& c : v) c *= s;
}

}  // namespace

IndexSet step1_select_s0(std::span<const double> diag, std::size_t p) {
  if (p < 1 || p > diag.size()) {
    throw InvalidInput("step1: p = " + std::to_string(p) + " outside [1, " +
                       std::to_string(diag.size()) + "]");
  }
  return top_k_indices(diag, p);
}

ComplexVec step2_direction(const SpectrumOperator& op, const IndexSet& s0, const EigOptions& eig) {
  if (s0.empty()) throw InvalidInput("step2: empty S0");
  return restricted_top_eigvec(op, s0, eig).vector;
}

IndexSet step3_select_s1(const SpectrumOperator& op, std::span<const Complex> e0, std::size_t k) {
  const ComplexVec f = op.matvec(e0);
  std::vector<double> moduli(f.size());
  for (std::size_t j = 0; j < f.size(); ++j) moduli[j] = std::abs(f[j]);
  return top_k_indices(moduli, k);
}

ComplexVec step4_estimate(const SpectrumOperator& op, const IndexSet& s1, double lambda_sq,
                          const EigOptions& eig) {
  if (s1.empty()) throw InvalidInput("step4: empty S1");
  ComplexVec z = restricted_top_eigvec(op, s1, eig).vector;
  scale_to(z, lambda_sq);
  return z;
}

InitEstimate gesp_fixed_p(const SpectrumOperator& op, std::size_t k, std::size_t p,
                          const EigOptions& eig) {
  if (k < 1 || k > op.n()) {
    throw InvalidInput("gesp: need 1 <= k <= n (k = " + std::to_string(k) + ")");
  }
  if (p < 1 || p > k) {
    throw InvalidInput("gesp: p = " + std::to_string(p) + " outside [1, k = " +
                       std::to_string(k) + "]");
  }
  const MeasurementSet& meas = op.measurements();

  InitEstimate est;
  est.p_used = p;
  est.s0 = step1_select_s0(op.diagonal(), p);

  Embedded e0 = restricted_top_eigvec(op, est.s0, eig);
  est.support = step3_select_s1(op, e0.vector, k);

  Embedded z = restricted_top_eigvec(op, est.support, eig);
  scale_to(z.vector, meas.lambda_sq());
  est.z = std::move(z.vector);

  est.diagnostics.eigen_iterations = e0.iterations + z.iterations;
  est.diagnostics.e0 = std::move(e0.vector);
  est.diagnostics.residual_score = residual_score(meas, est.z);
  return est;
}

std::size_t resolve_p(const PStrategy& strategy, std::size_t k,
                      const MagnitudeProfile* true_profile) {
  switch (strategy.kind) {
    case StrategyKind::fixed:
      if (strategy.p_value < 1 || strategy.p_value > k) {
        throw InvalidInput("fixed strategy: p = " + std::to_string(strategy.p_value) +
                           " outside [1, k = " + std::to_string(k) + "]");
      }
      return strategy.p_value;
    case StrategyKind::known_structure:
      if (true_profile == nullptr) {
        throw InvalidInput("known_structure strategy needs the true magnitude profile");
      }
      return p_opt(*true_profile, k, strategy.variant);
    case StrategyKind::sqrt_k:
      return ceil_sqrt(k);
    case StrategyKind::full_k:
      return k;
    case StrategyKind::ensemble:
      break;
  }
  throw InvalidInput("ensemble strategy has no single p");
}

InitEstimate gesp(const MeasurementSet& meas, std::size_t k, const PStrategy& strategy,
                  const MagnitudeProfile* true_profile, const EigOptions& eig) {
  const SpectrumOperator op = SpectrumOperator::build(meas, Weighting::exponential);
  if (strategy.kind != StrategyKind::ensemble) {
    return gesp_fixed_p(op, k, resolve_p(strategy, k, true_profile), eig);
  }

  // Every p in [k]; keep the most measurement-consistent estimate, smallest p on ties.
  InitEstimate best = gesp_fixed_p(op, k, 1, eig);
  std::size_t total_iterations = best.diagnostics.eigen_iterations;
  for (std::size_t p = 2; p <= k; ++p) {
    InitEstimate candidate = gesp_fixed_p(op, k, p, eig);
    total_iterations += candidate.diagnostics.eigen_iterations;
    if (candidate.diagnostics.residual_score < best.diagnostics.residual_score) {
      best = std::move(candidate);
    }
  }
  best.diagnostics.eigen_iterations = total_iterations;
  return best;
}

double residual_score(const MeasurementSet& meas, std::span<const Complex> z) {
  if (z.size() != meas.n()) {
    throw DimensionError("residual_score: estimate length " + std::to_string(z.size()) +
                         " does not match n = " + std::to_string(meas.n()));
  }
  const CMatrix& a = meas.sensing();
  double acc = 0.0;
  for (std::size_t i = 0; i < meas.m(); ++i) {
    const double diff = meas.y()[i] - std::abs(inner(a.row(i), z));
    acc += diff * diff;
  }
  return acc / static_cast<double>(meas.m());
}

}  // namespace gesp
