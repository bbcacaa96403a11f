#include "gesp/baselines.hpp"

#include <cmath>
#include <string>

#include "gesp/errors.hpp"
#include "gesp/numerics.hpp"
#include "gesp/spectrum.hpp"

namespace gesp {

std::string_view to_string(BaselineKind kind) {
  switch (kind) {
    case BaselineKind::esp:
      return "esp";
    case BaselineKind::diag_two_step:
      return "diag_two_step";
    case BaselineKind::truncated_power:
      return "truncated_power";
  }
  return "unknown";
}

BaselineKind parse_baseline_kind(std::string_view name) {
  for (BaselineKind k :
       {BaselineKind::esp, BaselineKind::diag_two_step, BaselineKind::truncated_power}) {
    if (to_string(k) == name) return k;
  }
  throw InvalidInput("unknown baseline '" + std::string(name) + "'");
}

InitEstimate esp_init(const MeasurementSet& meas, std::size_t k, const EigOptions& eig) {
  return gesp(meas, k, PStrategy::fixed(1), nullptr, eig);
}

namespace {

void check_k(const MeasurementSet& meas, std::size_t k) {
  if (k < 1 || k > meas.n()) {
    throw InvalidInput("baseline: need 1 <= k <= n (k = " + std::to_string(k) + ")");
  }
}

/// Unit direction and support of the quadratic-spectrum two-step method.
struct TwoStep {
  IndexSet support;
  ComplexVec direction;
  std::size_t iterations;
};

TwoStep two_step(const MeasurementSet& meas, std::size_t k, const EigOptions& eig) {
  const SpectrumOperator quad = SpectrumOperator::build(meas, Weighting::quadratic);
  TwoStep out;
  out.support = top_k_indices(quad.diagonal(), k);
  const EigResult r = max_eigvec(quad.submatrix(out.support), eig);
  out.direction.assign(meas.n(), Complex{0.0, 0.0});
  for (std::size_t u = 0; u < out.support.size(); ++u) {
    out.direction[out.support[u]] = r.eigenvector[u];
  }
  out.iterations = r.iterations;
  return out;
}

IndexSet top_k_by_modulus(const ComplexVec& v, std::size_t k) {
  std::vector<double> moduli(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) moduli[j] = std::abs(v[j]);
  return top_k_indices(moduli, k);
}

InitEstimate finish(const MeasurementSet& meas, ComplexVec unit, IndexSet support, IndexSet s0,
                    std::size_t p_used, std::size_t iterations) {
  const double scale = std::sqrt(meas.lambda_sq());
  for (Complex& c : unit) c *= scale;
  InitEstimate est;
  est.z = std::move(unit);
  est.support = std::move(support);
  est.s0 = std::move(s0);
  est.p_used = p_used;
  est.diagnostics.eigen_iterations = iterations;
  est.diagnostics.residual_score = residual_score(meas, est.z);
  return est;
}

}  // namespace

InitEstimate diag_two_step_init(const MeasurementSet& meas, std::size_t k,
                                const EigOptions& eig) {
  check_k(meas, k);
  TwoStep ts = two_step(meas, k, eig);
  IndexSet s0 = ts.support;
  return finish(meas, std::move(ts.direction), std::move(ts.support), std::move(s0), k,
                ts.iterations);
}

InitEstimate truncated_power_init(const MeasurementSet& meas, std::size_t k, std::size_t iters,
                                  const EigOptions& eig) {
  check_k(meas, k);
  constexpr double kStopChange = 1e-8;
  TwoStep ts = two_step(meas, k, eig);
  const SpectrumOperator op = SpectrumOperator::build(meas, Weighting::exponential);

  ComplexVec v = ts.direction;
  IndexSet support = ts.support;
  for (std::size_t round = 0; round < iters; ++round) {
    const ComplexVec f = op.matvec(v);
    const IndexSet keep = top_k_by_modulus(f, k);
    ComplexVec next(v.size(), Complex{0.0, 0.0});
    for (std::size_t j : keep) next[j] = f[j];
    const double nn = norm(next);
    if (nn == 0.0) break;
    for (Complex& c : next) c /= nn;

    const double change = dist(next, v);
    v = std::move(next);
    support = keep;
    if (change < kStopChange) break;
  }
  return finish(meas, std::move(v), std::move(support), std::move(ts.support), k, ts.iterations);
}

}  // namespace gesp
