#include "gesp/spectrum.hpp"

#include <cmath>
#include <string>

#include "gesp/errors.hpp"
#include "gesp/numerics.hpp"

namespace gesp {

std::string_view to_string(Weighting kind) {
  return kind == Weighting::exponential ? "exponential" : "quadratic";
}

namespace {

std::vector<double> exponential_weights(std::span<const double> y, double energy) {
  std::vector<double> w(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) w[i] = 0.5 - std::exp(-(y[i] * y[i]) / energy);
  return w;
}

}  // namespace

SpectrumOperator SpectrumOperator::build(const MeasurementSet& meas, Weighting kind) {
  if (kind == Weighting::quadratic) {
    std::vector<double> w(meas.m());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = meas.y()[i] * meas.y()[i];
    return SpectrumOperator(meas, std::move(w), kind);
  }
  if (meas.lambda_sq() == 0.0) {
    throw DegenerateInput("spectrum: all measurements are zero (lambda^2 = 0)");
  }
  return SpectrumOperator(meas, exponential_weights(meas.y(), meas.lambda_sq()), kind);
}

SpectrumOperator SpectrumOperator::build_with_energy(const MeasurementSet& meas, double energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    throw DegenerateInput("spectrum: normalizing energy must be positive");
  }
  return SpectrumOperator(meas, exponential_weights(meas.y(), energy), Weighting::exponential);
}

std::vector<double> SpectrumOperator::diagonal() const {
  const CMatrix& a = meas_.sensing();
  std::vector<double> diag(n(), 0.0);
  for (std::size_t i = 0; i < m(); ++i) {
    const double w = weights_[i];
    const auto row = a.row(i);
    for (std::size_t j = 0; j < diag.size(); ++j) diag[j] += w * std::norm(row[j]);
  }
  const double inv_m = 1.0 / static_cast<double>(m());
  for (double& d : diag) d *= inv_m;
  return diag;
}

CMatrix SpectrumOperator::submatrix(const IndexSet& support) const {
  if (support.empty()) throw InvalidInput("submatrix: empty index set");
  if (support.bound() > n()) throw DimensionError("submatrix: index out of range");
  const std::size_t d = support.size();
  const CMatrix& a = meas_.sensing();

  CMatrix out(d, d);
  ComplexVec gathered(d);
  for (std::size_t i = 0; i < m(); ++i) {
    const auto row = a.row(i);
    for (std::size_t u = 0; u < d; ++u) gathered[u] = row[support[u]];
    const double w = weights_[i];
    for (std::size_t u = 0; u < d; ++u) {
      const Complex wu = w * gathered[u];
      for (std::size_t v = u; v < d; ++v) out(u, v) += wu * std::conj(gathered[v]);
    }
  }
  const double inv_m = 1.0 / static_cast<double>(m());
  for (std::size_t u = 0; u < d; ++u) {
    out(u, u) = Complex{out(u, u).real() * inv_m, 0.0};
    for (std::size_t v = u + 1; v < d; ++v) {
      out(u, v) *= inv_m;
      out(v, u) = std::conj(out(u, v));
    }
  }
  return out;
}

ComplexVec SpectrumOperator::matvec(std::span<const Complex> v) const {
  if (v.size() != n()) {
    throw DimensionError("matvec: vector length " + std::to_string(v.size()) +
                         " does not match n = " + std::to_string(n()));
  }
  std::vector<std::size_t> nz;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != Complex{0.0, 0.0}) nz.push_back(j);
  }
  ComplexVec out(n(), Complex{0.0, 0.0});
  if (nz.empty()) return out;

  const CMatrix& a = meas_.sensing();
  for (std::size_t i = 0; i < m(); ++i) {
    const auto row = a.row(i);
    Complex proj{0.0, 0.0};
    for (std::size_t j : nz) proj += std::conj(row[j]) * v[j];
    const Complex coeff = weights_[i] * proj;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += coeff * row[j];
  }
  const double inv_m = 1.0 / static_cast<double>(m());
  for (Complex& c : out) c *= inv_m;
  return out;
}

CMatrix expectation_oracle(std::span<const Complex> x) {
  const double energy = norm_sq(x);
  if (energy == 0.0) throw InvalidInput("expectation_oracle: zero signal");
  const std::size_t n = x.size();
  const double scale = 1.0 / (4.0 * energy);
  CMatrix out(n, n);
  for (std::size_t u = 0; u < n; ++u) {
    out(u, u) = Complex{std::norm(x[u]) * scale, 0.0};
    for (std::size_t v = u + 1; v < n; ++v) {
      out(u, v) = scale * x[u] * std::conj(x[v]);
      out(v, u) = std::conj(out(u, v));
    }
  }
  return out;
}

}  // namespace gesp
