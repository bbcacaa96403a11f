#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gesp/measurement.hpp"
#include "gesp/types.hpp"

namespace gesp {

enum class Weighting {
  exponential,  // w_i = 1/2 - exp(-y_i^2 / lambda^2)
  quadratic,    // w_i = y_i^2
};

std::string_view to_string(Weighting kind);

/// Matrix-free handle on Z = (1/m) sum_i w_i a_i a_i*.
///
/// Z is never formed. The initializers only need its diagonal, small principal
/// submatrices and products with (typically sparse) vectors, each of which is
/// computed directly from the sensing rows. All reductions run over the rows in
/// index order on the calling thread, so results are bit-reproducible.
class SpectrumOperator {
 public:
  static SpectrumOperator build(const MeasurementSet& meas, Weighting kind);

  /// Exponential weights normalized by a caller-supplied energy instead of
  /// lambda^2. Passing ||x||^2 gives the analysis-side spectrum whose
  /// expectation is x x* / (4 ||x||^2); only meaningful when x is known.
  static SpectrumOperator build_with_energy(const MeasurementSet& meas, double energy);

  Weighting kind() const { return kind_; }
  const MeasurementSet& measurements() const { return meas_; }
  std::span<const double> weights() const { return weights_; }
  std::size_t n() const { return meas_.n(); }
  std::size_t m() const { return meas_.m(); }

  /// Z_jj = (1/m) sum_i w_i |a_ij|^2. O(mn).
  std::vector<double> diagonal() const;

  /// Z restricted to rows/columns in `support`, exactly Hermitian. O(m |S|^2).
  CMatrix submatrix(const IndexSet& support) const;

  /// Z v. Inner products a_i* v only touch the nonzeros of v. O(m (nnz(v) + n)).
  ComplexVec matvec(std::span<const Complex> v) const;

 private:
  SpectrumOperator(MeasurementSet meas, std::vector<double> weights, Weighting kind)
      : meas_(std::move(meas)), weights_(std::move(weights)), kind_(kind) {}

  MeasurementSet meas_;
  std::vector<double> weights_;
  Weighting kind_;
};

/// x x* / (4 ||x||^2), the expectation of the analysis-side exponential
/// spectrum. Dense n x n; intended for small n in tests and diagnostics.
CMatrix expectation_oracle(std::span<const Complex> x);

}  // namespace gesp
