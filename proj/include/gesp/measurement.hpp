#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "gesp/rng.hpp"
#include "gesp/signal_models.hpp"
#include "gesp/types.hpp"

namespace gesp {

/// Sensing rows a_i plus phaseless observations y_i = |a_i* x|.
/// Immutable; copies share the sensing array.
class MeasurementSet {
 public:
  /// Validates shapes and non-negativity of y; lambda_sq = (1/m) sum y_i^2.
  MeasurementSet(std::shared_ptr<const CMatrix> sensing, std::vector<double> y);

  std::size_t n() const { return sensing_->cols(); }
  std::size_t m() const { return sensing_->rows(); }
  const CMatrix& sensing() const { return *sensing_; }
  std::span<const double> y() const { return y_; }
  double lambda_sq() const { return lambda_sq_; }

 private:
  std::shared_ptr<const CMatrix> sensing_;
  std::vector<double> y_;
  double lambda_sq_ = 0.0;
};

/// m x n array with i.i.d. entries whose real and imaginary parts are N(0, 1/2).
CMatrix sample_sensing(std::size_t n, std::size_t m, Rng& rng);

MeasurementSet measure(std::span<const Complex> x, std::shared_ptr<const CMatrix> sensing);
MeasurementSet measure(const SparseSignal& x, std::shared_ptr<const CMatrix> sensing);

/// Binary dump: "SPRM1", n and m as u64 little-endian, row-major sensing as
/// (re, im) f64 pairs, then y as f64, all little-endian.
void write_measurements(const MeasurementSet& meas, std::ostream& out);
MeasurementSet read_measurements(std::istream& in);
void save_measurements(const MeasurementSet& meas, const std::filesystem::path& path);
MeasurementSet load_measurements(const std::filesystem::path& path);

/// FNV-1a over the raw bytes of the sensing array, for paired-trial checks.
std::uint64_t sensing_fingerprint(const CMatrix& sensing);

}  // namespace gesp
