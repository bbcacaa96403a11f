#include "gesp/measurement.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include "gesp/errors.hpp"
#include "gesp/numerics.hpp"

namespace gesp {

MeasurementSet::MeasurementSet(std::shared_ptr<const CMatrix> sensing, std::vector<double> y)
    : sensing_(std::move(sensing)), y_(std::move(y)) {
  if (!sensing_ || sensing_->rows() == 0 || sensing_->cols() == 0) {
    throw InvalidInput("MeasurementSet: sensing array must be non-empty");
  }
  if (y_.size() != sensing_->rows()) {
    throw DimensionError("MeasurementSet: " + std::to_string(y_.size()) +
                         " observations for " + std::to_string(sensing_->rows()) + " rows");
  }
  double acc = 0.0;
  for (double v : y_) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInput("MeasurementSet: observations must be finite and non-negative");
    }
    acc += v * v;
  }
  lambda_sq_ = acc / static_cast<double>(y_.size());
}

CMatrix sample_sensing(std::size_t n, std::size_t m, Rng& rng) {
  if (n == 0 || m == 0) throw InvalidInput("sample_sensing: n and m must be positive");
  CMatrix a(m, n);
  const double scale = std::sqrt(0.5);
  for (Complex& c : a.data()) {
    const double re = scale * rng.normal();
    const double im = scale * rng.normal();
    c = Complex{re, im};
  }
  return a;
}

MeasurementSet measure(std::span<const Complex> x, std::shared_ptr<const CMatrix> sensing) {
  if (!sensing) throw InvalidInput("measure: null sensing array");
  if (sensing->cols() != x.size()) {
    throw DimensionError("measure: sensing has " + std::to_string(sensing->cols()) +
                         " columns, signal has length " + std::to_string(x.size()));
  }
  std::vector<double> y(sensing->rows());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::abs(inner(sensing->row(i), x));
  return MeasurementSet(std::move(sensing), std::move(y));
}

MeasurementSet measure(const SparseSignal& x, std::shared_ptr<const CMatrix> sensing) {
  return measure(std::span<const Complex>(x.vector), std::move(sensing));
}

namespace {

constexpr std::array<char, 5> kMagic{'S', 'P', 'R', 'M', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> bytes{};
  for (std::size_t b = 0; b < 8; ++b) bytes[b] = static_cast<char>((v >> (8 * b)) & 0xffu);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw IoError("read_measurements: truncated input");
  std::uint64_t v = 0;
  for (std::size_t b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

}  // namespace

void write_measurements(const MeasurementSet& meas, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_u64(out, meas.n());
  put_u64(out, meas.m());
  for (const Complex& c : meas.sensing().data()) {
    put_f64(out, c.real());
    put_f64(out, c.imag());
  }
  for (double v : meas.y()) put_f64(out, v);
  if (!out) throw IoError("write_measurements: stream failure");
}

MeasurementSet read_measurements(std::istream& in) {
  std::array<char, 5> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw IoError("read_measurements: bad magic");
  const std::uint64_t n = get_u64(in);
  const std::uint64_t m = get_u64(in);
  if (n == 0 || m == 0) throw IoError("read_measurements: empty dimensions");
  auto sensing = std::make_shared<CMatrix>(m, n);
  for (Complex& c : sensing->data()) {
    const double re = get_f64(in);
    const double im = get_f64(in);
    c = Complex{re, im};
  }
  std::vector<double> y(m);
  for (double& v : y) v = get_f64(in);
  return MeasurementSet(std::move(sensing), std::move(y));
}

void save_measurements(const MeasurementSet& meas, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_measurements(meas, out);
}

MeasurementSet load_measurements(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_measurements(in);
}

std::uint64_t sensing_fingerprint(const CMatrix& sensing) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const Complex& c : sensing.data()) {
    for (double part : {c.real(), c.imag()}) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(part);
      for (int b = 0; b < 8; ++b) {
        h ^= bits & 0xffu;
        h *= 0x100000001b3ULL;
        bits >>= 8;
      }
    }
  }
  return h;
}

}  // namespace gesp
