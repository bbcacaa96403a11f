#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace gesp {

using Complex = std::complex<double>;
using ComplexVec = std::vector<Complex>;

/// Strictly increasing set of indices into a length-n vector.
class IndexSet {
 public:
  IndexSet() = default;

  /// Takes indices that are already strictly increasing; throws InvalidInput otherwise.
  explicit IndexSet(std::vector<std::size_t> sorted_indices);

  /// Sorts, then rejects duplicates.
  static IndexSet from_unsorted(std::vector<std::size_t> indices);

  /// {0, 1, ..., n-1}
  static IndexSet range(std::size_t n);

  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  std::size_t operator[](std::size_t i) const { return indices_[i]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  const std::vector<std::size_t>& values() const { return indices_; }

  bool contains(std::size_t index) const;

  /// Largest index + 1, or 0 when empty.
  std::size_t bound() const { return indices_.empty() ? 0 : indices_.back() + 1; }

  friend bool operator==(const IndexSet&, const IndexSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

/// |a ∩ b|
std::size_t overlap(const IndexSet& a, const IndexSet& b);

/// Dense row-major complex matrix. Used for the sensing ensemble (m x n)
/// and for small Hermitian blocks of the spectrum.
class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Complex> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Complex> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<const Complex> data() const { return data_; }
  std::span<Complex> data() { return data_; }

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

}  // namespace gesp
