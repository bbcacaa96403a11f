#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "gesp/types.hpp"

namespace gesp {

double norm_sq(std::span<const Complex> v);
double norm(std::span<const Complex> v);

/// u* v (conjugate-linear in the first argument).
Complex inner(std::span<const Complex> u, std::span<const Complex> v);

/// Throws InvalidInput if any real or imaginary part is NaN or infinite.
void require_finite(std::span<const Complex> v, std::string_view what);

/// Distance modulo a global phase: min over phi of ||u - e^{j phi} v||,
/// evaluated in closed form as sqrt(max(0, |u|^2 + |v|^2 - 2|u* v|)).
double dist(std::span<const Complex> u, std::span<const Complex> v);

/// dist(z, x) / ||x||.
double relative_error(std::span<const Complex> z, std::span<const Complex> x);

/// ||z - x|| / ||x|| with no phase alignment.
double raw_relative_error(std::span<const Complex> z, std::span<const Complex> x);

/// Squared magnitudes of a signal in descending order, with prefix sums
/// so that the energy of the top-p entries is O(1).
class MagnitudeProfile {
 public:
  MagnitudeProfile() = default;

  /// Any order, non-negative, finite, not all zero.
  static MagnitudeProfile from_squared_magnitudes(std::vector<double> sq_mags);

  const std::vector<double>& sorted_sq_mags() const { return sorted_; }

  /// Sum of the sorted squared magnitudes (accumulated in descending order, so
  /// top_energy(p) == total_energy() bit-for-bit once p covers the support).
  double total_energy() const { return prefix_.empty() ? 0.0 : prefix_.back(); }

  /// Energy of the p largest entries, 1 <= p <= size().
  double top_energy(std::size_t p) const { return prefix_[p - 1]; }

  std::size_t size() const { return sorted_.size(); }

  /// Number of nonzero entries.
  std::size_t support_size() const;

 private:
  std::vector<double> sorted_;
  std::vector<double> prefix_;
};

MagnitudeProfile magnitude_profile(std::span<const Complex> x);

/// s(p) = ||x||^2 / (energy of the p largest entries), 1 <= p <= n.
double structure_function(const MagnitudeProfile& profile, std::size_t p);

/// Indices of the k largest values, ties to the smaller index, returned ascending.
IndexSet top_k_indices(std::span<const double> values, std::size_t k);

enum class ObjectiveVariant { theorem1, corollary3 };

std::string_view to_string(ObjectiveVariant variant);
ObjectiveVariant parse_objective_variant(std::string_view name);

/// ceil(sqrt(k)) in exact integer arithmetic.
std::size_t ceil_sqrt(std::size_t k);

/// Largest admissible p for the variant: k (theorem1) or ceil(sqrt(k)) (corollary3).
std::size_t max_p(ObjectiveVariant variant, std::size_t k);

/// theorem1:   max{p^2 s(p)^2, k s(p)}
/// corollary3: max{p^2 s(p)^2, sqrt(k) s(p)^2, k s(p)}
double p_objective(const MagnitudeProfile& profile, std::size_t k, std::size_t p,
                   ObjectiveVariant variant);

/// Exhaustive argmin of p_objective over [1, max_p], smallest p on ties.
std::size_t p_opt(const MagnitudeProfile& profile, std::size_t k, ObjectiveVariant variant);

}  // namespace gesp
