#include "gesp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gesp/errors.hpp"

namespace gesp {

namespace {

void require_same_length(std::span<const Complex> u, std::span<const Complex> v, const char* op) {
  if (u.size() != v.size()) {
    throw DimensionError(std::string(op) + ": length mismatch (" + std::to_string(u.size()) +
                         " vs " + std::to_string(v.size()) + ")");
  }
}

}  // namespace

double norm_sq(std::span<const Complex> v) {
  double acc = 0.0;
  for (const Complex& c : v) acc += std::norm(c);
  return acc;
}

double norm(std::span<const Complex> v) { return std::sqrt(norm_sq(v)); }

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_length(u, v, "inner");
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < u.size(); ++i) acc += std::conj(u[i]) * v[i];
  return acc;
}

void require_finite(std::span<const Complex> v, std::string_view what) {
  for (const Complex& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw InvalidInput(std::string(what) + ": non-finite entry");
    }
  }
}

double dist(std::span<const Complex> u, std::span<const Complex> v) {
  require_same_length(u, v, "dist");
  const double radicand = norm_sq(u) + norm_sq(v) - 2.0 * std::abs(inner(u, v));
  return std::sqrt(std::max(0.0, radicand));
}

double relative_error(std::span<const Complex> z, std::span<const Complex> x) {
  require_same_length(z, x, "relative_error");
  const double nx = norm(x);
  if (nx == 0.0) throw InvalidInput("relative_error: ground truth has zero norm");
  return dist(z, x) / nx;
}

double raw_relative_error(std::span<const Complex> z, std::span<const Complex> x) {
  require_same_length(z, x, "raw_relative_error");
  const double nx = norm(x);
  if (nx == 0.0) throw InvalidInput("raw_relative_error: ground truth has zero norm");
  double acc = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) acc += std::norm(z[i] - x[i]);
  return std::sqrt(acc) / nx;
}

MagnitudeProfile MagnitudeProfile::from_squared_magnitudes(std::vector<double> sq_mags) {
  if (sq_mags.empty()) throw InvalidInput("magnitude profile: empty signal");
  for (double v : sq_mags) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidInput("magnitude profile: squared magnitudes must be finite and non-negative");
    }
  }
  std::sort(sq_mags.begin(), sq_mags.end(), std::greater<>());
  if (sq_mags.front() == 0.0) throw InvalidInput("magnitude profile: zero vector");

  MagnitudeProfile profile;
  profile.prefix_.resize(sq_mags.size());
  std::partial_sum(sq_mags.begin(), sq_mags.end(), profile.prefix_.begin());
  profile.sorted_ = std::move(sq_mags);
  return profile;
}

std::size_t MagnitudeProfile::support_size() const {
  // sorted descending, so the nonzeros form a prefix
  return static_cast<std::size_t>(
      std::find(sorted_.begin(), sorted_.end(), 0.0) - sorted_.begin());
}

MagnitudeProfile magnitude_profile(std::span<const Complex> x) {
  require_finite(x, "magnitude_profile");
  std::vector<double> sq(x.size());
  std::transform(x.begin(), x.end(), sq.begin(), [](const Complex& c) { return std::norm(c); });
  return MagnitudeProfile::from_squared_magnitudes(std::move(sq));
}

double structure_function(const MagnitudeProfile& profile, std::size_t p) {
  if (p < 1 || p > profile.size()) {
    throw InvalidInput("structure_function: p = " + std::to_string(p) + " outside [1, " +
                       std::to_string(profile.size()) + "]");
  }
  return profile.total_energy() / profile.top_energy(p);
}

IndexSet top_k_indices(std::span<const double> values, std::size_t k) {
  if (k > values.size()) {
    throw InvalidInput("top_k_indices: k = " + std::to_string(k) + " exceeds length " +
                       std::to_string(values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw InvalidInput("top_k_indices: non-finite value");
  }
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (values[a] != values[b]) return values[a] > values[b];
                      return a < b;
                    });
  order.resize(k);
  return IndexSet::from_unsorted(std::move(order));
}

std::string_view to_string(ObjectiveVariant variant) {
  switch (variant) {
    case ObjectiveVariant::theorem1:
      return "theorem1";
    case ObjectiveVariant::corollary3:
      return "corollary3";
  }
  return "unknown";
}

ObjectiveVariant parse_objective_variant(std::string_view name) {
  if (name == "theorem1") return ObjectiveVariant::theorem1;
  if (name == "corollary3") return ObjectiveVariant::corollary3;
  throw InvalidInput("unknown objective variant '" + std::string(name) + "'");
}

std::size_t ceil_sqrt(std::size_t k) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(k)));
  while (r * r > k) --r;
  while ((r + 1) * (r + 1) <= k) ++r;
  return r * r == k ? r : r + 1;
}

std::size_t max_p(ObjectiveVariant variant, std::size_t k) {
  return variant == ObjectiveVariant::theorem1 ? k : ceil_sqrt(k);
}

double p_objective(const MagnitudeProfile& profile, std::size_t k, std::size_t p,
                   ObjectiveVariant variant) {
  if (k < 1) throw InvalidInput("p_objective: k must be positive");
  const std::size_t upper = max_p(variant, k);
  if (p < 1 || p > upper) {
    throw InvalidInput("p_objective: p = " + std::to_string(p) + " outside [1, " +
                       std::to_string(upper) + "] for variant " + std::string(to_string(variant)));
  }
  const double s = structure_function(profile, p);
  const double pd = static_cast<double>(p);
  const double kd = static_cast<double>(k);
  double objective = std::max(pd * pd * s * s, kd * s);
  if (variant == ObjectiveVariant::corollary3) {
    objective = std::max(objective, std::sqrt(kd) * s * s);
  }
  return objective;
}

std::size_t p_opt(const MagnitudeProfile& profile, std::size_t k, ObjectiveVariant variant) {
  // Objectives within this relative margin count as tied; keeps flat profiles
  // (where every p is mathematically tied) from picking p by rounding noise.
  constexpr double kTieMargin = 1e-12;
  const std::size_t upper = max_p(variant, k);
  std::size_t best_p = 1;
  double best = p_objective(profile, k, 1, variant);
  for (std::size_t p = 2; p <= upper; ++p) {
    const double value = p_objective(profile, k, p, variant);
    if (value < best * (1.0 - kTieMargin)) {
      best = value;
      best_p = p;
    }
  }
  return best_p;
}

}  // namespace gesp
